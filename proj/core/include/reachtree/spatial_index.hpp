/*
 Copyright 2026 The reachtree Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef REACHTREE_SPATIAL_INDEX_HPP
#define REACHTREE_SPATIAL_INDEX_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "reachtree/point_cloud.hpp"

namespace reachtree {

// Static kd-tree over a point cloud (dim <= 3), with an optional value per
// point. Each node caches the minimum value below it so that "smallest value
// inside a region" queries can skip whole subtrees.
class KdTree {
public:
    static constexpr int kMaxDim = 3;

    KdTree(const PointCloud& points, std::span<const double> values = {});

    std::size_t size() const { return index_.size(); }

    // Calls fn(i) for every point i inside the closed box [lo, hi] (i is an
    // index into the original cloud).
    template <typename Fn>
    void for_each_in_box(std::span<const double> lo, std::span<const double> hi, Fn&& fn) const {
        if (nodes_.empty()) return;
        std::vector<std::uint32_t> stack{0};
        while (!stack.empty()) {
            const Node& nd = nodes_[stack.back()];
            stack.pop_back();
            if (!overlaps(nd, lo, hi)) continue;
            if (nd.left < 0) {
                for (std::uint32_t s = nd.begin; s < nd.end; ++s) {
                    if (inside(s, lo, hi)) fn(static_cast<std::size_t>(index_[s]));
                }
            } else {
                stack.push_back(static_cast<std::uint32_t>(nd.left));
                stack.push_back(static_cast<std::uint32_t>(nd.right));
            }
        }
    }

    // Smallest value below `below` among points inside [lo, hi] accepted by
    // pred(i), or nullopt when there is none. Requires values. Subtrees are visited in
    // order of their cached minimum, so the search stops as soon as no
    // remaining subtree can improve on the best value found.
    template <typename Pred>
    std::optional<double> min_value_in_box(std::span<const double> lo, std::span<const double> hi,
                                           Pred&& pred,
                                           double below = std::numeric_limits<double>::infinity()) const {
        if (nodes_.empty()) return std::nullopt;
        using Entry = std::pair<double, std::uint32_t>;
        auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
        open.emplace(nodes_[0].min_value, 0u);
        std::optional<double> best;
        auto limit = [&] { return best ? *best : below; };
        while (!open.empty()) {
            const auto [bound, id] = open.top();
            open.pop();
            if (bound >= limit()) break;
            const Node& nd = nodes_[id];
            if (!overlaps(nd, lo, hi)) continue;
            if (nd.left < 0) {
                for (std::uint32_t s = nd.begin; s < nd.end; ++s) {
                    const double v = values_[s];
                    if (v >= limit()) continue;
                    if (!inside(s, lo, hi) || !pred(static_cast<std::size_t>(index_[s]))) continue;
                    best = v;
                }
            } else {
                for (int child : {nd.left, nd.right}) {
                    const Node& c = nodes_[static_cast<std::size_t>(child)];
                    if (c.min_value < limit() && overlaps(c, lo, hi)) {
                        open.emplace(c.min_value, static_cast<std::uint32_t>(child));
                    }
                }
            }
        }
        return best;
    }

private:
    struct Node {
        std::array<double, kMaxDim> lo{};
        std::array<double, kMaxDim> hi{};
        double min_value = 0.0;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    bool overlaps(const Node& nd, std::span<const double> lo, std::span<const double> hi) const {
        for (int k = 0; k < dim_; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            if (nd.hi[kk] < lo[kk] || nd.lo[kk] > hi[kk]) return false;
        }
        return true;
    }

    bool inside(std::uint32_t slot, std::span<const double> lo, std::span<const double> hi) const {
        const double* p = coords_.data() + static_cast<std::size_t>(slot) * static_cast<std::size_t>(dim_);
        for (int k = 0; k < dim_; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            if (p[k] < lo[kk] || p[k] > hi[kk]) return false;
        }
        return true;
    }

    std::int32_t build(std::uint32_t begin, std::uint32_t end);

    int dim_ = 0;
    std::vector<std::uint32_t> index_;  // slot -> original index
    std::vector<double> coords_;        // permuted coordinates, slot-major
    std::vector<double> values_;        // permuted values (zeros when absent)
    std::vector<Node> nodes_;
};

}  // namespace reachtree

#endif  // REACHTREE_SPATIAL_INDEX_HPP
