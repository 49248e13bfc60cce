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

#include "reachtree/spatial_index.hpp"

#include <numeric>

#include "reachtree/errors.hpp"

namespace reachtree {

namespace {
constexpr std::uint32_t kLeafSize = 16;
}

KdTree::KdTree(const PointCloud& points, std::span<const double> values) : dim_(points.dim()) {
    if (dim_ < 1 || dim_ > kMaxDim) throw InputError("kd-tree: dimension must be 1, 2 or 3");
    if (!values.empty() && values.size() != points.size()) throw InputError("kd-tree: one value per point required");
    if (points.size() >= std::numeric_limits<std::uint32_t>::max()) throw InputError("kd-tree: too many points");
    const auto n = static_cast<std::uint32_t>(points.size());
    index_.resize(n);
    std::iota(index_.begin(), index_.end(), 0u);
    coords_ = points.coords();
    values_.assign(values.begin(), values.end());
    if (values_.empty()) values_.assign(n, 0.0);
    if (n == 0) return;
    nodes_.reserve(2 * (n / kLeafSize + 1));
    build(0, n);

    // apply the permutation chosen by build()
    std::vector<double> c(coords_.size());
    std::vector<double> v(values_.size());
    const auto d = static_cast<std::size_t>(dim_);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t o = index_[s];
        std::copy_n(points.coords().data() + o * d, d, c.data() + s * d);
        v[s] = values.empty() ? 0.0 : values[o];
    }
    coords_ = std::move(c);
    values_ = std::move(v);
    // fill bounds and minima bottom-up (children are created after parents)
    for (std::size_t id = nodes_.size(); id-- > 0;) {
        Node& nd = nodes_[id];
        if (nd.left < 0) {
            nd.lo.fill(std::numeric_limits<double>::infinity());
            nd.hi.fill(-std::numeric_limits<double>::infinity());
            nd.min_value = std::numeric_limits<double>::infinity();
            for (std::uint32_t s = nd.begin; s < nd.end; ++s) {
                for (std::size_t k = 0; k < d; ++k) {
                    nd.lo[k] = std::min(nd.lo[k], coords_[s * d + k]);
                    nd.hi[k] = std::max(nd.hi[k], coords_[s * d + k]);
                }
                nd.min_value = std::min(nd.min_value, values_[s]);
            }
        } else {
            const Node& l = nodes_[static_cast<std::size_t>(nd.left)];
            const Node& r = nodes_[static_cast<std::size_t>(nd.right)];
            for (std::size_t k = 0; k < d; ++k) {
                nd.lo[k] = std::min(l.lo[k], r.lo[k]);
                nd.hi[k] = std::max(l.hi[k], r.hi[k]);
            }
            nd.min_value = std::min(l.min_value, r.min_value);
        }
    }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_.back().begin = begin;
    nodes_.back().end = end;
    if (end - begin <= kLeafSize) return id;

    // split the widest axis at the median (coordinates still in original order)
    const auto d = static_cast<std::size_t>(dim_);
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t k = 0; k < d; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::uint32_t s = begin; s < end; ++s) {
            const double x = coords_[index_[s] * d + k];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = k;
        }
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double xa = coords_[a * d + axis], xb = coords_[b * d + axis];
                         return xa < xb || (xa == xb && a < b);
                     });
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
}

}  // namespace reachtree
