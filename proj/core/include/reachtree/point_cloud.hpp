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

#ifndef REACHTREE_POINT_CLOUD_HPP
#define REACHTREE_POINT_CLOUD_HPP

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace reachtree {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense row-major storage of `size()` points of dimension `dim()`.
// Tree levels hold millions of 2D/3D states, so points are not stored
// as individual heap vectors.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(int dim) : dim_(dim) { assert(dim > 0); }
    PointCloud(int dim, std::vector<double> coords)
        : dim_(dim), coords_(std::move(coords)) {
        assert(dim > 0 && coords_.size() % static_cast<std::size_t>(dim) == 0);
    }

    int dim() const { return dim_; }
    std::size_t size() const {
        return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_);
    }
    bool empty() const { return coords_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    std::span<double> operator[](std::size_t i) {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    Vec point(std::size_t i) const {
        return Eigen::Map<const Vec>(coords_.data() + i * static_cast<std::size_t>(dim_),
                                     dim_);
    }

    void push_back(std::span<const double> p) {
        assert(static_cast<int>(p.size()) == dim_);
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    void push_back(const Vec& p) {
        assert(p.size() == dim_);
        coords_.insert(coords_.end(), p.data(), p.data() + p.size());
    }
    void reserve(std::size_t n) { coords_.reserve(n * static_cast<std::size_t>(dim_)); }
    void resize(std::size_t n) { coords_.resize(n * static_cast<std::size_t>(dim_)); }
    void clear() { coords_.clear(); }

    const std::vector<double>& coords() const { return coords_; }
    std::vector<double>& coords() { return coords_; }

private:
    int dim_ = 0;
    std::vector<double> coords_;
};

// Axis-aligned bounding-box diagonal; used as the scale for relative tolerances.
double bbox_diagonal(const PointCloud& cloud);

// Indices (ascending) of the points kept after merging points closer than
// `tol` (Euclidean). Within a cluster the lowest index survives.
std::vector<std::size_t> unique_point_indices(const PointCloud& cloud, double tol);

}  // namespace reachtree

#endif  // REACHTREE_POINT_CLOUD_HPP
