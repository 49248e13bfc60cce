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

#ifndef REACHTREE_SETS_HPP
#define REACHTREE_SETS_HPP

#include <functional>
#include <string>
#include <vector>

#include "reachtree/point_cloud.hpp"

namespace reachtree {

// E(q, Q) = { x : (x - q)^T Q^{-1} (x - q) <= 1 }.
//
// Q must be symmetric (relative tolerance 1e-12) and positive definite with
// smallest eigenvalue > 1e-12 * largest. The inverse and the symmetric square
// root are cached at construction.
class Ellipsoid {
public:
    Ellipsoid(Vec center, Mat shape);

    // Ball-shaped ellipsoid E(center, scale * I).
    static Ellipsoid scaled_identity(Vec center, double scale);

    int dim() const { return static_cast<int>(center_.size()); }
    const Vec& center() const { return center_; }
    const Mat& shape() const { return shape_; }
    const Mat& shape_inverse() const { return shape_inv_; }
    // Symmetric Q^{1/2}; maps the unit sphere onto the boundary (around q).
    const Mat& shape_sqrt() const { return shape_sqrt_; }

    // (x - q)^T Q^{-1} (x - q)
    double quadratic_form(const Eigen::Ref<const Vec>& x) const;

    // Volume (area in 2D, length in 1D).
    double measure() const;

private:
    Vec center_;
    Mat shape_;
    Mat shape_inv_;
    Mat shape_sqrt_;
};

bool ellipsoid_contains(const Ellipsoid& e, const Eigen::Ref<const Vec>& x);

// (x - q)^T Q^{-1} (x - q) - 1: zero on the boundary, negative inside.
double ellipsoid_level_value(const Ellipsoid& e, const Eigen::Ref<const Vec>& x);

// Boundary samples of an ellipsoid, mapped through Q^{1/2}:
//  1D: the two endpoints q - sqrt(Q), q + sqrt(Q) (n is clamped to 2);
//  2D: q + Q^{1/2} (sin(2 pi k / n), cos(2 pi k / n)), k = 1..n;
//  3D: spherical Fibonacci lattice of n points.
// Requires n >= dim + 1. Throws CapabilityError for dim > 3.
std::vector<Vec> discretize_boundary(const Ellipsoid& e, int n);

// Terminal/initial-set description g with X = { x : g(x) <= 0 }.
class LevelSetFn {
public:
    enum class Kind { ellipsoidal_quadratic, custom };
    using Evaluator = std::function<double(const Eigen::Ref<const Vec>&)>;

    static LevelSetFn ellipsoidal(const Ellipsoid& e);
    static LevelSetFn custom(std::string name, int dim, Evaluator fn);

    double operator()(const Eigen::Ref<const Vec>& x) const { return fn_(x); }
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int dim() const { return dim_; }

private:
    LevelSetFn(Kind kind, std::string name, int dim, Evaluator fn)
        : kind_(kind), name_(std::move(name)), dim_(dim), fn_(std::move(fn)) {}

    Kind kind_;
    std::string name_;
    int dim_;
    Evaluator fn_;
};

// Finite input set used by the tree expansion and the grid Hamiltonian.
class InputGrid {
public:
    enum class Provenance { ellipse_boundary, interval_extremes, explicit_list };

    // Boundary discretization of a continuous input set; 1D sets become
    // their two endpoints.
    static InputGrid from_boundary(const Ellipsoid& set, int n);
    // Explicit points; checked against `set` when one is given.
    static InputGrid from_points(std::vector<Vec> points, const Ellipsoid* set = nullptr);

    std::size_t size() const { return points_.size(); }
    int dim() const { return static_cast<int>(points_.front().size()); }
    const Vec& operator[](std::size_t j) const { return points_[j]; }
    const std::vector<Vec>& points() const { return points_; }
    Provenance provenance() const { return provenance_; }

private:
    InputGrid(std::vector<Vec> points, Provenance provenance);

    std::vector<Vec> points_;
    Provenance provenance_;
};

const char* to_string(InputGrid::Provenance p);

}  // namespace reachtree

#endif  // REACHTREE_SETS_HPP
