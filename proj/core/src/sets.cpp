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

#include "reachtree/sets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "reachtree/errors.hpp"

namespace reachtree {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDefinitenessTol = 1e-12;
constexpr double kContainsSlack = 1e-12;
constexpr double kInputMembershipTol = 1e-9;
constexpr double kDuplicateTol = 1e-12;

void require_dim(const Ellipsoid& e, Eigen::Index n) {
    if (n != e.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: ellipsoid has dim " << e.dim() << ", point has dim " << n;
        throw InputError(os.str());
    }
}

}  // namespace

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
    const auto n = center_.size();
    if (n == 0) throw InputError("ellipsoid: empty center");
    if (shape_.rows() != n || shape_.cols() != n) {
        throw InputError("ellipsoid: shape matrix must be square with the center's dimension");
    }
    if (!center_.allFinite() || !shape_.allFinite()) {
        throw InputError("ellipsoid: non-finite entries");
    }
    const double scale = shape_.cwiseAbs().maxCoeff();
    if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw InputError("ellipsoid: shape matrix is not symmetric");
    }
    // symmetrize away round-off before decomposing
    shape_ = 0.5 * (shape_ + shape_.transpose());

    Eigen::SelfAdjointEigenSolver<Mat> eig(shape_);
    const Vec& lambda = eig.eigenvalues();
    if (!(lambda.minCoeff() > kDefinitenessTol * lambda.maxCoeff()) || lambda.maxCoeff() <= 0.0) {
        throw InputError("ellipsoid: shape matrix is not positive definite");
    }
    const Mat& v = eig.eigenvectors();
    shape_sqrt_ = v * lambda.cwiseSqrt().asDiagonal() * v.transpose();
    shape_inv_ = v * lambda.cwiseInverse().asDiagonal() * v.transpose();
}

Ellipsoid Ellipsoid::scaled_identity(Vec center, double scale) {
    const auto n = center.size();
    return Ellipsoid(std::move(center), scale * Mat::Identity(n, n));
}

double Ellipsoid::quadratic_form(const Eigen::Ref<const Vec>& x) const {
    require_dim(*this, x.size());
    const Vec d = x - center_;
    return d.dot(shape_inv_ * d);
}

double Ellipsoid::measure() const {
    const int n = dim();
    // unit-ball volume in 1, 2, 3 dimensions; general formula otherwise
    const double unit = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    return unit * std::sqrt(shape_.determinant());
}

bool ellipsoid_contains(const Ellipsoid& e, const Eigen::Ref<const Vec>& x) {
    return e.quadratic_form(x) <= 1.0 + kContainsSlack;
}

double ellipsoid_level_value(const Ellipsoid& e, const Eigen::Ref<const Vec>& x) {
    return e.quadratic_form(x) - 1.0;
}

std::vector<Vec> discretize_boundary(const Ellipsoid& e, int n) {
    const int dim = e.dim();
    if (dim > 3) {
        throw CapabilityError("discretize_boundary: only dimensions 1, 2 and 3 are supported");
    }
    if (dim == 1) n = 2;
    if (n < dim + 1) {
        throw InputError("discretize_boundary: need at least dim + 1 points");
    }

    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(n));
    const Mat& s = e.shape_sqrt();
    Vec w(dim);
    if (dim == 1) {
        w << -1.0;
        out.push_back(e.center() + s * w);
        w << 1.0;
        out.push_back(e.center() + s * w);
        return out;
    }
    if (dim == 2) {
        for (int k = 1; k <= n; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / n;
            w << std::sin(theta), std::cos(theta);
            out.push_back(e.center() + s * w);
        }
        return out;
    }
    // spherical Fibonacci lattice, offset by half a step in z
    const double golden_turn = std::numbers::pi * (1.0 + std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_turn * (i + 0.5);
        w << r * std::cos(phi), r * std::sin(phi), z;
        out.push_back(e.center() + s * w);
    }
    return out;
}

LevelSetFn LevelSetFn::ellipsoidal(const Ellipsoid& e) {
    std::ostringstream name;
    name << "ellipsoid(dim=" << e.dim() << ")";
    return LevelSetFn(Kind::ellipsoidal_quadratic, name.str(), e.dim(),
                      [e](const Eigen::Ref<const Vec>& x) { return ellipsoid_level_value(e, x); });
}

LevelSetFn LevelSetFn::custom(std::string name, int dim, Evaluator fn) {
    if (!fn) throw InputError("level-set function: empty evaluator");
    return LevelSetFn(Kind::custom, std::move(name), dim, std::move(fn));
}

InputGrid::InputGrid(std::vector<Vec> points, Provenance provenance)
    : points_(std::move(points)), provenance_(provenance) {
    if (points_.empty()) throw InputError("input grid: empty");
    const auto m = points_.front().size();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].size() != m) throw InputError("input grid: inconsistent input dimensions");
        for (std::size_t j = 0; j < i; ++j) {
            if ((points_[i] - points_[j]).norm() <= kDuplicateTol) {
                throw InputError("input grid: duplicate input points");
            }
        }
    }
}

InputGrid InputGrid::from_boundary(const Ellipsoid& set, int n) {
    const auto prov = set.dim() == 1 ? Provenance::interval_extremes : Provenance::ellipse_boundary;
    return InputGrid(discretize_boundary(set, n), prov);
}

InputGrid InputGrid::from_points(std::vector<Vec> points, const Ellipsoid* set) {
    if (set != nullptr) {
        for (const auto& p : points) {
            if (p.size() != set->dim()) throw InputError("input grid: point dimension differs from input set");
            if (set->quadratic_form(p) > 1.0 + kInputMembershipTol) {
                throw InputError("input grid: point outside the input set");
            }
        }
    }
    return InputGrid(std::move(points), Provenance::explicit_list);
}

const char* to_string(InputGrid::Provenance p) {
    switch (p) {
        case InputGrid::Provenance::ellipse_boundary: return "ellipse-boundary";
        case InputGrid::Provenance::interval_extremes: return "interval-extremes";
        case InputGrid::Provenance::explicit_list: return "explicit-list";
    }
    return "unknown";
}

}  // namespace reachtree
