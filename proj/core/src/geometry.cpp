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

#include "reachtree/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Geometry>

#include "reachtree/errors.hpp"
#include "reachtree/parallel.hpp"

namespace reachtree {

namespace {

constexpr double kDedupRel = 1e-12;
constexpr double kDegenerateRel = 1e-12;

double cross2(std::span<const double> o, std::span<const double> a, std::span<const double> b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

double Hull::signed_distance(std::span<const double> x) const {
    double best = -std::numeric_limits<double>::infinity();
    const auto d = static_cast<std::size_t>(dim());
    for (const auto& f : facets_) {
        double s = -f.offset;
        for (std::size_t k = 0; k < d; ++k) s += f.normal[k] * x[k];
        best = std::max(best, s);
    }
    return best;
}

Hull convex_hull(const PointCloud& points) {
    const int dim = points.dim();
    if (dim < 1 || dim > 3) throw InputError("convex_hull: only dimensions 1, 2 and 3 are supported");

    const double diameter = bbox_diagonal(points);
    const auto kept = unique_point_indices(points, kDedupRel * diameter);
    if (kept.size() < static_cast<std::size_t>(dim + 1)) {
        throw DegenerateHullError("convex_hull: fewer than dim + 1 distinct points");
    }
    const double eps = kDegenerateRel * diameter;

    Hull h;
    h.scale_ = diameter;
    std::vector<std::size_t> verts;

    if (dim == 1) {
        auto [lo, hi] = std::minmax_element(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
            return points[a][0] < points[b][0];
        });
        if (points[*hi][0] - points[*lo][0] <= eps) throw DegenerateHullError("convex_hull: all points coincide");
        verts = {*lo, *hi};
        h.facets_.resize(2);
        h.facets_[0].vertex = {0, 0, 0};
        h.facets_[0].normal = {-1.0, 0.0, 0.0};
        h.facets_[0].offset = -points[*lo][0];
        h.facets_[1].vertex = {1, 0, 0};
        h.facets_[1].normal = {1.0, 0.0, 0.0};
        h.facets_[1].offset = points[*hi][0];
    } else if (dim == 2) {
        std::vector<std::size_t> order = kept;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto pa = points[a], pb = points[b];
            return pa[0] < pb[0] || (pa[0] == pb[0] && (pa[1] < pb[1] || (pa[1] == pb[1] && a < b)));
        });
        std::vector<std::size_t> chain(2 * order.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            while (k >= 2 && cross2(points[chain[k - 2]], points[chain[k - 1]], points[order[i]]) <= 0.0) --k;
            chain[k++] = order[i];
        }
        for (std::size_t i = order.size() - 1, lower = k + 1; i-- > 0;) {
            while (k >= lower && cross2(points[chain[k - 2]], points[chain[k - 1]], points[order[i]]) <= 0.0) --k;
            chain[k++] = order[i];
        }
        chain.resize(k - 1);  // last point repeats the first
        verts = std::move(chain);

        double twice_area = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const auto a = points[verts[i]], b = points[verts[(i + 1) % verts.size()]];
            twice_area += a[0] * b[1] - a[1] * b[0];
        }
        if (verts.size() < 3 || 0.5 * twice_area <= eps * diameter) {
            throw DegenerateHullError("convex_hull: points are collinear");
        }
        h.facets_.resize(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const std::size_t j = (i + 1) % verts.size();
            const auto a = points[verts[i]], b = points[verts[j]];
            const double ex = b[0] - a[0], ey = b[1] - a[1];
            const double len = std::hypot(ex, ey);
            Facet& f = h.facets_[i];
            f.vertex = {i, j, 0};
            f.normal = {ey / len, -ex / len, 0.0};
            f.offset = f.normal[0] * a[0] + f.normal[1] * a[1];
        }
    } else {
        auto qh = detail::quickhull3d(points, kept, eps);
        verts = std::move(qh.vertices);
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;
        h.facets_.reserve(qh.triangles.size());
        for (const auto& t : qh.triangles) {
            Eigen::Vector3d a(points[t[0]][0], points[t[0]][1], points[t[0]][2]);
            Eigen::Vector3d b(points[t[1]][0], points[t[1]][1], points[t[1]][2]);
            Eigen::Vector3d c(points[t[2]][0], points[t[2]][1], points[t[2]][2]);
            Eigen::Vector3d n = (b - a).cross(c - a);
            n.normalize();
            Facet f;
            f.vertex = {local.at(t[0]), local.at(t[1]), local.at(t[2])};
            f.normal = {n.x(), n.y(), n.z()};
            f.offset = n.dot((a + b + c) / 3.0);
            h.facets_.push_back(f);
        }
    }

    h.vertex_indices_ = verts;
    h.vertices_ = PointCloud(dim);
    h.vertices_.reserve(verts.size());
    for (std::size_t i : verts) h.vertices_.push_back(points[i]);
    h.centroid_ = Vec::Zero(dim);
    for (std::size_t i = 0; i < h.vertices_.size(); ++i) h.centroid_ += h.vertices_.point(i);
    h.centroid_ /= static_cast<double>(h.vertices_.size());
    return h;
}

double default_hull_tolerance(const PointCloud& points) { return 1e-9 * bbox_diagonal(points); }

HullClassification classify_points(const Hull& h, const PointCloud& points, double tol_hull, unsigned threads) {
    HullClassification out;
    out.labels.assign(points.size(), HullLabel::strict_interior);
    std::vector<char> is_vertex(points.size(), 0);
    for (std::size_t i : h.vertex_indices()) {
        if (i < points.size()) is_vertex[i] = 1;
    }
    const auto d = static_cast<std::size_t>(h.dim());
    const auto& facets = h.facets();
    parallel_for(points.size(), threads, [&](std::size_t i) {
        if (is_vertex[i]) {
            out.labels[i] = HullLabel::vertex;
            return;
        }
        const auto p = points[i];
        for (const auto& f : facets) {
            double s = -f.offset;
            for (std::size_t k = 0; k < d; ++k) s += f.normal[k] * p[k];
            if (s >= -tol_hull) {
                out.labels[i] = HullLabel::boundary_interior;
                return;
            }
        }
    });
    for (auto l : out.labels) {
        if (l == HullLabel::vertex) ++out.vertices;
        else if (l == HullLabel::boundary_interior) ++out.boundary_interior;
        else ++out.strict_interior;
    }
    return out;
}

double hull_measure(const Hull& h) {
    const auto& v = h.vertices();
    if (h.dim() == 1) return std::abs(v[1][0] - v[0][0]);
    if (h.dim() == 2) {
        double twice_area = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto a = v[i], b = v[(i + 1) % v.size()];
            twice_area += a[0] * b[1] - a[1] * b[0];
        }
        return 0.5 * twice_area;
    }
    const Eigen::Vector3d c = h.centroid();
    double six_volume = 0.0;
    for (const auto& f : h.facets()) {
        const Eigen::Vector3d a = v.point(f.vertex[0]) - c;
        const Eigen::Vector3d b = v.point(f.vertex[1]) - c;
        const Eigen::Vector3d d = v.point(f.vertex[2]) - c;
        six_volume += a.dot(b.cross(d));
    }
    return six_volume / 6.0;
}

}  // namespace reachtree
