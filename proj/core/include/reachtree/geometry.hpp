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

#ifndef REACHTREE_GEOMETRY_HPP
#define REACHTREE_GEOMETRY_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "reachtree/point_cloud.hpp"

namespace reachtree {

// Supporting hyperplane { x : normal . x = offset } of a hull facet, with the
// facet's vertices as indices into Hull::vertices(). 1D facets use one index,
// 2D edges two, 3D triangles three; unused slots are zero.
struct Facet {
    std::array<std::size_t, 3> vertex{};
    std::array<double, 3> normal{};
    double offset = 0.0;
};

// Convex hull of a point cloud in 1, 2 or 3 dimensions.
//
// Vertices are a subset of the input cloud (`vertex_indices()` refers to the
// cloud the hull was built from). Facet normals point outwards. In 2D the
// vertices are in counter-clockwise order starting from the lexicographically
// smallest point.
class Hull {
public:
    int dim() const { return vertices_.dim(); }
    const PointCloud& vertices() const { return vertices_; }
    const std::vector<std::size_t>& vertex_indices() const { return vertex_indices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const Vec& centroid() const { return centroid_; }
    // Bounding-box diagonal of the source cloud.
    double scale() const { return scale_; }

    // max over facets of (normal . x - offset): <= 0 inside, > 0 outside.
    double signed_distance(std::span<const double> x) const;

private:
    friend Hull convex_hull(const PointCloud& points);

    PointCloud vertices_;
    std::vector<std::size_t> vertex_indices_;
    std::vector<Facet> facets_;
    Vec centroid_;
    double scale_ = 0.0;
};

// 1D: interval; 2D: Andrew's monotone chain; 3D: quickhull. Points closer
// than 1e-12 * (cloud diameter) are merged first. Throws DegenerateHullError
// when the cloud spans fewer than dim() affine dimensions, InputError for
// unsupported dimensions or too few points.
Hull convex_hull(const PointCloud& points);

enum class HullLabel { vertex, boundary_interior, strict_interior };

struct HullClassification {
    std::vector<HullLabel> labels;
    std::size_t vertices = 0;
    std::size_t boundary_interior = 0;
    std::size_t strict_interior = 0;

    bool on_boundary(std::size_t i) const { return labels[i] != HullLabel::strict_interior; }
};

// 1e-9 * bounding-box diagonal of the cloud.
double default_hull_tolerance(const PointCloud& points);

// Labels every point of the cloud `h` was built from: hull vertices, points
// within tol_hull of some facet plane (boundary-interior), and the rest.
HullClassification classify_points(const Hull& h, const PointCloud& points, double tol_hull,
                                   unsigned threads = 1);

// Length / area / volume of the hull.
double hull_measure(const Hull& h);

namespace detail {

struct Quickhull3dResult {
    std::vector<std::size_t> vertices;                  // indices into the cloud
    std::vector<std::array<std::size_t, 3>> triangles;  // indices into the cloud, CCW seen from outside
};

Quickhull3dResult quickhull3d(const PointCloud& cloud, const std::vector<std::size_t>& candidates, double eps);

}  // namespace detail

}  // namespace reachtree

#endif  // REACHTREE_GEOMETRY_HPP
