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

// Quickhull in three dimensions (Barber, Dobkin & Huhdanpaa), with
// triangular faces, explicit face adjacency and per-face outside sets.
// Points within eps of a face plane are treated as coplanar and never become
// vertices.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "reachtree/errors.hpp"
#include "reachtree/geometry.hpp"

namespace reachtree::detail {

namespace {

struct Face {
    std::array<std::size_t, 3> v{};  // CCW seen from outside
    std::array<int, 3> nb{-1, -1, -1};  // nb[i] shares edge v[i] -> v[i+1]
    Eigen::Vector3d normal;
    double offset = 0.0;
    std::vector<std::size_t> outside;
    bool alive = true;
    int visit = -1;
};

struct HorizonEdge {
    std::size_t a, b;
    int neighbor;
};

class Quickhull {
public:
    Quickhull(const PointCloud& cloud, double eps) : cloud_(cloud), eps_(eps) {}

    Quickhull3dResult run(const std::vector<std::size_t>& candidates) {
        build_simplex(candidates);
        for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
            if (faces_[fi].alive && !faces_[fi].outside.empty()) add_point(static_cast<int>(fi));
        }
        return collect();
    }

private:
    Eigen::Vector3d pt(std::size_t i) const {
        const auto p = cloud_[i];
        return {p[0], p[1], p[2]};
    }

    double distance(const Face& f, std::size_t i) const { return f.normal.dot(pt(i)) - f.offset; }

    int make_face(std::size_t a, std::size_t b, std::size_t c) {
        Face f;
        f.v = {a, b, c};
        const Eigen::Vector3d pa = pt(a), pb = pt(b), pc = pt(c);
        f.normal = (pb - pa).cross(pc - pa);
        const double len = f.normal.norm();
        if (len > 0.0) f.normal /= len;
        f.offset = f.normal.dot((pa + pb + pc) / 3.0);
        faces_.push_back(std::move(f));
        return static_cast<int>(faces_.size() - 1);
    }

    static int edge_index(const Face& f, std::size_t a, std::size_t b) {
        for (int i = 0; i < 3; ++i) {
            if (f.v[static_cast<std::size_t>(i)] == a && f.v[static_cast<std::size_t>((i + 1) % 3)] == b) return i;
        }
        return -1;
    }

    void build_simplex(const std::vector<std::size_t>& cand) {
        // extreme points along the axes, then the most distant pair among them
        std::array<std::size_t, 6> ext{};
        for (int k = 0; k < 3; ++k) {
            auto [lo, hi] = std::minmax_element(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
                return cloud_[a][static_cast<std::size_t>(k)] < cloud_[b][static_cast<std::size_t>(k)];
            });
            ext[static_cast<std::size_t>(2 * k)] = *lo;
            ext[static_cast<std::size_t>(2 * k + 1)] = *hi;
        }
        std::size_t a = ext[0], b = ext[1];
        double best = -1.0;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = i + 1; j < 6; ++j) {
                const double d = (pt(ext[i]) - pt(ext[j])).squaredNorm();
                if (d > best) {
                    best = d;
                    a = ext[i];
                    b = ext[j];
                }
            }
        }
        if (std::sqrt(best) <= eps_) throw DegenerateHullError("convex_hull: all points coincide");

        const Eigen::Vector3d pa = pt(a), ab = (pt(b) - pa).normalized();
        std::size_t c = a;
        best = -1.0;
        for (std::size_t i : cand) {
            const double d = (pt(i) - pa).cross(ab).norm();
            if (d > best) {
                best = d;
                c = i;
            }
        }
        if (best <= eps_) throw DegenerateHullError("convex_hull: points are collinear");

        const Eigen::Vector3d n = (pt(b) - pa).cross(pt(c) - pa).normalized();
        std::size_t d = a;
        best = -1.0;
        for (std::size_t i : cand) {
            const double dist = std::abs(n.dot(pt(i) - pa));
            if (dist > best) {
                best = dist;
                d = i;
            }
        }
        if (best <= eps_) throw DegenerateHullError("convex_hull: points are coplanar");

        // orient so that d lies below abc
        if (n.dot(pt(d) - pa) > 0.0) std::swap(b, c);
        const int f0 = make_face(a, b, c);
        const int f1 = make_face(a, d, b);
        const int f2 = make_face(b, d, c);
        const int f3 = make_face(c, d, a);
        const std::array<int, 4> ids{f0, f1, f2, f3};
        for (int fi : ids) {
            Face& f = faces_[static_cast<std::size_t>(fi)];
            for (int e = 0; e < 3; ++e) {
                const std::size_t va = f.v[static_cast<std::size_t>(e)], vb = f.v[static_cast<std::size_t>((e + 1) % 3)];
                for (int gi : ids) {
                    if (gi != fi && edge_index(faces_[static_cast<std::size_t>(gi)], vb, va) >= 0) {
                        f.nb[static_cast<std::size_t>(e)] = gi;
                    }
                }
            }
        }

        for (std::size_t i : cand) {
            if (i == a || i == b || i == c || i == d) continue;
            assign(i, ids.begin(), ids.end());
        }
    }

    template <typename It>
    void assign(std::size_t point, It first, It last) {
        int best_face = -1;
        double best = eps_;
        for (It it = first; it != last; ++it) {
            const double d = distance(faces_[static_cast<std::size_t>(*it)], point);
            if (d > best) {
                best = d;
                best_face = *it;
            }
        }
        if (best_face >= 0) faces_[static_cast<std::size_t>(best_face)].outside.push_back(point);
    }

    void horizon(const Eigen::Vector3d& eye, int fi, int entry_edge, int stamp) {
        Face& f = faces_[static_cast<std::size_t>(fi)];
        f.visit = stamp;
        visible_.push_back(fi);
        const int start = entry_edge < 0 ? 0 : (entry_edge + 1) % 3;
        const int count = entry_edge < 0 ? 3 : 2;
        for (int k = 0; k < count; ++k) {
            const int e = (start + k) % 3;
            // re-read: faces_ does not grow during the horizon walk
            const Face& cur = faces_[static_cast<std::size_t>(fi)];
            const int gi = cur.nb[static_cast<std::size_t>(e)];
            Face& g = faces_[static_cast<std::size_t>(gi)];
            if (g.visit == stamp) continue;
            const std::size_t va = cur.v[static_cast<std::size_t>(e)], vb = cur.v[static_cast<std::size_t>((e + 1) % 3)];
            if (g.normal.dot(eye) - g.offset > eps_) {
                horizon(eye, gi, edge_index(g, vb, va), stamp);
            } else {
                horizon_.push_back({va, vb, gi});
            }
        }
    }

    void add_point(int fi) {
        Face& f = faces_[static_cast<std::size_t>(fi)];
        auto far = std::max_element(f.outside.begin(), f.outside.end(), [&](std::size_t a, std::size_t b) {
            return distance(f, a) < distance(f, b);
        });
        const std::size_t eye_index = *far;
        const Eigen::Vector3d eye = pt(eye_index);

        visible_.clear();
        horizon_.clear();
        horizon(eye, fi, -1, ++stamp_);

        for (std::size_t i = 0; i < horizon_.size(); ++i) {
            if (horizon_[i].b != horizon_[(i + 1) % horizon_.size()].a) {
                throw ConsistencyError("quickhull: horizon is not a closed loop");
            }
        }

        const std::size_t first_new = faces_.size();
        const std::size_t h = horizon_.size();
        for (const auto& e : horizon_) make_face(e.a, e.b, eye_index);
        for (std::size_t i = 0; i < h; ++i) {
            Face& nf = faces_[first_new + i];
            const auto& e = horizon_[i];
            nf.nb[0] = e.neighbor;
            nf.nb[1] = static_cast<int>(first_new + (i + 1) % h);
            nf.nb[2] = static_cast<int>(first_new + (i + h - 1) % h);
            Face& g = faces_[static_cast<std::size_t>(e.neighbor)];
            const int ge = edge_index(g, e.b, e.a);
            if (ge < 0) throw ConsistencyError("quickhull: broken face adjacency");
            g.nb[static_cast<std::size_t>(ge)] = static_cast<int>(first_new + i);
        }

        std::vector<int> new_ids(h);
        for (std::size_t i = 0; i < h; ++i) new_ids[i] = static_cast<int>(first_new + i);
        for (int vi : visible_) {
            Face& vf = faces_[static_cast<std::size_t>(vi)];
            vf.alive = false;
            for (std::size_t p : vf.outside) {
                if (p != eye_index) assign(p, new_ids.begin(), new_ids.end());
            }
            vf.outside.clear();
            vf.outside.shrink_to_fit();
        }
    }

    Quickhull3dResult collect() const {
        Quickhull3dResult r;
        std::vector<std::size_t> verts;
        for (const auto& f : faces_) {
            if (!f.alive) continue;
            r.triangles.push_back(f.v);
            verts.insert(verts.end(), f.v.begin(), f.v.end());
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        r.vertices = std::move(verts);
        return r;
    }

    const PointCloud& cloud_;
    double eps_;
    std::vector<Face> faces_;
    std::vector<int> visible_;
    std::vector<HorizonEdge> horizon_;
    int stamp_ = 0;
};

}  // namespace

Quickhull3dResult quickhull3d(const PointCloud& cloud, const std::vector<std::size_t>& candidates, double eps) {
    if (cloud.dim() != 3) throw InputError("quickhull3d: cloud must be three-dimensional");
    if (candidates.size() < 4) throw DegenerateHullError("convex_hull: fewer than four distinct points");
    return Quickhull(cloud, eps).run(candidates);
}

}  // namespace reachtree::detail
