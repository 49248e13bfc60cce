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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <Eigen/Geometry>

#include "reachtree/errors.hpp"
#include "reachtree/oracle.hpp"

namespace reachtree {

namespace {

// Vertices on grid edges, shared between neighbouring cells. A crossing that
// lands exactly on a node snaps to that node.
class VertexTable {
public:
    VertexTable(const GridField& field, PointCloud& out) : field_(field), out_(out) {}

    std::size_t on_edge(std::size_t a, std::size_t b) {
        const double wa = field_.values[a], wb = field_.values[b];
        const double t = wa / (wa - wb);
        if (t <= 0.0) return at_node(a);
        if (t >= 1.0) return at_node(b);
        const std::uint64_t key = key_of(std::min(a, b), std::max(a, b));
        auto [it, fresh] = ids_.try_emplace(key, out_.size());
        if (fresh) {
            const Vec pa = field_.spec.node(a), pb = field_.spec.node(b);
            out_.push_back(Vec(pa + t * (pb - pa)));
        }
        return it->second;
    }

private:
    std::size_t at_node(std::size_t a) {
        auto [it, fresh] = ids_.try_emplace(key_of(a, a), out_.size());
        if (fresh) out_.push_back(field_.spec.node(a));
        return it->second;
    }
    std::uint64_t key_of(std::size_t a, std::size_t b) const {
        return static_cast<std::uint64_t>(a) * field_.spec.size() + b;
    }

    const GridField& field_;
    PointCloud& out_;
    std::unordered_map<std::uint64_t, std::size_t> ids_;
};

// Marching squares on the sign pattern of w < 0; a node with w == 0 counts as
// outside, so the curve passes through it once instead of pinching there.
// Segments keep the inside on their left: outer loops run counter-clockwise
// and holes clockwise.
void contour_2d(const GridField& field, Contour& c) {
    const GridSpec& spec = field.spec;
    const auto& w = field.values;
    VertexTable table(field, c.vertices);
    std::vector<std::array<std::size_t, 2>> segments;
    const std::size_t sy = spec.stride(1);
    for (int j = 0; j + 1 < spec.counts()[1]; ++j) {
        for (int i = 0; i + 1 < spec.counts()[0]; ++i) {
            const std::size_t c0 = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * sy;
            const std::array<std::size_t, 4> node{c0, c0 + 1, c0 + 1 + sy, c0 + sy};
            std::array<bool, 4> in{};
            int count = 0;
            for (std::size_t k = 0; k < 4; ++k) count += (in[k] = w[node[k]] < 0.0) ? 1 : 0;
            if (count == 0 || count == 4) continue;
            // edge e runs node[e] -> node[e + 1]; corner k sits between edges k - 1 and k
            auto cut = [&](std::size_t k) {
                const std::size_t prev = (k + 3) % 4;
                const std::size_t from = table.on_edge(node[prev], node[k]);
                const std::size_t to = table.on_edge(node[k], node[(k + 1) % 4]);
                if (from == to) return;
                // Walking prev-edge -> next-edge turns around corner k
                // clockwise, leaving k on the right.
                if (in[k]) {
                    segments.push_back({to, from});
                } else {
                    segments.push_back({from, to});
                }
            };
            if (count == 2 && in[0] == in[2]) {
                double centre = 0.0;
                for (std::size_t k = 0; k < 4; ++k) centre += 0.25 * w[node[k]];
                const bool in_centre = centre < 0.0;
                for (std::size_t k = 0; k < 4; ++k) {
                    if (in[k] != in_centre) cut(k);
                }
            } else if (count == 1 || count == 3) {
                for (std::size_t k = 0; k < 4; ++k) {
                    if (in[k] == (count == 1)) cut(k);
                }
            } else {
                // Two adjacent corners on each side: the segment crosses the
                // two edges joining them.
                std::array<std::size_t, 2> ends{};
                std::size_t m = 0;
                std::size_t inside_corner = 0;
                for (std::size_t e = 0; e < 4; ++e) {
                    if (in[e] != in[(e + 1) % 4]) ends[m++] = e;
                    if (in[e]) inside_corner = e;
                }
                const std::size_t p = table.on_edge(node[ends[0]], node[(ends[0] + 1) % 4]);
                const std::size_t q = table.on_edge(node[ends[1]], node[(ends[1] + 1) % 4]);
                if (p == q) continue;
                const Vec pp = c.vertices.point(p), qq = c.vertices.point(q);
                const Vec corner = spec.node(node[inside_corner]);
                const double cross = (qq[0] - pp[0]) * (corner[1] - pp[1]) - (qq[1] - pp[1]) * (corner[0] - pp[0]);
                if (cross >= 0.0) {
                    segments.push_back({p, q});
                } else {
                    segments.push_back({q, p});
                }
            }
        }
    }

    // Chain directed segments into polylines.
    std::vector<std::vector<std::size_t>> out_seg(c.vertices.size());
    std::vector<int> in_degree(c.vertices.size(), 0);
    for (std::size_t s = 0; s < segments.size(); ++s) {
        out_seg[segments[s][0]].push_back(s);
        ++in_degree[segments[s][1]];
    }
    std::vector<bool> used(segments.size(), false);
    auto walk = [&](std::size_t start_seg) {
        std::vector<std::size_t> line{segments[start_seg][0]};
        std::size_t s = start_seg;
        while (true) {
            used[s] = true;
            const std::size_t v = segments[s][1];
            line.push_back(v);
            auto& outs = out_seg[v];
            auto next = std::find_if(outs.begin(), outs.end(), [&](std::size_t t) { return !used[t]; });
            if (next == outs.end()) break;
            s = *next;
        }
        c.polylines.push_back(std::move(line));
    };
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s] && in_degree[segments[s][0]] == 0) walk(s);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s]) walk(s);
    }
}

// Marching tetrahedra: each cube is split into six tetrahedra around its main
// diagonal. Triangles are oriented with their normal pointing towards w > 0.
void contour_3d(const GridField& field, Contour& c) {
    const GridSpec& spec = field.spec;
    const auto& w = field.values;
    VertexTable table(field, c.vertices);
    const std::size_t sy = spec.stride(1), sz = spec.stride(2);
    static constexpr std::array<std::array<int, 4>, 6> tets{
        {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7}, {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}}};

    auto emit = [&](std::size_t a, std::size_t b, std::size_t d, const Vec& towards_out) {
        if (a == b || b == d || a == d) return;
        const Eigen::Vector3d pa = c.vertices.point(a), pb = c.vertices.point(b), pd = c.vertices.point(d);
        const Eigen::Vector3d n = (pb - pa).cross(pd - pa);
        if (n.dot(towards_out) >= 0.0) {
            c.triangles.push_back({a, b, d});
        } else {
            c.triangles.push_back({a, d, b});
        }
    };

    for (int k = 0; k + 1 < spec.counts()[2]; ++k) {
        for (int j = 0; j + 1 < spec.counts()[1]; ++j) {
            for (int i = 0; i + 1 < spec.counts()[0]; ++i) {
                const std::size_t c0 = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * sy +
                                       static_cast<std::size_t>(k) * sz;
                std::array<std::size_t, 8> node{};
                int count = 0;
                for (std::size_t b = 0; b < 8; ++b) {
                    node[b] = c0 + (b & 1) + ((b >> 1) & 1) * sy + ((b >> 2) & 1) * sz;
                    count += w[node[b]] < 0.0 ? 1 : 0;
                }
                if (count == 0 || count == 8) continue;
                for (const auto& tet : tets) {
                    std::array<std::size_t, 4> ins{}, outs{};
                    std::size_t ni = 0, no = 0;
                    for (int v : tet) {
                        const std::size_t g = node[static_cast<std::size_t>(v)];
                        if (w[g] < 0.0) {
                            ins[ni++] = g;
                        } else {
                            outs[no++] = g;
                        }
                    }
                    if (ni == 0 || no == 0) continue;
                    Vec towards = Vec::Zero(3);
                    for (std::size_t o = 0; o < no; ++o) towards += spec.node(outs[o]) / static_cast<double>(no);
                    for (std::size_t o = 0; o < ni; ++o) towards -= spec.node(ins[o]) / static_cast<double>(ni);
                    if (ni == 1 || no == 1) {
                        const bool lone_in = ni == 1;
                        const std::size_t lone = lone_in ? ins[0] : outs[0];
                        const auto& others = lone_in ? outs : ins;
                        emit(table.on_edge(lone, others[0]), table.on_edge(lone, others[1]),
                             table.on_edge(lone, others[2]), towards);
                    } else {
                        const std::size_t p0 = table.on_edge(ins[0], outs[0]);
                        const std::size_t p1 = table.on_edge(ins[0], outs[1]);
                        const std::size_t p2 = table.on_edge(ins[1], outs[1]);
                        const std::size_t p3 = table.on_edge(ins[1], outs[0]);
                        emit(p0, p1, p2, towards);
                        emit(p0, p2, p3, towards);
                    }
                }
            }
        }
    }
}

}  // namespace

Contour zero_contour(const GridField& field) {
    const int d = field.spec.dim();
    if (d != 2 && d != 3) throw CapabilityError("zero_contour: 2D or 3D fields only");
    Contour c;
    c.dim = d;
    c.vertices = PointCloud(d);
    if (d == 2) {
        contour_2d(field, c);
    } else {
        contour_3d(field, c);
    }
    c.empty = c.polylines.empty() && c.triangles.empty();
    return c;
}

double enclosed_area(const Contour& contour) {
    if (contour.dim != 2) throw CapabilityError("enclosed_area: 2D contours only");
    double signed2 = 0.0;
    for (const auto& line : contour.polylines) {
        if (line.size() < 3 || line.front() != line.back()) continue;
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
            const auto p = contour.vertices[line[k]];
            const auto q = contour.vertices[line[k + 1]];
            signed2 += p[0] * q[1] - q[0] * p[1];
        }
    }
    return std::abs(0.5 * signed2);
}

}  // namespace reachtree
