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

#include "reachtree/csv.hpp"

#include <fstream>
#include <limits>

#include "reachtree/errors.hpp"

namespace reachtree {

namespace {

std::ofstream open(const std::filesystem::path& path, const char* kind) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "# reachtree " << kind << " v" << kSchemaVersion << '\n';
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

void coord_header(std::ofstream& out, int dim) {
    for (int k = 0; k < dim; ++k) out << (k ? "," : "") << 'x' << k;
}

void coords(std::ofstream& out, std::span<const double> p) {
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
}

}  // namespace

void write_nodes_csv(const std::filesystem::path& path, const TreeLevel& level) {
    auto out = open(path, "nodes");
    out << "index,";
    coord_header(out, level.states.dim());
    out << ",value,parent,input\n";
    for (std::size_t i = 0; i < level.size(); ++i) {
        out << i << ',';
        coords(out, level.states[i]);
        out << ',';
        if (level.has_values()) out << level.values[i];
        out << ',' << level.parents[i] << ',' << level.input_indices[i] << '\n';
    }
    finish(out, path);
}

void write_hull_vertices_csv(const std::filesystem::path& path, const Hull& hull) {
    auto out = open(path, "hull-vertices");
    out << "index,source,";
    coord_header(out, hull.dim());
    out << '\n';
    for (std::size_t i = 0; i < hull.vertices().size(); ++i) {
        out << i << ',' << hull.vertex_indices()[i] << ',';
        coords(out, hull.vertices()[i]);
        out << '\n';
    }
    finish(out, path);
}

void write_hull_facets_csv(const std::filesystem::path& path, const Hull& hull) {
    auto out = open(path, "hull-facets");
    const int d = hull.dim();
    out << "index";
    for (int k = 0; k < d; ++k) out << ",v" << k;
    for (int k = 0; k < d; ++k) out << ",n" << k;
    out << ",offset\n";
    for (std::size_t f = 0; f < hull.facets().size(); ++f) {
        const Facet& fc = hull.facets()[f];
        out << f;
        for (int k = 0; k < d; ++k) out << ',' << fc.vertex[static_cast<std::size_t>(k)];
        for (int k = 0; k < d; ++k) out << ',' << fc.normal[static_cast<std::size_t>(k)];
        out << ',' << fc.offset << '\n';
    }
    finish(out, path);
}

void write_field_csv(const std::filesystem::path& path, const GridField& field) {
    auto out = open(path, "field");
    const GridSpec& g = field.spec;
    out << "# time=" << field.time << " counts=";
    for (int a = 0; a < g.dim(); ++a) out << (a ? "x" : "") << g.counts()[static_cast<std::size_t>(a)];
    out << " edges=linear-extrapolation\n";
    coord_header(out, g.dim());
    out << ",w\n";
    std::vector<double> x(static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        coords(out, x);
        out << ',' << field.values[i] << '\n';
    }
    finish(out, path);
}

void write_contour(const std::filesystem::path& path, const Contour& contour) {
    if (contour.dim == 2) {
        auto out = open(path, "contour");
        out << "polyline,x0,x1\n";
        for (std::size_t l = 0; l < contour.polylines.size(); ++l) {
            for (std::size_t v : contour.polylines[l]) {
                out << l << ',';
                coords(out, contour.vertices[v]);
                out << '\n';
            }
        }
        finish(out, path);
        return;
    }
    auto out = open(path, "contour-mesh");
    for (std::size_t v = 0; v < contour.vertices.size(); ++v) {
        const auto p = contour.vertices[v];
        out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    }
    for (const auto& t : contour.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    finish(out, path);
}

void write_level_stats_csv(const std::filesystem::path& path, const std::vector<LevelStats>& stats) {
    auto out = open(path, "node-growth");
    out << "k,t,generated,count,degenerate\n";
    for (const auto& s : stats) {
        out << s.k << ',' << s.t << ',' << s.generated << ',' << s.count << ',' << (s.degenerate ? 1 : 0) << '\n';
    }
    finish(out, path);
}

}  // namespace reachtree
