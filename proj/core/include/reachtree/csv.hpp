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

#ifndef REACHTREE_CSV_HPP
#define REACHTREE_CSV_HPP

#include <filesystem>
#include <vector>

#include "reachtree/geometry.hpp"
#include "reachtree/oracle.hpp"
#include "reachtree/tree.hpp"

namespace reachtree {

// Every file starts with "# reachtree <kind> v<kSchemaVersion>", then a
// column header (CSV) or OBJ records. Numbers use round-trip precision.
inline constexpr int kSchemaVersion = 1;

void write_nodes_csv(const std::filesystem::path& path, const TreeLevel& level);
void write_hull_vertices_csv(const std::filesystem::path& path, const Hull& hull);
// 2D: one row per edge (v0, v1); 3D: one row per triangle. Plus the outward
// normal and offset.
void write_hull_facets_csv(const std::filesystem::path& path, const Hull& hull);
void write_field_csv(const std::filesystem::path& path, const GridField& field);
// 2D contours as CSV (polyline, x, y); 3D as OBJ.
void write_contour(const std::filesystem::path& path, const Contour& contour);
void write_level_stats_csv(const std::filesystem::path& path, const std::vector<LevelStats>& stats);

}  // namespace reachtree

#endif  // REACHTREE_CSV_HPP
