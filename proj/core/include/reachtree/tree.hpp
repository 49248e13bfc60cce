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

#ifndef REACHTREE_TREE_HPP
#define REACHTREE_TREE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "reachtree/dynamics.hpp"
#include "reachtree/geometry.hpp"
#include "reachtree/point_cloud.hpp"
#include "reachtree/sets.hpp"

namespace reachtree {

// One node of a tree level, materialized for inspection. Levels store nodes
// column-wise (see TreeLevel).
struct Node {
    Vec state;
    std::optional<double> value;
    std::optional<std::size_t> parent;       // index into the previous level
    std::optional<std::size_t> input_index;  // index into the InputGrid
};

// Nodes generated at time t = T - k * dt.
struct TreeLevel {
    static constexpr std::int64_t kNone = -1;

    std::size_t k = 0;
    double t = 0.0;
    PointCloud states;
    std::vector<double> values;               // empty unless values are tracked
    std::vector<std::int64_t> parents;        // kNone for seeds
    std::vector<std::int32_t> input_indices;  // kNone for seeds
    std::size_t generated = 0;                // candidates before de-duplication

    std::size_t size() const { return states.size(); }
    bool empty() const { return states.empty(); }
    bool has_values() const { return !values.empty(); }
    Node node(std::size_t i) const;

    // Keeps the listed nodes, in the given order.
    TreeLevel subset(const std::vector<std::size_t>& keep) const;
};

struct TreeOptions {
    // candidates closer than dedup_rel * (level diameter) are merged
    double dedup_rel = 1e-10;
    // hull boundary tolerance, relative to the candidate cloud diameter
    double tol_hull_rel = 1e-9;
    // one-step reachability acceptance: tol_reach_rel * (1 + |x|)
    double tol_reach_rel = 1e-8;
    // store every level instead of only the latest
    bool keep_levels = false;
    // abort when a level would exceed this many candidates
    std::size_t level_cap = 2'000'000;
    // interior seed layers in filled mode (in addition to the centre)
    int interior_layers = 0;
    // 0 = hardware concurrency
    unsigned threads = 0;
};

// Everything needed to take one Euler step of the forward system and decide
// one-step reachability.
struct StepContext {
    FlowField field;
    Ellipsoid input_set;
    InputGrid inputs;
    StepperConfig stepper;
};

enum class SeedMode { boundary, filled };

// Level 0. Boundary mode: n0 points on the terminal-set boundary, no values.
// Filled mode: the same boundary points, then the centre and
// `interior_layers` scaled copies of the boundary, valued by g (boundary seeds
// with |g| <= 1e-12 get exactly 0).
TreeLevel seed_level(const Ellipsoid& terminal, const LevelSetFn& g, int n0, SeedMode mode,
                     int interior_layers = 0);

// Candidate level k + 1: every node stepped backwards with every input
// (x - dt f(x, u_j) for Euler), then de-duplicated. Throws CapacityError past
// options.level_cap and NumericError (with level and node) on overflow.
TreeLevel expand_level(const TreeLevel& level, const FlowField& f, const InputGrid& inputs,
                       const StepperConfig& cfg, const TreeOptions& options = {});

// Indices of the nodes x' of `prev` that x reaches in one forward step with
// some admissible input. Linear Euler steps are solved exactly (least squares
// on B u = (x' - x - dt A x) / dt, then u must lie in the input set); other
// systems are checked against the input grid. The generating parent, when
// given, is always a member.
std::vector<std::size_t> one_step_reachable_members(const Vec& x, const TreeLevel& prev, const StepContext& ctx,
                                                    std::optional<std::size_t> parent = std::nullopt,
                                                    const TreeOptions& options = {});

// Value of each candidate = min of prev values over its one-step reachable
// members. Throws ConsistencyError if some member set is empty.
TreeLevel propagate_values(TreeLevel candidates, const TreeLevel& prev, const StepContext& ctx,
                           const TreeOptions& options = {});

struct PruneNegativeResult {
    TreeLevel level;
    bool kept_maximal = false;  // every node was below -eps
};

// Drops nodes with value < -eps. If that would empty the level, the
// maximal-valued node(s) are kept instead.
PruneNegativeResult prune_negative(const TreeLevel& level, double eps);

struct PruneHullResult {
    TreeLevel level;
    bool degenerate = false;        // hull failed; all nodes kept
    double candidate_measure = 0.0;  // measure of conv(candidates), 0 when degenerate
};

// Keeps the nodes on the boundary of the candidates' convex hull (vertices
// and points within tol_hull of a facet).
PruneHullResult prune_hull(const TreeLevel& level, const TreeOptions& options = {});

struct LevelStats {
    std::size_t k = 0;
    double t = 0.0;
    std::size_t generated = 0;  // candidates before de-duplication
    std::size_t count = 0;      // nodes after pruning
    double wall_ms = 0.0;
    bool degenerate = false;
};

struct ReachRun {
    std::vector<TreeLevel> levels;  // all levels, or only the last one when streaming
    std::vector<LevelStats> stats;  // one entry per level, k = 0..N
    std::vector<std::string> events;
    std::size_t steps = 0;          // N

    const TreeLevel& final_level() const { return levels.back(); }
};

// N = ceil(T / dt) (with a 1e-9 relative allowance for round-off).
std::size_t step_count(double horizon, double dt);

// Backward tree with convex-hull pruning.
ReachRun run_algorithm2(const FlowField& f, const Ellipsoid& terminal, const InputGrid& inputs,
                        const StepperConfig& cfg, double horizon, int n0, const TreeOptions& options = {});

// Backward tree with dynamic-programming value propagation and optional
// pruning of nodes valued below -eps (eps = +inf disables it).
ReachRun run_algorithm1(const StepContext& ctx, const Ellipsoid& terminal, double horizon, int n0,
                        double eps = std::numeric_limits<double>::infinity(), const TreeOptions& options = {});

// Inputs along the parent chain of node `i` of the last level, ordered from
// that node forwards to the seed (the order a forward simulation applies
// them). Requires keep_levels.
std::vector<std::size_t> input_chain(const ReachRun& run, std::size_t i);

}  // namespace reachtree

#endif  // REACHTREE_TREE_HPP
