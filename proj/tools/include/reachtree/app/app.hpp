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

#ifndef REACHTREE_APP_APP_HPP
#define REACHTREE_APP_APP_HPP

#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reachtree/geometry.hpp"
#include "reachtree/models.hpp"
#include "reachtree/oracle.hpp"
#include "reachtree/tree.hpp"

namespace reachtree::app {

enum class Algorithm { tree_pruned, tree_full };
Algorithm algorithm_from_string(const std::string& s);
const char* to_string(Algorithm a);

struct ReachFlags {
    Algorithm algorithm = Algorithm::tree_pruned;
    double eps = std::numeric_limits<double>::infinity();  // tree-full only
    bool keep_levels = false;
    std::optional<int> seed_count;
    std::optional<int> input_count;
    unsigned threads = 0;
};

struct ReachOutcome {
    ReachRun run;
    std::optional<Hull> hull;  // hull of the final level (value <= 0 nodes for tree-full)
    double hull_measure = 0.0;
    double wall_ms = 0.0;
};

struct OracleOutcome {
    GridField field;
    SolveReport solve;
    double measure = 0.0;
    Contour contour;
};

// Applies --seed-count / --input-count and validates.
ProblemSpec apply_flags(ProblemSpec p, const ReachFlags& flags);

ReachOutcome run_reach(const ProblemSpec& p, const ReachFlags& flags);
OracleOutcome run_oracle(const ProblemSpec& p, unsigned threads = 0);

// Config argument: a JSON file path, or a builtin name.
ProblemSpec resolve_problem(const std::string& arg);

// Output directory: explicit flag, then $REACH_OUT_DIR, then ./reach_out.
std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& flag);

// Artifact writers. report.json is deterministic; wall-clock numbers go to
// timings.json.
void write_reach_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const ReachFlags& flags,
                           const ReachOutcome& r);
void write_oracle_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const OracleOutcome& o);
void write_compare_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const ReachFlags& flags,
                             const ReachOutcome& r, const OracleOutcome& o);

// Full command line. Exit codes: 0 ok, 2 configuration/input error,
// 3 numeric or capacity failure, 1 anything else.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace reachtree::app

#endif  // REACHTREE_APP_APP_HPP
