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

#ifndef REACHTREE_CONFIG_HPP
#define REACHTREE_CONFIG_HPP

#include <filesystem>
#include <string>

#include "reachtree/models.hpp"

namespace reachtree {

// JSON problem documents. A document is either complete, or names a builtin
// and patches it:
//
//   { "builtin": "example1-linear", "overrides": { "horizon": 0.5 } }
//
// Overrides follow JSON merge-patch rules (null removes a key). Unknown keys
// and malformed values raise ConfigError. See docs/config.md for the schema.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::filesystem::path& path);

// Complete document for `p` (no builtin reference); parse_problem inverts it.
std::string problem_to_json(const ProblemSpec& p, int indent = 2);

}  // namespace reachtree

#endif  // REACHTREE_CONFIG_HPP
