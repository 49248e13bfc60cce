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

#ifndef REACHTREE_MODELS_HPP
#define REACHTREE_MODELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "reachtree/dynamics.hpp"
#include "reachtree/oracle.hpp"
#include "reachtree/sets.hpp"
#include "reachtree/tree.hpp"

namespace reachtree {

struct OracleConfig {
    GridSpec grid;
    SpatialOrder order = SpatialOrder::weno5;
    double cfl = 0.9;
};

// A complete reachability problem: dynamics, constraint sets, horizon and
// discretization, plus an optional oracle grid.
struct ProblemSpec {
    std::string name;
    FlowField field;
    Ellipsoid input_set;
    Ellipsoid terminal_set;
    double horizon = 0.0;
    StepperConfig stepper;
    int seeds = 0;
    int input_points = 0;
    TreeOptions tree;
    std::optional<OracleConfig> oracle;

    InputGrid input_grid() const { return InputGrid::from_boundary(input_set, input_points); }
    StepContext step_context() const { return {field, input_set, input_grid(), stepper}; }
    ControlSystem control_system() const { return {field, input_grid(), input_set}; }
    LevelSetFn terminal_function() const { return LevelSetFn::ellipsoidal(terminal_set); }

    // Throws ConfigError when members disagree in dimension or are out of range.
    void validate() const;
};

std::vector<std::string> builtin_names();

// "example1-linear" or "example2-dcmotor"; InputError otherwise.
ProblemSpec builtin(const std::string& name);

}  // namespace reachtree

#endif  // REACHTREE_MODELS_HPP
