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

#include "reachtree/models.hpp"

#include <numbers>

#include "reachtree/errors.hpp"

namespace reachtree {

void ProblemSpec::validate() const {
    const int n = field.state_dim();
    if (terminal_set.dim() != n) throw ConfigError(name + ": terminal set dimension differs from the state dimension");
    if (input_set.dim() != field.input_dim()) {
        throw ConfigError(name + ": input set dimension differs from the input dimension");
    }
    if (!(horizon >= 0.0)) throw ConfigError(name + ": horizon must be >= 0");
    if (seeds < n + 1) throw ConfigError(name + ": need at least state_dim + 1 seeds");
    if (input_points < 1) throw ConfigError(name + ": need at least one input point");
    if (oracle && oracle->grid.dim() != n) throw ConfigError(name + ": oracle grid dimension differs from the state");
    if (!(tree.dedup_rel >= 0.0) || !(tree.tol_hull_rel >= 0.0) || !(tree.tol_reach_rel >= 0.0)) {
        throw ConfigError(name + ": tolerances must be >= 0");
    }
}

std::vector<std::string> builtin_names() { return {"example1-linear", "example2-dcmotor"}; }

ProblemSpec builtin(const std::string& name) {
    using std::numbers::pi;
    if (name == "example1-linear") {
        Mat a(2, 2);
        a << 0, 1, 1, 0;
        ProblemSpec p{
            .name = name,
            .field = FlowField::linear(a, Mat::Identity(2, 2)),
            .input_set = Ellipsoid(Vec::Unit(2, 1), Vec(Eigen::Vector2d(4, 1)).asDiagonal()),
            .terminal_set = Ellipsoid::scaled_identity(Vec::Zero(2), 0.01),
            .horizon = 1.0,
            .stepper = StepperConfig(Scheme::euler, 0.02),
            .seeds = 20,
            .input_points = 15,
            .tree = {},
            .oracle = OracleConfig{GridSpec({-4, -4}, {4, 4}, {200, 200}), SpatialOrder::weno5, 0.9},
        };
        p.validate();
        return p;
    }
    if (name == "example2-dcmotor") {
        ProblemSpec p{
            .name = name,
            .field = FlowField::dc_motor(),
            .input_set = Ellipsoid::scaled_identity(Vec::Zero(1), 4.0),
            .terminal_set = Ellipsoid::scaled_identity(Vec(Eigen::Vector3d(pi / 2, 0, 0)), 0.04),
            .horizon = 0.02,
            .stepper = StepperConfig(Scheme::euler, 0.0004),
            .seeds = 84,
            .input_points = 2,
            .tree = {},
            .oracle = OracleConfig{GridSpec({pi / 2 - 0.5, -0.6, -2.0}, {pi / 2 + 0.5, 1.0, 2.0}, {101, 101, 101}),
                                   SpatialOrder::weno5, 0.9},
        };
        p.validate();
        return p;
    }
    std::string valid;
    for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InputError("unknown builtin '" + name + "' (valid: " + valid + ")");
}

}  // namespace reachtree
