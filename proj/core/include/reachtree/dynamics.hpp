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

#ifndef REACHTREE_DYNAMICS_HPP
#define REACHTREE_DYNAMICS_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "reachtree/point_cloud.hpp"

namespace reachtree {

enum class Scheme { euler, rk4 };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct StepperConfig {
    Scheme scheme = Scheme::euler;
    double dt = 0.0;

    StepperConfig(Scheme scheme_, double dt_);
};

// Flow field f(x, u) of x' = f(x, u).
//
// Evaluators must be pure: the tree expands nodes from several workers at
// once. A field carries a sign so that `reversed()` gives the time-reversed
// system x' = -f(x, u); reversing twice restores the original exactly.
class FlowField {
public:
    enum class Kind { linear, dc_motor, custom };

    using Evaluator =
        std::function<void(std::span<const double> x, std::span<const double> u, std::span<double> dx)>;

    // x' = A x + B u
    static FlowField linear(Mat a, Mat b);

    // x1' = x2
    // x2' = -10 sin(x1) - sign(x2) x2^2 + 5 x3
    // x3' = -10 x2 + 50 x3 + 50 u
    // sign(0) is taken as 0.
    static FlowField dc_motor();

    static FlowField custom(std::string name, int state_dim, int input_dim, Evaluator fn);

    // f == 0; convenient degenerate model.
    static FlowField zero(int state_dim, int input_dim);

    // f == c, independent of x and u.
    static FlowField constant(Vec c, int input_dim);

    FlowField reversed() const;

    Kind kind() const { return impl_->kind; }
    const std::string& name() const { return impl_->name; }
    int state_dim() const { return impl_->state_dim; }
    int input_dim() const { return impl_->input_dim; }
    bool is_reversed() const { return sign_ < 0.0; }

    // Linear data; nullptr unless kind() == Kind::linear. Refers to the
    // un-reversed system.
    const Mat* a_matrix() const;
    const Mat* b_matrix() const;

    void evaluate(std::span<const double> x, std::span<const double> u, std::span<double> dx) const;
    Vec operator()(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u) const;

private:
    struct Impl {
        Kind kind;
        std::string name;
        int state_dim;
        int input_dim;
        Evaluator fn;
        Mat a;
        Mat b;
    };

    explicit FlowField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
    double sign_ = 1.0;
};

// One explicit step with u held constant. Euler: x + dt f(x, u); rk4: the
// classical four-stage step. `out` may not alias `x`. Throws NumericError on
// a non-finite result.
void step(const FlowField& f, std::span<const double> x, std::span<const double> u,
          const StepperConfig& cfg, std::span<double> out);
Vec step(const FlowField& f, const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u,
         const StepperConfig& cfg);

// step() of the time-reversed field; Euler gives x - dt f(x, u) exactly.
void reverse_step(const FlowField& f, std::span<const double> x, std::span<const double> u,
                  const StepperConfig& cfg, std::span<double> out);
Vec reverse_step(const FlowField& f, const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u,
                 const StepperConfig& cfg);

// Trajectory x0, x1, ..., x_N for N = u_seq.size() inputs.
std::vector<Vec> simulate(const FlowField& f, const Vec& x0, const std::vector<Vec>& u_seq,
                          const StepperConfig& cfg);

}  // namespace reachtree

#endif  // REACHTREE_DYNAMICS_HPP
