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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "reachtree/dynamics.hpp"
#include "reachtree/errors.hpp"

using namespace reachtree;
using std::numbers::pi;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }
Vec v3(double a, double b, double c) { return Vec(Eigen::Vector3d(a, b, c)); }

FlowField example1() {
    Mat a(2, 2);
    a << 0, 1, 1, 0;
    return FlowField::linear(a, Mat::Identity(2, 2));
}

}  // namespace

TEST(StepperConfig, RejectsNonPositiveDt) {
    EXPECT_THROW(StepperConfig(Scheme::euler, 0.0), InputError);
    EXPECT_THROW(StepperConfig(Scheme::rk4, -1e-3), InputError);
    EXPECT_EQ(scheme_from_string("rk4"), Scheme::rk4);
    EXPECT_THROW(scheme_from_string("midpoint"), InputError);
}

TEST(Step, ZeroField) {
    const auto f = FlowField::zero(2, 1);
    const Vec x = step(f, v2(1, 2), v1(5), StepperConfig(Scheme::euler, 0.1));
    EXPECT_EQ(x, v2(1, 2));
}

TEST(Step, LinearEuler) {
    const Vec x = step(example1(), v2(1, 0), v2(0, 0), StepperConfig(Scheme::euler, 0.02));
    EXPECT_DOUBLE_EQ(x[0], 1.0);
    EXPECT_DOUBLE_EQ(x[1], 0.02);
}

TEST(Step, DcMotorEuler) {
    const Vec x = step(FlowField::dc_motor(), v3(pi / 2, 0, 0), v1(2), StepperConfig(Scheme::euler, 0.0004));
    EXPECT_DOUBLE_EQ(x[0], pi / 2);
    EXPECT_NEAR(x[1], -0.004, 1e-16);
    EXPECT_NEAR(x[2], 0.04, 1e-16);
}

TEST(Step, DimensionMismatch) {
    EXPECT_THROW(step(example1(), v3(0, 0, 0), v2(0, 0), StepperConfig(Scheme::euler, 0.1)), InputError);
    EXPECT_THROW(step(example1(), v2(0, 0), v1(0), StepperConfig(Scheme::euler, 0.1)), InputError);
}

TEST(Step, NonFiniteResultIsNumericError) {
    const auto blowup = FlowField::custom("blowup", 1, 1, [](auto x, auto, auto dx) { dx[0] = 1.0 / x[0]; });
    EXPECT_THROW(step(blowup, v1(0.0), v1(0.0), StepperConfig(Scheme::euler, 0.1)), NumericError);
    const auto huge = FlowField::constant(v1(std::numeric_limits<double>::max()), 1);
    EXPECT_THROW(step(huge, v1(std::numeric_limits<double>::max()), v1(0), StepperConfig(Scheme::euler, 10.0)),
                 NumericError);
}

TEST(ReverseStep, EulerIsExactNegation) {
    const StepperConfig cfg(Scheme::euler, 0.02);
    const Vec x = reverse_step(example1(), v2(0, 0), v2(0, 2), cfg);
    EXPECT_DOUBLE_EQ(x[0], 0.0);
    EXPECT_DOUBLE_EQ(x[1], -0.04);

    const Vec y = reverse_step(FlowField::dc_motor(), v3(pi / 2, 0, 0), v1(-2), StepperConfig(Scheme::euler, 0.0004));
    EXPECT_DOUBLE_EQ(y[0], pi / 2);
    EXPECT_NEAR(y[1], 0.004, 1e-16);
    // -dt * 50 * u = +0.04 for u = -2
    EXPECT_NEAR(y[2], 0.04, 1e-16);
}

TEST(ReverseStep, ConstantFieldCancels) {
    const auto f = FlowField::constant(v2(0.3, -1.7), 1);
    for (Scheme s : {Scheme::euler, Scheme::rk4}) {
        const StepperConfig cfg(s, 0.125);
        const Vec x0 = v2(0.25, 4.0);
        // exact up to the rounding of x + a - a
        EXPECT_LE((reverse_step(f, step(f, x0, v1(0), cfg), v1(0), cfg) - x0).norm(), 4e-16 * x0.norm());
    }
}

TEST(FlowField, ReversalIsAnInvolution) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (const auto& f : {example1(), FlowField::dc_motor()}) {
        const auto twice = f.reversed().reversed();
        EXPECT_FALSE(twice.is_reversed());
        EXPECT_TRUE(f.reversed().is_reversed());
        for (int i = 0; i < 50; ++i) {
            Vec x(f.state_dim()), w(f.input_dim());
            for (auto& c : x) c = u(rng);
            for (auto& c : w) c = u(rng);
            EXPECT_EQ(twice(x, w), f(x, w));
            EXPECT_EQ(f.reversed()(x, w), -f(x, w));
        }
    }
}

TEST(FlowField, LinearMatchesAxPlusBu) {
    Mat a(2, 2), b(2, 1);
    a << 1, 2, 3, 4;
    b << 5, 6;
    const auto f = FlowField::linear(a, b);
    EXPECT_EQ(f(v2(1, -1), v1(2)), a * v2(1, -1) + b * v1(2));
    EXPECT_THROW(FlowField::linear(a, Mat::Identity(3, 1)), InputError);
    EXPECT_THROW(FlowField::linear(Mat::Identity(2, 3), b), InputError);
}

TEST(FlowField, DcMotorSignAtZero) {
    // sign(0) = 0 and the x2^2 term vanishes anyway
    const Vec d = FlowField::dc_motor()(v3(0.3, 0, 0.1), v1(0));
    EXPECT_DOUBLE_EQ(d[1], -10 * std::sin(0.3) + 0.5);
}

TEST(FlowField, DcMotorAtTerminalCentreWithZeroInput) {
    // Only the gravity-like term is non-zero at (pi/2, 0, 0).
    const Vec d = FlowField::dc_motor()(v3(pi / 2, 0, 0), v1(0));
    EXPECT_DOUBLE_EQ(d[0], 0.0);
    EXPECT_DOUBLE_EQ(d[1], -10.0);
    EXPECT_DOUBLE_EQ(d[2], 0.0);
}

TEST(FlowField, LocallyLipschitz) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto& f : {example1(), FlowField::dc_motor()}) {
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            Vec x(f.state_dim()), y(f.state_dim()), w(f.input_dim());
            for (auto& c : x) c = u(rng);
            for (auto& c : w) c = u(rng);
            y = x;
            for (auto& c : y) c += 1e-3 * u(rng);
            if (f.kind() == FlowField::Kind::dc_motor && i % 2 == 0) {
                // straddle the kink of sign(x2) x2^2
                x[1] = 1e-4 * u(rng);
                y[1] = -x[1];
            }
            const double dxy = (x - y).norm();
            if (dxy == 0.0) continue;
            worst = std::max(worst, (f(x, w) - f(y, w)).norm() / dxy);
        }
        EXPECT_TRUE(std::isfinite(worst));
        EXPECT_LT(worst, f.kind() == FlowField::Kind::linear ? 1.0 + 1e-9 : 60.0);
    }
}

TEST(Simulate, ZeroFieldIsConstant) {
    const auto traj = simulate(FlowField::zero(2, 1), v2(1, 2), std::vector<Vec>(5, v1(3)),
                               StepperConfig(Scheme::rk4, 0.1));
    ASSERT_EQ(traj.size(), 6u);
    for (const auto& x : traj) EXPECT_EQ(x, v2(1, 2));
}

TEST(Simulate, LinearMatchesMatrixExponential) {
    // x(1) = int_0^1 e^{A s} ds (0, 1) = (cosh 1 - 1, sinh 1) for A = [[0,1],[1,0]]
    const Vec exact = v2(std::cosh(1.0) - 1.0, std::sinh(1.0));
    const std::vector<Vec> u(50, v2(0, 1));
    const Vec euler = simulate(example1(), Vec::Zero(2), u, StepperConfig(Scheme::euler, 0.02)).back();
    const Vec rk4 = simulate(example1(), Vec::Zero(2), u, StepperConfig(Scheme::rk4, 0.02)).back();
    EXPECT_LT((euler - exact).norm(), 0.05);
    EXPECT_LT((rk4 - exact).norm(), 1e-6);
}

TEST(Simulate, ErrorsCarryStepIndex) {
    const auto f = FlowField::custom("grow", 1, 1, [](auto x, auto, auto dx) { dx[0] = x[0] * x[0]; });
    try {
        simulate(f, v1(1e100), std::vector<Vec>(10, v1(0)), StepperConfig(Scheme::euler, 1.0));
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
    }
    EXPECT_THROW(simulate(f, v1(0), {}, StepperConfig(Scheme::euler, 1.0)), InputError);
}

TEST(Simulate, ReversedRoundTripShrinksWithDt) {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto f = example1();
    std::vector<Vec> seq;
    for (int i = 0; i < 20; ++i) seq.push_back(v2(u(rng), u(rng)));
    auto round_trip = [&](Scheme s, int refine) {
        std::vector<Vec> fine;
        for (const auto& w : seq) fine.insert(fine.end(), refine, w);
        const StepperConfig cfg(s, 0.05 / refine);
        const Vec x0 = v2(0.3, -0.2);
        const Vec end = simulate(f, x0, fine, cfg).back();
        std::vector<Vec> back(fine.rbegin(), fine.rend());
        return (simulate(f.reversed(), end, back, cfg).back() - x0).norm();
    };
    EXPECT_GT(round_trip(Scheme::euler, 1) / round_trip(Scheme::euler, 2), 1.9);
    EXPECT_GT(round_trip(Scheme::rk4, 1) / round_trip(Scheme::rk4, 2), 8.0);
}
