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
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "reachtree/errors.hpp"
#include "reachtree/models.hpp"
#include "reachtree/oracle.hpp"

using namespace reachtree;

namespace {

ControlSystem zero_system(int n) {
    return {FlowField::zero(n, 1), InputGrid::from_points({Vec::Zero(1)}), std::nullopt};
}

// w_t = w_x: constant drift +1 along the only axis
ControlSystem unit_drift() {
    return {FlowField::constant(Vec::Ones(1), 1), InputGrid::from_points({Vec::Zero(1)}), std::nullopt};
}

LevelSetFn quadratic_1d() {
    return LevelSetFn::custom("x^2 - 1/4", 1, [](const Eigen::Ref<const Vec>& x) { return x[0] * x[0] - 0.25; });
}

// x^2 - 1/4 continued linearly (C1) past |x| = 1/2, so the extrapolated edge
// ghosts are exact and the whole grid can be compared with g(x + t).
double bowl(double x) { return std::abs(x) <= 0.5 ? x * x - 0.25 : std::abs(x) - 0.5; }

LevelSetFn bowl_1d() {
    return LevelSetFn::custom("bowl", 1, [](const Eigen::Ref<const Vec>& x) { return bowl(x[0]); });
}

GridField sampled(const GridSpec& spec, double (*fn)(const Vec&)) {
    GridField f{spec, std::vector<double>(spec.size()), 0.0};
    for (std::size_t i = 0; i < spec.size(); ++i) f.values[i] = fn(spec.node(i));
    return f;
}

double max_error_advection(int n, double horizon, SpatialOrder order = SpatialOrder::first) {
    const GridSpec spec({-1.0}, {1.0}, {n});
    OracleOptions opt;
    opt.order = order;
    const auto w = solve(spec, bowl_1d(), unit_drift(), horizon, opt);
    double err = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        err = std::max(err, std::abs(w.values[i] - bowl(spec.node(i)[0] + horizon)));
    }
    return err;
}

}  // namespace

TEST(GridSpec, Geometry) {
    const GridSpec s({-1.0, 0.0}, {1.0, 2.0}, {5, 3});
    EXPECT_EQ(s.size(), 15u);
    EXPECT_DOUBLE_EQ(s.spacing(0), 0.5);
    EXPECT_DOUBLE_EQ(s.spacing(1), 1.0);
    EXPECT_EQ(s.stride(1), 5u);
    EXPECT_DOUBLE_EQ(s.cell_measure(), 0.5);
    const auto m = s.multi_index(7);
    EXPECT_EQ(m[0], 2);
    EXPECT_EQ(m[1], 1);
    EXPECT_EQ(s.node(7), Vec(Eigen::Vector2d(0.0, 1.0)));
    EXPECT_THROW(GridSpec({0.0}, {1.0}, {2}), InputError);
    EXPECT_THROW(GridSpec({0.0}, {0.0}, {5}), InputError);
    EXPECT_THROW(GridSpec({0, 0, 0, 0}, {1, 1, 1, 1}, {3, 3, 3, 3}), InputError);
}

TEST(InitField, SamplesTheLevelSetFunction) {
    const auto g = LevelSetFn::ellipsoidal(Ellipsoid::scaled_identity(Vec::Zero(2), 0.01));
    const GridSpec spec({-0.2, -0.2}, {0.2, 0.2}, {5, 5});
    const auto f = init_field(spec, g);
    EXPECT_NEAR(f.values[0], 7.0, 1e-12);
    EXPECT_NEAR(f.values[24], 7.0, 1e-12);
    EXPECT_DOUBLE_EQ(f.values[12], -1.0);
    EXPECT_NEAR(f.values[13], 0.0, 1e-12);  // (0.1, 0)
    EXPECT_EQ(f.time, 0.0);
    EXPECT_THROW(init_field(GridSpec({0.0}, {1.0}, {3}), g), InputError);
}

TEST(Hamiltonian, Examples) {
    const auto p1 = builtin("example1-linear");
    const auto sys1 = p1.control_system();
    const std::vector<double> x0{0.0, 0.0}, zero{0.0, 0.0}, up{0.0, 1.0};
    EXPECT_EQ(hamiltonian(x0, zero, sys1), 0.0);
    EXPECT_NEAR(hamiltonian(x0, up, sys1), 0.0, 1e-15);

    const auto p2 = builtin("example2-dcmotor");
    const auto sys2 = p2.control_system();
    const std::vector<double> x{0.7, 0.0, 0.0}, p{0.0, 0.0, 1.0};
    EXPECT_NEAR(hamiltonian(x, p, sys2), -100.0, 1e-12);
}

TEST(Hamiltonian, ClosedFormMatchesDenseSampling) {
    const auto p = builtin("example1-linear");
    const auto exact = p.control_system();
    // 4000 boundary inputs and no input set: minimization over the samples
    const ControlSystem sampled_sys{p.field, InputGrid::from_boundary(p.input_set, 4000), std::nullopt};
    std::mt19937 rng(3);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> x{n(rng), n(rng)}, q{n(rng), n(rng)};
        const double h = hamiltonian(x, q, exact);
        const double s = hamiltonian(x, q, sampled_sys);
        EXPECT_LE(h, s + 1e-12);
        EXPECT_NEAR(h, s, 1e-5 * (1 + std::hypot(q[0], q[1])));
    }
}

TEST(Hamiltonian, ReversedFieldNegatesTheVelocity) {
    const auto p = builtin("example2-dcmotor");
    ControlSystem sys = p.control_system();
    ControlSystem rev{p.field.reversed(), p.input_grid(), std::nullopt};
    const std::vector<double> x{1.0, 0.3, -0.2}, q{0.2, -1.0, 0.5};
    // min_u <q, -f> = -max_u <q, f>
    double mx = -1e300;
    for (std::size_t j = 0; j < sys.inputs.size(); ++j) {
        const Vec f = p.field(Eigen::Map<const Vec>(x.data(), 3), sys.inputs[j]);
        mx = std::max(mx, f.dot(Eigen::Map<const Vec>(q.data(), 3)));
    }
    EXPECT_NEAR(hamiltonian(x, q, rev), -mx, 1e-12);
}

TEST(DissipationBounds, LinearBoundsDominateSampledVelocities) {
    const auto p = builtin("example1-linear");
    const GridSpec spec({-4.0, -4.0}, {4.0, 4.0}, {21, 21});
    const auto alpha = dissipation_bounds(spec, p.control_system());
    const auto inputs = InputGrid::from_boundary(p.input_set, 200);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        for (std::size_t j = 0; j < inputs.size(); ++j) {
            const Vec f = p.field(spec.node(i), inputs[j]);
            EXPECT_LE(std::abs(f[0]), alpha[0] + 1e-12);
            EXPECT_LE(std::abs(f[1]), alpha[1] + 1e-12);
        }
    }
    EXPECT_DOUBLE_EQ(max_stable_dt(spec, {0.0, 0.0}, 0.9), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(max_stable_dt(spec, {1.0, 1.0}, 0.9), 0.9 / (2 / 0.4), 1e-15);
}

TEST(LfStep, StationaryFieldIsUnchanged) {
    const GridSpec spec({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const auto g = LevelSetFn::ellipsoidal(Ellipsoid::scaled_identity(Vec::Zero(2), 0.25));
    const auto w0 = init_field(spec, g);
    for (auto order : {SpatialOrder::first, SpatialOrder::weno5}) {
        OracleOptions opt;
        opt.order = order;
        const auto w1 = lf_step(w0, zero_system(2), 0.1, opt);
        for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(w1.values[i], w0.values[i], 1e-14);
        EXPECT_DOUBLE_EQ(w1.time, 0.1);
    }
}

TEST(LfStep, RejectsCflViolation) {
    const GridSpec spec({-1.0}, {1.0}, {21});
    const auto w0 = init_field(spec, quadratic_1d());
    // alpha = 1, h = 0.1: dt must stay below 0.09
    EXPECT_THROW(lf_step(w0, unit_drift(), 0.0901, {1.0}), CflError);
    EXPECT_NO_THROW(lf_step(w0, unit_drift(), 0.09, {1.0}));
}

TEST(LfStep, FirstOrderSchemeObeysMaximumPrinciple) {
    const auto p = builtin("example1-linear");
    const GridSpec spec({-1.0, -1.0}, {1.0, 1.0}, {41, 41});
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    GridField w{spec, std::vector<double>(spec.size()), 0.0};
    for (auto& v : w.values) v = u(rng);
    const auto sys = p.control_system();
    const auto alpha = dissipation_bounds(spec, sys);
    const double dt = max_stable_dt(spec, alpha, 0.9);
    const auto w1 = lf_step(w, sys, dt, alpha);
    // interior nodes only: the extrapolated ghosts can overshoot at the edges
    const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto m = spec.multi_index(i);
        if (m[0] == 0 || m[1] == 0 || m[0] == 40 || m[1] == 40) continue;
        EXPECT_GE(w1.values[i], *lo - 1e-12);
        EXPECT_LE(w1.values[i], *hi + 1e-12);
    }
}

TEST(Solve, ZeroHorizonReturnsTheInitialField) {
    const GridSpec spec({-1.0}, {1.0}, {11});
    SolveReport report;
    const auto w = solve(spec, quadratic_1d(), unit_drift(), 0.0, {}, &report);
    EXPECT_EQ(w.values, init_field(spec, quadratic_1d()).values);
    EXPECT_EQ(report.steps, 0u);
}

TEST(Solve, AdvectionConvergesAtFirstOrder) {
    const double e1 = max_error_advection(101, 0.1);
    const double e2 = max_error_advection(201, 0.1);
    const double e3 = max_error_advection(401, 0.1);
    EXPECT_GE(e1 / e2, 1.7);
    EXPECT_GE(e2 / e3, 1.7);
    EXPECT_LT(e3, 5e-3);
}

TEST(Solve, WenoIsMoreAccurateOnSmoothData) {
    // a Gaussian bump on a linear ramp; linear to round-off at the edges
    auto g = [](double x) { return 0.5 * x + 0.2 * std::exp(-25 * x * x); };
    const auto fn = LevelSetFn::custom("bump", 1, [&](const Eigen::Ref<const Vec>& x) { return g(x[0]); });
    const GridSpec spec({-1.0}, {1.0}, {101});
    auto error = [&](SpatialOrder order) {
        OracleOptions opt;
        opt.order = order;
        const auto w = solve(spec, fn, unit_drift(), 0.2, opt);
        double err = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) err = std::max(err, std::abs(w.values[i] - g(spec.node(i)[0] + 0.2)));
        return err;
    };
    EXPECT_LT(error(SpatialOrder::weno5), 0.1 * error(SpatialOrder::first));
}

TEST(Solve, ReportsStepsWithinCfl) {
    const GridSpec spec({-1.0}, {1.0}, {21});
    SolveReport report;
    solve(spec, quadratic_1d(), unit_drift(), 0.5, {}, &report);
    EXPECT_EQ(report.alpha, std::vector<double>{1.0});
    EXPECT_LE(report.dt * 1.0 / 0.1, 0.9 + 1e-12);
    EXPECT_NEAR(report.dt * static_cast<double>(report.steps), 0.5, 1e-12);
}

TEST(SublevelMeasure, DiscArea) {
    const auto g = LevelSetFn::ellipsoidal(Ellipsoid::scaled_identity(Vec::Zero(2), 0.01));
    const auto f = init_field(GridSpec({-0.2, -0.2}, {0.2, 0.2}, {201, 201}), g);
    EXPECT_NEAR(sublevel_measure(f), std::numbers::pi * 0.01, 0.02 * std::numbers::pi * 0.01);
}

TEST(SublevelMeasure, IntervalAndBall) {
    EXPECT_NEAR(sublevel_measure(init_field(GridSpec({-1.0}, {1.0}, {201}), quadratic_1d())), 1.0, 1e-3);
    const auto g = LevelSetFn::ellipsoidal(Ellipsoid::scaled_identity(Vec::Zero(3), 0.25));
    const auto f = init_field(GridSpec({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {61, 61, 61}), g);
    const double ball = 4.0 / 3.0 * std::numbers::pi * 0.125;
    EXPECT_NEAR(sublevel_measure(f), ball, 0.03 * ball);
}

TEST(SublevelMeasure, SignedExtremes) {
    const GridSpec spec({0.0, 0.0}, {1.0, 2.0}, {5, 5});
    GridField f{spec, std::vector<double>(spec.size(), 1.0), 0.0};
    EXPECT_EQ(sublevel_measure(f), 0.0);
    f.values.assign(spec.size(), -1.0);
    EXPECT_NEAR(sublevel_measure(f), 2.0, 1e-14);
}

TEST(Interpolate, ReproducesMultilinearData) {
    const GridSpec spec({-1.0, 0.0}, {1.0, 1.0}, {5, 7});
    const auto f = sampled(spec, [](const Vec& x) { return 2 * x[0] - 3 * x[1] + 0.5; });
    const std::vector<double> p{0.13, 0.71};
    EXPECT_NEAR(*interpolate(f, p), 2 * 0.13 - 3 * 0.71 + 0.5, 1e-14);
    EXPECT_NEAR(*gradient_norm(f, p), std::sqrt(13.0), 1e-12);
    const std::vector<double> out{1.5, 0.5};
    EXPECT_FALSE(interpolate(f, out).has_value());
}

TEST(ZeroContour, CircleWithinOneCell) {
    const GridSpec spec({-0.2, -0.2}, {0.2, 0.2}, {81, 81});
    const auto f = sampled(spec, [](const Vec& x) { return x.norm() - 0.1; });
    const auto c = zero_contour(f);
    ASSERT_FALSE(c.empty);
    ASSERT_EQ(c.polylines.size(), 1u);
    const auto& loop = c.polylines.front();
    EXPECT_EQ(loop.front(), loop.back());
    const double h = spec.spacing(0);
    for (std::size_t i = 0; i < c.vertices.size(); ++i) EXPECT_LE(std::abs(c.vertices.point(i).norm() - 0.1), h);
    EXPECT_NEAR(enclosed_area(c), std::numbers::pi * 0.01, 0.01 * std::numbers::pi * 0.01);
    EXPECT_NEAR(enclosed_area(c), sublevel_measure(f), 1e-3 * sublevel_measure(f));
}

TEST(ZeroContour, InsideIsOnTheLeft) {
    const GridSpec spec({-1.0, -1.0}, {1.0, 1.0}, {21, 21});
    const auto f = sampled(spec, [](const Vec& x) { return x.norm() - 0.5; });
    const auto c = zero_contour(f);
    const auto& loop = c.polylines.front();
    double twice = 0.0;
    for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
        const auto a = c.vertices[loop[k]], b = c.vertices[loop[k + 1]];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    EXPECT_GT(twice, 0.0);
}

TEST(ZeroContour, EmptyWhenNoSignChange) {
    const GridSpec spec({-1.0, -1.0}, {1.0, 1.0}, {11, 11});
    GridField f{spec, std::vector<double>(spec.size(), -1.0), 0.0};
    const auto c = zero_contour(f);
    EXPECT_TRUE(c.empty);
    EXPECT_TRUE(c.polylines.empty());
    EXPECT_EQ(enclosed_area(c), 0.0);
}

TEST(ZeroContour, SphereMeshIsClosed) {
    const GridSpec spec({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {21, 21, 21});
    const auto f = sampled(spec, [](const Vec& x) { return x.norm() - 0.6; });
    const auto c = zero_contour(f);
    ASSERT_FALSE(c.empty);
    ASSERT_FALSE(c.triangles.empty());
    const double h = spec.spacing(0);
    for (std::size_t i = 0; i < c.vertices.size(); ++i) EXPECT_LE(std::abs(c.vertices.point(i).norm() - 0.6), h);
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (const auto& t : c.triangles) {
        for (int e = 0; e < 3; ++e) {
            const std::size_t a = t[e], b = t[(e + 1) % 3];
            ++edges[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (const auto& [edge, uses] : edges) EXPECT_EQ(uses, 2);
}

TEST(Oracle, FirstExampleContourAgreesWithMeasure) {
    const auto p = builtin("example1-linear");
    const GridSpec spec({-4.0, -4.0}, {4.0, 4.0}, {101, 101});
    OracleOptions opt;
    opt.order = SpatialOrder::weno5;
    const auto w = solve(spec, p.terminal_function(), p.control_system(), p.horizon, opt);
    const auto c = zero_contour(w);
    ASSERT_FALSE(c.empty);
    const double m = sublevel_measure(w);
    EXPECT_NEAR(enclosed_area(c), m, 0.03 * m);
}

TEST(Oracle, ThreadCountDoesNotChangeTheField) {
    const auto p = builtin("example1-linear");
    const GridSpec spec({-4.0, -4.0}, {4.0, 4.0}, {61, 61});
    OracleOptions one, many;
    one.threads = 1;
    many.threads = 4;
    one.order = many.order = SpatialOrder::weno5;
    const auto a = solve(spec, p.terminal_function(), p.control_system(), 0.2, one);
    const auto b = solve(spec, p.terminal_function(), p.control_system(), 0.2, many);
    EXPECT_EQ(a.values, b.values);
}
