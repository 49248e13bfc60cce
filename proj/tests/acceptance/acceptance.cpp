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

// Acceptance checks. Each criterion prints one PASS or FAIL line; the exit
// status is non-zero when any selected criterion fails.
//
//   acceptance all
//   acceptance example1-area example2-count

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_hull.hpp"
#include "json.hpp"
#include "reachtree/app/app.hpp"
#include "reachtree/dynamics.hpp"
#include "reachtree/errors.hpp"
#include "reachtree/geometry.hpp"
#include "reachtree/models.hpp"
#include "reachtree/oracle.hpp"
#include "reachtree/tree.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace reachtree;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json run_compare(const std::string& builtin_name) {
    const fs::path out = fs::temp_directory_path() / ("reachtree_acceptance_" + builtin_name);
    fs::remove_all(out);
    std::vector<std::string> args{"reachtree", "compare", builtin_name, "--out", out.string()};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream sink;
    const int code = app::run_cli(static_cast<int>(argv.size()), argv.data(), sink, std::cerr);
    if (code != 0) throw std::runtime_error("compare " + builtin_name + " exited with " + std::to_string(code));
    std::ifstream in(out / "report.json");
    json report = json::parse(in);
    fs::remove_all(out);
    return report;
}

Verdict example1_area() {
    const auto t0 = std::chrono::steady_clock::now();
    const json r = run_compare("example1-linear");
    const double tree = r["comparison"]["tree_measure"];
    const double oracle = r["comparison"]["oracle_measure"];
    const double gap = std::abs(tree - oracle) / oracle;
    const bool ok = tree >= 7.8 && tree <= 9.3 && gap <= 0.10;
    return {ok, fmt("tree area %.4f (need [7.8, 9.3]), oracle %.4f, relative gap %.4f (need <= 0.10), %.1f s", tree,
                    oracle, gap, seconds_since(t0))};
}

Verdict example1_growth() {
    const auto p = builtin("example1-linear");
    const auto run = run_algorithm2(p.field, p.terminal_set, p.input_grid(), p.stepper, p.horizon, p.seeds, p.tree);
    const std::size_t cap = 4u * static_cast<std::size_t>(p.seeds * p.input_points);
    std::size_t largest = 0, at = 0;
    for (const auto& s : run.stats) {
        if (s.count > largest) {
            largest = s.count;
            at = s.k;
        }
    }
    const std::size_t final_count = run.final_level().size();
    const bool ok = final_count >= 400 && final_count <= 1500 && largest <= cap;
    return {ok, fmt("final level %zu nodes (need [400, 1500]), largest level %zu at k=%zu (need <= %zu)", final_count,
                    largest, at, cap)};
}

Verdict example2_volume() {
    const auto t0 = std::chrono::steady_clock::now();
    const json r = run_compare("example2-dcmotor");
    const double tree = r["comparison"]["tree_measure"];
    const double oracle = r["comparison"]["oracle_measure"];
    const double gap = std::abs(tree - oracle) / oracle;
    const bool ok = tree >= 0.85 && tree <= 1.25 && gap <= 0.15;
    // Same tree, but stepping the dynamics forward in time instead of backward.
    const auto p = builtin("example2-dcmotor");
    const auto fwd =
        run_algorithm2(p.field.reversed(), p.terminal_set, p.input_grid(), p.stepper, p.horizon, p.seeds, p.tree);
    const double fwd_volume = hull_measure(convex_hull(fwd.final_level().states));
    return {ok, fmt("tree volume %.4f (need [0.85, 1.25]), oracle %.4f, relative gap %.4f (need <= 0.15); "
                    "diagnostic: forward-time tree volume %.4f; %.1f s",
                    tree, oracle, gap, fwd_volume, seconds_since(t0))};
}

Verdict example2_count() {
    const auto p = builtin("example2-dcmotor");
    const auto run = run_algorithm2(p.field, p.terminal_set, p.input_grid(), p.stepper, p.horizon, p.seeds, p.tree);
    const std::size_t n = run.final_level().size();
    return {n >= 1500 && n <= 6500, fmt("final level %zu nodes (need [1500, 6500])", n)};
}

// Forward with u_seq, then the reversed field with the reversed sequence.
struct RoundTrip {
    double error = 0.0;
    double max_speed = 0.0;
};

RoundTrip round_trip(const FlowField& f, const Vec& x0, const std::vector<Vec>& seq, Scheme s, double dt, int refine) {
    std::vector<Vec> fine;
    for (const auto& u : seq) fine.insert(fine.end(), static_cast<std::size_t>(refine), u);
    const StepperConfig cfg(s, dt / refine);
    const auto fwd = simulate(f, x0, fine, cfg);
    const std::vector<Vec> back(fine.rbegin(), fine.rend());
    RoundTrip r;
    r.error = (simulate(f.reversed(), fwd.back(), back, cfg).back() - x0).norm();
    for (std::size_t i = 0; i < fine.size(); ++i) r.max_speed = std::max(r.max_speed, f(fwd[i], fine[i]).norm());
    return r;
}

Verdict round_trip_property() {
    constexpr int kCases = 100;
    constexpr int kSteps = 20;
    std::mt19937 rng(20260101);
    std::uniform_real_distribution<double> unit(-1, 1);
    std::normal_distribution<double> normal;
    std::string detail;
    bool ok = true;
    for (const auto& name : builtin_names()) {
        const auto p = builtin(name);
        const auto& box = p.oracle->grid;
        const int n = p.field.state_dim(), m = p.field.input_dim();
        int bound_fail = 0, euler_fail = 0, rk4_fail = 0;
        double worst_bound = 0.0, min_euler = 1e300, min_rk4 = 1e300;
        for (int c = 0; c < kCases; ++c) {
            Vec x0(n);
            for (int k = 0; k < n; ++k) {
                const double mid = 0.5 * (box.lower()[k] + box.upper()[k]);
                x0[k] = mid + 0.5 * (box.upper()[k] - box.lower()[k]) * unit(rng);
            }
            std::vector<Vec> seq;
            for (int s = 0; s < kSteps; ++s) {
                // uniform in U: direction times radius^(1/m), mapped through the shape root
                Vec w(m);
                for (int k = 0; k < m; ++k) w[k] = normal(rng);
                w *= std::pow(0.5 * (unit(rng) + 1), 1.0 / m) / w.norm();
                seq.push_back(p.input_set.center() + p.input_set.shape_sqrt() * w);
            }
            const double dt = p.stepper.dt;
            const auto e1 = round_trip(p.field, x0, seq, Scheme::euler, dt, 1);
            const auto e2 = round_trip(p.field, x0, seq, Scheme::euler, dt, 2);
            const auto r1 = round_trip(p.field, x0, seq, Scheme::rk4, dt, 1);
            const auto r2 = round_trip(p.field, x0, seq, Scheme::rk4, dt, 2);
            const double bound = 10 * dt * e1.max_speed;
            worst_bound = std::max(worst_bound, e1.error / bound);
            if (e1.error > bound) ++bound_fail;
            min_euler = std::min(min_euler, e1.error / e2.error);
            min_rk4 = std::min(min_rk4, r1.error / r2.error);
            if (!(e1.error / e2.error >= 1.9)) ++euler_fail;
            if (!(r1.error / r2.error >= 8.0)) ++rk4_fail;
        }
        ok = ok && bound_fail == 0 && euler_fail == 0 && rk4_fail == 0;
        detail += fmt("%s: worst error/bound %.3f, min halving factor euler %.2f rk4 %.2f, failures %d/%d/%d; ",
                      name.c_str(), worst_bound, min_euler, min_rk4, bound_fail, euler_fail, rk4_fail);
    }
    return {ok, detail + fmt("%d cases per model, %d steps of the builtin dt", kCases, kSteps)};
}

Verdict hull_equivalence() {
    constexpr int kClouds = 200;
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> count(3, 12), lattice(0, 5);
    std::uniform_real_distribution<double> u(-1, 1);
    int mismatched = 0, degenerate = 0;
    double worst = 0.0;
    for (int c = 0; c < kClouds; ++c) {
        const int n = count(rng);
        std::vector<testing::Point2> pts;
        PointCloud cloud(2);
        for (int i = 0; i < n; ++i) {
            // every fourth cloud sits on a lattice: ties, collinear runs and duplicates
            const testing::Point2 q = c % 4 == 0 ? testing::Point2{double(lattice(rng)), double(lattice(rng))}
                                                 : testing::Point2{u(rng), u(rng)};
            pts.push_back(q);
            cloud.push_back(std::vector<double>{q.x, q.y});
        }
        const auto brute = testing::brute_hull_2d(pts);
        if (brute.boundary.size() < 3) {
            ++degenerate;
            try {
                convex_hull(cloud);
                ++mismatched;
            } catch (const DegenerateHullError&) {
            }
            continue;
        }
        const Hull h = convex_hull(cloud);
        std::set<std::pair<double, double>> want, got;
        for (std::size_t i : brute.boundary) want.insert({pts[i].x, pts[i].y});
        for (std::size_t i = 0; i < h.vertices().size(); ++i) got.insert({h.vertices()[i][0], h.vertices()[i][1]});
        const double rel = std::abs(hull_measure(h) - brute.area) / brute.area;
        worst = std::max(worst, rel);
        if (want != got || rel > 1e-12) ++mismatched;
    }
    return {mismatched == 0, fmt("%d clouds (%d degenerate), %d mismatches, worst area error %.2e (need <= 1e-12)",
                                 kClouds, degenerate, mismatched, worst)};
}

Verdict pruning_invariance() {
    const auto p = builtin("example1-linear");
    const auto inputs = p.input_grid();
    TreeLevel level = seed_level(p.terminal_set, p.terminal_function(), p.seeds, SeedMode::boundary);
    const std::size_t steps = step_count(p.horizon, p.stepper.dt);
    double worst = 0.0;
    std::size_t dropped = 0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const TreeLevel cand = expand_level(level, p.field, inputs, p.stepper, p.tree);
        auto pruned = prune_hull(cand, p.tree);
        const double before = hull_measure(convex_hull(cand.states));
        const double after = hull_measure(convex_hull(pruned.level.states));
        worst = std::max(worst, std::abs(before - after) / before);
        dropped += cand.size() - pruned.level.size();
        level = std::move(pruned.level);
    }
    return {worst <= 1e-12, fmt("%zu levels, %zu nodes pruned in total, worst relative change %.2e (need <= 1e-12)",
                                steps, dropped, worst)};
}

Verdict convex_containment() {
    constexpr int kSamples = 500;
    const auto p = builtin("example1-linear");
    const auto reach = app::run_reach(p, app::ReachFlags{});
    const auto oracle = app::run_oracle(p);
    const Hull& hull = *reach.hull;
    const double h = oracle.field.spec.spacing(0);

    std::vector<double> lo(2, 1e300), hi(2, -1e300);
    for (std::size_t i = 0; i < hull.vertices().size(); ++i) {
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], hull.vertices()[i][k]);
            hi[k] = std::max(hi[k], hull.vertices()[i][k]);
        }
    }
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ux(lo[0], hi[0]), uy(lo[1], hi[1]);
    int inside = 0, passed = 0;
    double worst = -1e300;
    while (inside < kSamples) {
        const std::vector<double> x{ux(rng), uy(rng)};
        if (hull.signed_distance(x) > 0.0) continue;
        ++inside;
        const auto w = interpolate(oracle.field, x);
        const auto g = gradient_norm(oracle.field, x);
        if (!w || !g) continue;
        const double allowance = 2 * h * *g;
        worst = std::max(worst, *w - allowance);
        if (*w <= allowance) ++passed;
    }
    const double rate = static_cast<double>(passed) / kSamples;
    return {rate >= 0.95, fmt("%d/%d samples with w <= 2h|grad w| (rate %.3f, need >= 0.95), h = %.4f, worst excess %.3g",
                              passed, kSamples, rate, h, worst)};
}

// w_t = w_x from a quadratic bowl continued linearly beyond |x| = 1/2; the
// exact solution is g(x + t).
double bowl(double x) { return std::abs(x) <= 0.5 ? x * x - 0.25 : std::abs(x) - 0.5; }

Verdict fd_convergence() {
    const ControlSystem drift{FlowField::constant(Vec::Ones(1), 1), InputGrid::from_points({Vec::Zero(1)}),
                              std::nullopt};
    const auto g = LevelSetFn::custom("bowl", 1, [](const Eigen::Ref<const Vec>& x) { return bowl(x[0]); });
    const double horizon = 0.1;
    std::vector<double> errors;
    for (int n : {101, 201, 401, 801}) {
        const GridSpec spec({-1.0}, {1.0}, {n});
        OracleOptions opt;
        opt.order = SpatialOrder::first;
        const auto w = solve(spec, g, drift, horizon, opt);
        double err = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            err = std::max(err, std::abs(w.values[i] - bowl(spec.node(i)[0] + horizon)));
        }
        errors.push_back(err);
    }
    bool ok = true;
    std::string detail = "L-inf errors";
    for (double e : errors) detail += fmt(" %.3e", e);
    detail += "; halving factors";
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double f = errors[i - 1] / errors[i];
        ok = ok && f >= 1.7;
        detail += fmt(" %.2f", f);
    }
    return {ok, detail + " (need >= 1.7)"};
}

Verdict alg1_alg2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = builtin("example1-linear");
    const double horizon = 5 * p.stepper.dt;
    TreeOptions opt = p.tree;
    opt.level_cap = 20'000'000;
    const auto full = run_algorithm1(p.step_context(), p.terminal_set, horizon, p.seeds,
                                     std::numeric_limits<double>::infinity(), opt);
    const auto& last = full.final_level();
    PointCloud kept(2);
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (last.values[i] <= 0.0) kept.push_back(last.states[i]);
    }
    const double m1 = hull_measure(convex_hull(kept));
    const auto pruned = run_algorithm2(p.field, p.terminal_set, p.input_grid(), p.stepper, horizon, p.seeds, opt);
    const double m2 = hull_measure(convex_hull(pruned.final_level().states));
    const double gap = std::abs(m1 - m2) / m2;
    return {gap <= 0.02, fmt("full tree %zu nodes (%zu with value <= 0), hull %.6f; pruned tree %zu nodes, hull %.6f; "
                             "relative gap %.2e (need <= 0.02); %.1f s",
                             last.size(), kept.size(), m1, pruned.final_level().size(), m2, gap, seconds_since(t0))};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Verdict()>>> all{
        {"example1-area", example1_area},
        {"example1-growth", example1_growth},
        {"example2-volume", example2_volume},
        {"example2-count", example2_count},
        {"round-trip", round_trip_property},
        {"hull-equivalence", hull_equivalence},
        {"pruning-invariance", pruning_invariance},
        {"convex-containment", convex_containment},
        {"fd-convergence", fd_convergence},
        {"alg1-alg2", alg1_alg2},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all")) {
        wanted.clear();
        for (const auto& [name, fn] : criteria()) wanted.push_back(name);
    }
    if (wanted.size() == 1 && wanted[0] == "--list") {
        for (const auto& [name, fn] : criteria()) std::cout << name << '\n';
        return 0;
    }
    int failures = 0;
    for (const auto& name : wanted) {
        const auto it = std::find_if(criteria().begin(), criteria().end(), [&](const auto& c) { return c.first == name; });
        if (it == criteria().end()) {
            std::cerr << "unknown criterion '" << name << "' (try --list)\n";
            return 2;
        }
        Verdict v;
        try {
            v = it->second();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
        if (!v.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
