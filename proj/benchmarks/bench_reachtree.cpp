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

#include <random>

#include <benchmark/benchmark.h>

#include "reachtree/geometry.hpp"
#include "reachtree/models.hpp"
#include "reachtree/oracle.hpp"
#include "reachtree/tree.hpp"

namespace {

using namespace reachtree;

PointCloud gaussian_cloud(int dim, std::size_t n) {
    std::mt19937 rng(1);
    std::normal_distribution<double> g;
    PointCloud c(dim);
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec p(dim);
        for (auto& x : p) x = g(rng);
        c.push_back(p);
    }
    return c;
}

void BM_ConvexHull2d(benchmark::State& state) {
    const auto cloud = gaussian_cloud(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(convex_hull(cloud));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvexHull2d)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_ConvexHull3d(benchmark::State& state) {
    const auto cloud = gaussian_cloud(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(convex_hull(cloud));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvexHull3d)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_PruneHullExample1(benchmark::State& state) {
    const auto p = builtin("example1-linear");
    TreeLevel level = seed_level(p.terminal_set, p.terminal_function(), p.seeds, SeedMode::boundary);
    for (int k = 0; k < 30; ++k) level = prune_hull(expand_level(level, p.field, p.input_grid(), p.stepper)).level;
    const TreeLevel cand = expand_level(level, p.field, p.input_grid(), p.stepper);
    for (auto _ : state) benchmark::DoNotOptimize(prune_hull(cand));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cand.size()));
}
BENCHMARK(BM_PruneHullExample1)->Unit(benchmark::kMicrosecond);

void BM_ExpandLevelExample2(benchmark::State& state) {
    const auto p = builtin("example2-dcmotor");
    const TreeLevel seeds = seed_level(p.terminal_set, p.terminal_function(), 4000, SeedMode::boundary);
    TreeOptions opt;
    opt.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(expand_level(seeds, p.field, p.input_grid(), p.stepper, opt));
    state.SetItemsProcessed(state.iterations() * 8000);
}
BENCHMARK(BM_ExpandLevelExample2)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

void BM_LfStep(benchmark::State& state) {
    const auto p = builtin("example1-linear");
    const int n = static_cast<int>(state.range(0));
    const GridSpec spec({-4.0, -4.0}, {4.0, 4.0}, {n, n});
    const auto sys = p.control_system();
    const auto w = init_field(spec, p.terminal_function());
    const auto alpha = dissipation_bounds(spec, sys);
    const double dt = max_stable_dt(spec, alpha, 0.9);
    OracleOptions opt;
    opt.order = state.range(1) == 0 ? SpatialOrder::first : SpatialOrder::weno5;
    for (auto _ : state) benchmark::DoNotOptimize(lf_step(w, sys, dt, alpha, opt));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LfStep)->ArgsProduct({{100, 200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
