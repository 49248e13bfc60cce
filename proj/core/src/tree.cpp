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

#include "reachtree/tree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "reachtree/errors.hpp"
#include "reachtree/parallel.hpp"
#include "reachtree/spatial_index.hpp"

namespace reachtree {

namespace {

constexpr int kMaxSmall = 8;
using SVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxSmall, 1>;
constexpr double kInputSlack = 1e-9;
constexpr double kSeedZeroTol = 1e-12;

std::span<const double> as_span(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Query geometry and membership predicate for "x' in R_1(x)".
class OneStepReach {
public:
    OneStepReach(const StepContext& ctx, const TreeOptions& options)
        : ctx_(ctx), tol_rel_(options.tol_reach_rel), dim_(ctx.field.state_dim()) {
        if (ctx.field.input_dim() != ctx.input_set.dim()) {
            throw InputError("one-step reachability: input set dimension differs from the field's input dimension");
        }
        if (dim_ > KdTree::kMaxDim || ctx.field.input_dim() > kMaxSmall) {
            throw CapabilityError("one-step reachability: state dim <= 3 and input dim <= 8 supported");
        }
        const Mat* a = ctx.field.a_matrix();
        linear_ = a != nullptr && ctx.stepper.scheme == Scheme::euler && !ctx.field.is_reversed();
        if (linear_) {
            a_ = *a;
            b_ = *ctx.field.b_matrix();
            b_pinv_ = Eigen::CompleteOrthogonalDecomposition<Mat>(b_).pseudoInverse();
            const Mat bqb = b_ * ctx.input_set.shape() * b_.transpose();
            half_width_ = ctx.stepper.dt * bqb.diagonal().cwiseMax(0.0).cwiseSqrt();
            bq_ = b_ * ctx.input_set.center();
        }
    }

    double tol(std::span<const double> x) const {
        double n2 = 0.0;
        for (double c : x) n2 += c * c;
        return tol_rel_ * (1.0 + std::sqrt(n2));
    }

    // Calls fn(lo, hi) for each box that contains every member.
    template <typename Fn>
    void boxes(std::span<const double> x, Fn&& fn) const {
        const double tx = tol(x);
        std::array<double, 3> lo{}, hi{};
        const auto d = static_cast<std::size_t>(dim_);
        if (linear_) {
            const double dt = ctx_.stepper.dt;
            for (std::size_t i = 0; i < d; ++i) {
                double ax = 0.0;
                for (std::size_t j = 0; j < d; ++j) ax += a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
                const double c = x[i] + dt * (ax + bq_[static_cast<Eigen::Index>(i)]);
                lo[i] = c - half_width_[static_cast<Eigen::Index>(i)] - tx;
                hi[i] = c + half_width_[static_cast<Eigen::Index>(i)] + tx;
            }
            fn(std::span<const double>(lo.data(), d), std::span<const double>(hi.data(), d));
            return;
        }
        std::array<double, 3> p{};
        for (std::size_t j = 0; j < ctx_.inputs.size(); ++j) {
            step(ctx_.field, x, as_span(ctx_.inputs[j]), ctx_.stepper, std::span<double>(p.data(), d));
            for (std::size_t i = 0; i < d; ++i) {
                lo[i] = p[i] - tx;
                hi[i] = p[i] + tx;
            }
            fn(std::span<const double>(lo.data(), d), std::span<const double>(hi.data(), d));
        }
    }

    bool is_member(std::span<const double> x, std::span<const double> target) const {
        const double tx = tol(x);
        const auto d = static_cast<std::size_t>(dim_);
        if (linear_) {
            const double dt = ctx_.stepper.dt;
            SVec r(dim_);
            for (std::size_t i = 0; i < d; ++i) {
                double ax = 0.0;
                for (std::size_t j = 0; j < d; ++j) ax += a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
                r[static_cast<Eigen::Index>(i)] = (target[i] - x[i] - dt * ax) / dt;
            }
            const SVec u = b_pinv_ * r;
            const double residual = dt * (b_ * u - r).norm();
            if (residual > tx) return false;
            return ctx_.input_set.quadratic_form(Vec(u)) <= 1.0 + kInputSlack;
        }
        std::array<double, 3> p{};
        for (std::size_t j = 0; j < ctx_.inputs.size(); ++j) {
            step(ctx_.field, x, as_span(ctx_.inputs[j]), ctx_.stepper, std::span<double>(p.data(), d));
            double d2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) d2 += (p[i] - target[i]) * (p[i] - target[i]);
            if (std::sqrt(d2) <= tx) return true;
        }
        return false;
    }

private:
    const StepContext& ctx_;
    double tol_rel_;
    int dim_;
    bool linear_ = false;
    Mat a_, b_, b_pinv_;
    Vec half_width_, bq_;
};

TreeLevel dedup_level(TreeLevel level, double rel) {
    const double tol = rel * bbox_diagonal(level.states);
    auto keep = unique_point_indices(level.states, tol);
    if (keep.size() == level.size()) return level;
    TreeLevel out = level.subset(keep);
    out.generated = level.generated;
    return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Node TreeLevel::node(std::size_t i) const {
    Node n;
    n.state = states.point(i);
    if (has_values()) n.value = values[i];
    if (i < parents.size() && parents[i] != kNone) n.parent = static_cast<std::size_t>(parents[i]);
    if (i < input_indices.size() && input_indices[i] != kNone) {
        n.input_index = static_cast<std::size_t>(input_indices[i]);
    }
    return n;
}

TreeLevel TreeLevel::subset(const std::vector<std::size_t>& keep) const {
    TreeLevel out;
    out.k = k;
    out.t = t;
    out.generated = generated;
    out.states = PointCloud(states.dim());
    out.states.reserve(keep.size());
    out.parents.reserve(keep.size());
    out.input_indices.reserve(keep.size());
    if (has_values()) out.values.reserve(keep.size());
    for (std::size_t i : keep) {
        out.states.push_back(states[i]);
        out.parents.push_back(parents[i]);
        out.input_indices.push_back(input_indices[i]);
        if (has_values()) out.values.push_back(values[i]);
    }
    return out;
}

TreeLevel seed_level(const Ellipsoid& terminal, const LevelSetFn& g, int n0, SeedMode mode, int interior_layers) {
    if (g.dim() != terminal.dim()) throw InputError("seed_level: level-set function and terminal set differ in dimension");
    if (interior_layers < 0) throw InputError("seed_level: interior_layers must be >= 0");
    const auto boundary = discretize_boundary(terminal, n0);

    TreeLevel level;
    level.states = PointCloud(terminal.dim());
    for (const auto& p : boundary) level.states.push_back(p);
    if (mode == SeedMode::filled) {
        level.states.push_back(terminal.center());
        for (int layer = 1; layer <= interior_layers; ++layer) {
            const double s = static_cast<double>(layer) / (interior_layers + 1);
            for (const auto& p : boundary) level.states.push_back(Vec(terminal.center() + s * (p - terminal.center())));
        }
        level.values.reserve(level.size());
        for (std::size_t i = 0; i < level.size(); ++i) {
            double v = g(level.states.point(i));
            // boundary seeds lie on the zero level set; drop the round-off
            if (i < boundary.size() && std::abs(v) <= kSeedZeroTol) v = 0.0;
            level.values.push_back(v);
        }
    }
    level.parents.assign(level.size(), TreeLevel::kNone);
    level.input_indices.assign(level.size(), TreeLevel::kNone);
    level.generated = level.size();
    return level;
}

TreeLevel expand_level(const TreeLevel& level, const FlowField& f, const InputGrid& inputs, const StepperConfig& cfg,
                       const TreeOptions& options) {
    if (level.empty()) throw InputError("expand_level: empty level");
    if (level.states.dim() != f.state_dim() || inputs.dim() != f.input_dim()) {
        throw InputError("expand_level: level, field and input grid dimensions disagree");
    }
    const std::size_t n_prev = level.size();
    const std::size_t n_u = inputs.size();
    const std::size_t total = n_prev * n_u;
    if (total > options.level_cap) {
        std::ostringstream os;
        os << "level " << level.k + 1 << " would hold " << total << " candidates, above the cap of "
           << options.level_cap;
        throw CapacityError(os.str());
    }

    TreeLevel out;
    out.k = level.k + 1;
    out.states = PointCloud(level.states.dim());
    out.states.resize(total);
    out.parents.resize(total);
    out.input_indices.resize(total);
    out.generated = total;

    const FlowField backward = f.reversed();
    parallel_for(n_prev, options.threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < n_u; ++j) {
            const std::size_t c = i * n_u + j;
            try {
                step(backward, level.states[i], as_span(inputs[j]), cfg, out.states[c]);
            } catch (const NumericError& e) {
                std::ostringstream os;
                os << e.what() << " while expanding node " << i << " of level " << level.k << " with input " << j;
                throw NumericError(os.str(), level.k + 1, i);
            }
            out.parents[c] = static_cast<std::int64_t>(i);
            out.input_indices[c] = static_cast<std::int32_t>(j);
        }
    });
    return dedup_level(std::move(out), options.dedup_rel);
}

std::vector<std::size_t> one_step_reachable_members(const Vec& x, const TreeLevel& prev, const StepContext& ctx,
                                                    std::optional<std::size_t> parent, const TreeOptions& options) {
    if (prev.empty()) throw InputError("one_step_reachable_members: empty previous level");
    if (x.size() != prev.states.dim()) throw InputError("one_step_reachable_members: dimension mismatch");
    const OneStepReach reach(ctx, options);
    const KdTree index(prev.states);
    const auto xs = as_span(x);

    std::vector<std::size_t> members;
    reach.boxes(xs, [&](std::span<const double> lo, std::span<const double> hi) {
        index.for_each_in_box(lo, hi, [&](std::size_t i) {
            if (reach.is_member(xs, prev.states[i])) members.push_back(i);
        });
    });
    if (parent) {
        if (*parent >= prev.size()) throw InputError("one_step_reachable_members: parent index out of range");
        members.push_back(*parent);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) {
        throw ConsistencyError("one-step reachable set of a node is empty within the previous level");
    }
    return members;
}

TreeLevel propagate_values(TreeLevel candidates, const TreeLevel& prev, const StepContext& ctx,
                           const TreeOptions& options) {
    if (!prev.has_values()) throw InputError("propagate_values: previous level carries no values");
    const OneStepReach reach(ctx, options);
    const KdTree index(prev.states, prev.values);
    candidates.values.assign(candidates.size(), 0.0);

    parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
        const auto x = candidates.states[i];
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        const std::int64_t parent = i < candidates.parents.size() ? candidates.parents[i] : TreeLevel::kNone;
        if (parent != TreeLevel::kNone) {
            best = prev.values[static_cast<std::size_t>(parent)];
            found = true;
        }
        reach.boxes(x, [&](std::span<const double> lo, std::span<const double> hi) {
            const auto v = index.min_value_in_box(
                lo, hi, [&](std::size_t j) { return reach.is_member(x, prev.states[j]); }, best);
            if (v) {
                best = *v;
                found = true;
            }
        });
        if (!found) {
            std::ostringstream os;
            os << "candidate " << i << " of level " << candidates.k << " reaches no node of the previous level";
            throw ConsistencyError(os.str());
        }
        candidates.values[i] = best;
    });
    return candidates;
}

PruneNegativeResult prune_negative(const TreeLevel& level, double eps) {
    if (!level.has_values()) throw InputError("prune_negative: level carries no values");
    if (eps < 0.0) throw InputError("prune_negative: eps must be >= 0");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (!(level.values[i] < -eps)) keep.push_back(i);
    }
    PruneNegativeResult r;
    if (keep.empty() && !level.empty()) {
        const double top = *std::max_element(level.values.begin(), level.values.end());
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (level.values[i] == top) keep.push_back(i);
        }
        r.kept_maximal = true;
    }
    r.level = keep.size() == level.size() ? level : level.subset(keep);
    return r;
}

PruneHullResult prune_hull(const TreeLevel& level, const TreeOptions& options) {
    PruneHullResult r;
    try {
        const Hull hull = convex_hull(level.states);
        const double tol = options.tol_hull_rel * bbox_diagonal(level.states);
        const auto cls = classify_points(hull, level.states, tol, options.threads);
        std::vector<std::size_t> keep;
        keep.reserve(cls.vertices + cls.boundary_interior);
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (cls.on_boundary(i)) keep.push_back(i);
        }
        r.level = level.subset(keep);
        r.candidate_measure = hull_measure(hull);
    } catch (const DegenerateHullError&) {
        r.level = level;
        r.degenerate = true;
    }
    return r;
}

std::size_t step_count(double horizon, double dt) {
    if (!(dt > 0.0)) throw InputError("step_count: dt must be > 0");
    if (!(horizon >= 0.0)) throw InputError("step_count: horizon must be >= 0");
    const double ratio = horizon / dt;
    return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

ReachRun run_algorithm2(const FlowField& f, const Ellipsoid& terminal, const InputGrid& inputs,
                        const StepperConfig& cfg, double horizon, int n0, const TreeOptions& options) {
    if (terminal.dim() != f.state_dim()) throw InputError("run_algorithm2: terminal set and field differ in dimension");
    ReachRun run;
    run.steps = step_count(horizon, cfg.dt);

    auto t0 = std::chrono::steady_clock::now();
    TreeLevel current = seed_level(terminal, LevelSetFn::ellipsoidal(terminal), n0, SeedMode::boundary);
    current.t = horizon;
    run.stats.push_back({0, horizon, current.generated, current.size(), ms_since(t0), false});
    if (options.keep_levels) run.levels.push_back(current);

    for (std::size_t k = 1; k <= run.steps; ++k) {
        t0 = std::chrono::steady_clock::now();
        TreeLevel candidates = expand_level(current, f, inputs, cfg, options);
        candidates.k = k;
        candidates.t = horizon - static_cast<double>(k) * cfg.dt;
        auto pruned = prune_hull(candidates, options);
        if (pruned.degenerate) {
            run.events.push_back("level " + std::to_string(k) + ": degenerate hull, all nodes kept");
        }
        current = std::move(pruned.level);
        run.stats.push_back({k, current.t, current.generated, current.size(), ms_since(t0), pruned.degenerate});
        if (options.keep_levels) run.levels.push_back(current);
    }
    if (!options.keep_levels) run.levels.push_back(std::move(current));
    return run;
}

ReachRun run_algorithm1(const StepContext& ctx, const Ellipsoid& terminal, double horizon, int n0, double eps,
                        const TreeOptions& options) {
    if (terminal.dim() != ctx.field.state_dim()) {
        throw InputError("run_algorithm1: terminal set and field differ in dimension");
    }
    ReachRun run;
    run.steps = step_count(horizon, ctx.stepper.dt);

    auto t0 = std::chrono::steady_clock::now();
    TreeLevel current =
        seed_level(terminal, LevelSetFn::ellipsoidal(terminal), n0, SeedMode::filled, options.interior_layers);
    current.t = horizon;
    run.stats.push_back({0, horizon, current.generated, current.size(), ms_since(t0), false});
    if (options.keep_levels) run.levels.push_back(current);

    for (std::size_t k = 1; k <= run.steps; ++k) {
        t0 = std::chrono::steady_clock::now();
        TreeLevel candidates = expand_level(current, ctx.field, ctx.inputs, ctx.stepper, options);
        candidates.k = k;
        candidates.t = horizon - static_cast<double>(k) * ctx.stepper.dt;
        candidates = propagate_values(std::move(candidates), current, ctx, options);
        if (std::isfinite(eps)) {
            auto pruned = prune_negative(candidates, eps);
            if (pruned.kept_maximal) {
                run.events.push_back("level " + std::to_string(k) +
                                     ": every node below -eps, kept the maximal-valued nodes");
            }
            candidates = std::move(pruned.level);
        }
        current = std::move(candidates);
        run.stats.push_back({k, current.t, current.generated, current.size(), ms_since(t0), false});
        if (options.keep_levels) run.levels.push_back(current);
    }
    if (!options.keep_levels) run.levels.push_back(std::move(current));
    return run;
}

std::vector<std::size_t> input_chain(const ReachRun& run, std::size_t i) {
    if (run.levels.size() != run.steps + 1) throw InputError("input_chain: run was not made with keep_levels");
    std::vector<std::size_t> chain;
    for (std::size_t k = run.levels.size() - 1; k > 0; --k) {
        const TreeLevel& level = run.levels[k];
        if (i >= level.size()) throw InputError("input_chain: node index out of range");
        chain.push_back(static_cast<std::size_t>(level.input_indices[i]));
        i = static_cast<std::size_t>(level.parents[i]);
    }
    return chain;
}

}  // namespace reachtree
