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

#include "reachtree/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "reachtree/errors.hpp"
#include "reachtree/parallel.hpp"

namespace reachtree {

GridSpec::GridSpec(std::vector<double> lower, std::vector<double> upper, std::vector<int> counts)
    : lower_(std::move(lower)), upper_(std::move(upper)), counts_(std::move(counts)) {
    const std::size_t d = counts_.size();
    if (d < 1 || d > 3) throw InputError("grid: 1 to 3 axes supported");
    if (lower_.size() != d || upper_.size() != d) throw InputError("grid: bounds and counts differ in length");
    size_ = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (!(upper_[a] > lower_[a])) throw InputError("grid: upper bound must exceed lower bound on every axis");
        if (counts_[a] < 3) throw InputError("grid: at least 3 nodes per axis");
        h_.push_back((upper_[a] - lower_[a]) / (counts_[a] - 1));
        stride_.push_back(size_);
        size_ *= static_cast<std::size_t>(counts_[a]);
    }
}

double GridSpec::coordinate(int axis, int index) const {
    const auto a = static_cast<std::size_t>(axis);
    return index == counts_[a] - 1 ? upper_[a] : lower_[a] + index * h_[a];
}

std::array<int, 3> GridSpec::multi_index(std::size_t flat) const {
    std::array<int, 3> idx{};
    for (std::size_t a = 0; a < counts_.size(); ++a) {
        const auto n = static_cast<std::size_t>(counts_[a]);
        idx[a] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

void GridSpec::node(std::size_t flat, std::span<double> out) const {
    const auto idx = multi_index(flat);
    for (int a = 0; a < dim(); ++a) out[static_cast<std::size_t>(a)] = coordinate(a, idx[static_cast<std::size_t>(a)]);
}

Vec GridSpec::node(std::size_t flat) const {
    Vec x(dim());
    node(flat, std::span<double>(x.data(), static_cast<std::size_t>(dim())));
    return x;
}

double GridSpec::cell_measure() const {
    double m = 1.0;
    for (double h : h_) m *= h;
    return m;
}

const char* to_string(SpatialOrder o) { return o == SpatialOrder::first ? "first" : "weno5"; }

SpatialOrder spatial_order_from_string(const std::string& s) {
    if (s == "first") return SpatialOrder::first;
    if (s == "weno5") return SpatialOrder::weno5;
    throw ConfigError("unknown spatial order '" + s + "' (expected first or weno5)");
}

namespace {

// Evaluates H(x, p) with everything hoisted out of the per-node loop.
class HamiltonianEval {
public:
    explicit HamiltonianEval(const ControlSystem& sys) : sys_(sys), n_(sys.field.state_dim()) {
        if (sys.inputs.dim() != sys.field.input_dim()) {
            throw InputError("hamiltonian: input grid and field differ in input dimension");
        }
        if (n_ > 3) throw CapabilityError("hamiltonian: state dimension above 3");
        const Mat* a = sys.field.a_matrix();
        closed_form_ = a != nullptr && sys.input_set.has_value() && !sys.field.is_reversed();
        if (closed_form_) {
            if (sys.input_set->dim() != sys.field.input_dim()) {
                throw InputError("hamiltonian: input set and field differ in input dimension");
            }
            a_ = *a;
            b_ = *sys.field.b_matrix();
            q_ = sys.input_set->center();
            s_bt_ = sys.input_set->shape_sqrt() * b_.transpose();
        }
    }

    bool closed_form() const { return closed_form_; }

    double operator()(std::span<const double> x, std::span<const double> p) const {
        if (closed_form_) {
            double h = 0.0;
            for (int i = 0; i < n_; ++i) {
                double ax = 0.0;
                for (int j = 0; j < n_; ++j) ax += a_(i, j) * x[static_cast<std::size_t>(j)];
                h += p[static_cast<std::size_t>(i)] * ax;
            }
            const auto m = b_.cols();
            double norm2 = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                double btp = 0.0;
                for (int i = 0; i < n_; ++i) btp += b_(i, k) * p[static_cast<std::size_t>(i)];
                h += btp * q_[k];
            }
            for (Eigen::Index r = 0; r < s_bt_.rows(); ++r) {
                double v = 0.0;
                for (int i = 0; i < n_; ++i) v += s_bt_(r, i) * p[static_cast<std::size_t>(i)];
                norm2 += v * v;
            }
            return h - std::sqrt(norm2);
        }
        std::array<double, 3> dx{};
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sys_.inputs.size(); ++j) {
            const Vec& u = sys_.inputs[j];
            sys_.field.evaluate(x, {u.data(), static_cast<std::size_t>(u.size())},
                                std::span<double>(dx.data(), static_cast<std::size_t>(n_)));
            double v = 0.0;
            for (int i = 0; i < n_; ++i) v += p[static_cast<std::size_t>(i)] * dx[static_cast<std::size_t>(i)];
            best = std::min(best, v);
        }
        return best;
    }

private:
    const ControlSystem& sys_;
    int n_;
    bool closed_form_ = false;
    Mat a_, b_, s_bt_;
    Vec q_;
};

std::size_t line_base(const GridSpec& spec, int axis, std::size_t line) {
    std::size_t base = 0;
    for (int a = 0; a < spec.dim(); ++a) {
        if (a == axis) continue;
        const auto n = static_cast<std::size_t>(spec.counts()[static_cast<std::size_t>(a)]);
        base += (line % n) * spec.stride(a);
        line /= n;
    }
    return base;
}

double weno5(double v1, double v2, double v3, double v4, double v5) {
    const double p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    const double p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    const double p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    const double s1 = 13.0 / 12.0 * (v1 - 2 * v2 + v3) * (v1 - 2 * v2 + v3) + 0.25 * (v1 - 4 * v2 + 3 * v3) * (v1 - 4 * v2 + 3 * v3);
    const double s2 = 13.0 / 12.0 * (v2 - 2 * v3 + v4) * (v2 - 2 * v3 + v4) + 0.25 * (v2 - v4) * (v2 - v4);
    const double s3 = 13.0 / 12.0 * (v3 - 2 * v4 + v5) * (v3 - 2 * v4 + v5) + 0.25 * (3 * v3 - 4 * v4 + v5) * (3 * v3 - 4 * v4 + v5);
    const double eps = 1e-6 * std::max({v1 * v1, v2 * v2, v3 * v3, v4 * v4, v5 * v5}) + 1e-99;
    const double a1 = 0.1 / ((s1 + eps) * (s1 + eps));
    const double a2 = 0.6 / ((s2 + eps) * (s2 + eps));
    const double a3 = 0.3 / ((s3 + eps) * (s3 + eps));
    return (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3);
}

// Reusable buffers for evaluating the right-hand side L(w).
class RateEvaluator {
public:
    RateEvaluator(const GridSpec& spec, const ControlSystem& sys, const std::vector<double>& alpha,
                  const OracleOptions& options)
        : spec_(spec), ham_(sys), alpha_(alpha), options_(options) {
        const auto d = static_cast<std::size_t>(spec.dim());
        if (alpha.size() != d) throw InputError("lf_step: alpha must have one entry per axis");
        if (sys.field.state_dim() != spec.dim()) throw InputError("lf_step: grid and field differ in dimension");
        dm_.assign(d, std::vector<double>(spec.size()));
        dp_.assign(d, std::vector<double>(spec.size()));
    }

    void rate(const std::vector<double>& w, std::vector<double>& out) {
        for (int a = 0; a < spec_.dim(); ++a) derivatives(w, a);
        out.resize(w.size());
        const auto d = static_cast<std::size_t>(spec_.dim());
        parallel_for_chunks(w.size(), options_.threads, [&](std::size_t begin, std::size_t end) {
            std::array<double, 3> x{}, p{};
            for (std::size_t i = begin; i < end; ++i) {
                spec_.node(i, std::span<double>(x.data(), d));
                double diss = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    p[a] = 0.5 * (dm_[a][i] + dp_[a][i]);
                    diss += alpha_[a] * 0.5 * (dp_[a][i] - dm_[a][i]);
                }
                out[i] = ham_(std::span<const double>(x.data(), d), std::span<const double>(p.data(), d)) + diss;
            }
        });
    }

private:
    void derivatives(const std::vector<double>& w, int axis) {
        const std::size_t n = static_cast<std::size_t>(spec_.counts()[static_cast<std::size_t>(axis)]);
        const std::size_t lines = spec_.size() / n;
        const std::size_t s = spec_.stride(axis);
        const double h = spec_.spacing(axis);
        const bool high = options_.order == SpatialOrder::weno5;
        const std::size_t g = high ? 3 : 1;
        auto& dm = dm_[static_cast<std::size_t>(axis)];
        auto& dp = dp_[static_cast<std::size_t>(axis)];
        parallel_for_chunks(lines, options_.threads, [&](std::size_t begin, std::size_t end) {
            std::vector<double> ext(n + 2 * g), diff(n + 2 * g - 1);
            for (std::size_t line = begin; line < end; ++line) {
                const std::size_t base = line_base(spec_, axis, line);
                for (std::size_t i = 0; i < n; ++i) ext[g + i] = w[base + i * s];
                const double lo_slope = ext[g + 1] - ext[g];
                const double hi_slope = ext[g + n - 1] - ext[g + n - 2];
                for (std::size_t k = 1; k <= g; ++k) {
                    ext[g - k] = ext[g] - static_cast<double>(k) * lo_slope;
                    ext[g + n - 1 + k] = ext[g + n - 1] + static_cast<double>(k) * hi_slope;
                }
                for (std::size_t j = 0; j + 1 < ext.size(); ++j) diff[j] = (ext[j + 1] - ext[j]) / h;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t e = g + i;
                    const std::size_t flat = base + i * s;
                    if (high) {
                        dm[flat] = weno5(diff[e - 3], diff[e - 2], diff[e - 1], diff[e], diff[e + 1]);
                        dp[flat] = weno5(diff[e + 2], diff[e + 1], diff[e], diff[e - 1], diff[e - 2]);
                    } else {
                        dm[flat] = diff[e - 1];
                        dp[flat] = diff[e];
                    }
                }
            }
        });
    }

    const GridSpec& spec_;
    HamiltonianEval ham_;
    const std::vector<double>& alpha_;
    const OracleOptions& options_;
    std::vector<std::vector<double>> dm_, dp_;
};

void check_cfl(const GridSpec& spec, const std::vector<double>& alpha, double dt, double cfl) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("lf_step: dt must be positive and finite");
    if (!(cfl > 0.0)) throw ConfigError("lf_step: cfl must be positive");
    double s = 0.0;
    for (int a = 0; a < spec.dim(); ++a) s += alpha[static_cast<std::size_t>(a)] / spec.spacing(a);
    if (dt * s > cfl * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "CFL violated: dt * sum(alpha / h) = " << dt * s << " > " << cfl;
        throw CflError(os.str());
    }
}

void check_finite(const std::vector<double>& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i])) {
            throw NumericError("oracle: non-finite value at grid node " + std::to_string(i), std::nullopt, i);
        }
    }
}

// Advances w in place by one step of the chosen scheme.
class Integrator {
public:
    Integrator(const GridSpec& spec, const ControlSystem& sys, const std::vector<double>& alpha,
               const OracleOptions& options)
        : rate_(spec, sys, alpha, options), options_(options) {}

    void advance(std::vector<double>& w, double dt) {
        const unsigned th = options_.threads;
        if (options_.order == SpatialOrder::first) {
            rate_.rate(w, l_);
            parallel_for(w.size(), th, [&](std::size_t i) { w[i] += dt * l_[i]; });
            return;
        }
        // TVD-RK3
        rate_.rate(w, l_);
        w1_.resize(w.size());
        parallel_for(w.size(), th, [&](std::size_t i) { w1_[i] = w[i] + dt * l_[i]; });
        rate_.rate(w1_, l_);
        parallel_for(w.size(), th, [&](std::size_t i) { w1_[i] = 0.75 * w[i] + 0.25 * (w1_[i] + dt * l_[i]); });
        rate_.rate(w1_, l_);
        parallel_for(w.size(), th, [&](std::size_t i) { w[i] = w[i] / 3.0 + 2.0 / 3.0 * (w1_[i] + dt * l_[i]); });
    }

private:
    RateEvaluator rate_;
    const OracleOptions& options_;
    std::vector<double> l_, w1_;
};

}  // namespace

GridField init_field(const GridSpec& spec, const LevelSetFn& g) {
    if (g.dim() != spec.dim()) throw InputError("init_field: level-set function and grid differ in dimension");
    GridField field{spec, std::vector<double>(spec.size()), 0.0};
    for (std::size_t i = 0; i < spec.size(); ++i) field.values[i] = g(spec.node(i));
    check_finite(field.values);
    return field;
}

double hamiltonian(std::span<const double> x, std::span<const double> p, const ControlSystem& sys) {
    const auto n = static_cast<std::size_t>(sys.field.state_dim());
    if (x.size() != n || p.size() != n) throw InputError("hamiltonian: dimension mismatch");
    return HamiltonianEval(sys)(x, p);
}

std::vector<double> dissipation_bounds(const GridSpec& spec, const ControlSystem& sys, unsigned threads) {
    const int d = spec.dim();
    if (sys.field.state_dim() != d) throw InputError("dissipation_bounds: grid and field differ in dimension");
    const auto du = static_cast<std::size_t>(d);
    std::vector<double> alpha(du, 0.0);
    const HamiltonianEval ham(sys);
    if (ham.closed_form()) {
        // |dH/dp_i| <= |(A x + B q)_i| + sqrt((B Q B^T)_ii); linear in x, so the
        // box corners bound it.
        const Mat& a = *sys.field.a_matrix();
        const Mat& b = *sys.field.b_matrix();
        const Vec bq = b * sys.input_set->center();
        const Vec spread = (b * sys.input_set->shape() * b.transpose()).diagonal().cwiseMax(0.0).cwiseSqrt();
        for (int corner = 0; corner < (1 << d); ++corner) {
            Vec x(d);
            for (int k = 0; k < d; ++k) {
                x[k] = (corner >> k & 1) ? spec.upper()[static_cast<std::size_t>(k)]
                                          : spec.lower()[static_cast<std::size_t>(k)];
            }
            const Vec drift = a * x + bq;
            for (int i = 0; i < d; ++i) {
                alpha[static_cast<std::size_t>(i)] =
                    std::max(alpha[static_cast<std::size_t>(i)], std::abs(drift[i]) + spread[i]);
            }
        }
        return alpha;
    }
    std::mutex merge;
    parallel_for_chunks(spec.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> local(du, 0.0);
        std::array<double, 3> x{}, dx{};
        for (std::size_t i = begin; i < end; ++i) {
            spec.node(i, std::span<double>(x.data(), du));
            for (const Vec& u : sys.inputs.points()) {
                sys.field.evaluate(std::span<const double>(x.data(), du),
                                   {u.data(), static_cast<std::size_t>(u.size())},
                                   std::span<double>(dx.data(), du));
                for (std::size_t k = 0; k < du; ++k) local[k] = std::max(local[k], std::abs(dx[k]));
            }
        }
        std::lock_guard lock(merge);
        for (std::size_t k = 0; k < du; ++k) alpha[k] = std::max(alpha[k], local[k]);
    });
    return alpha;
}

double max_stable_dt(const GridSpec& spec, const std::vector<double>& alpha, double cfl) {
    double s = 0.0;
    for (int a = 0; a < spec.dim(); ++a) s += alpha[static_cast<std::size_t>(a)] / spec.spacing(a);
    return s > 0.0 ? cfl / s : std::numeric_limits<double>::infinity();
}

GridField lf_step(const GridField& field, const ControlSystem& sys, double dt, const std::vector<double>& alpha,
                  const OracleOptions& options) {
    check_cfl(field.spec, alpha, dt, options.cfl);
    Integrator integrator(field.spec, sys, alpha, options);
    GridField next = field;
    integrator.advance(next.values, dt);
    check_finite(next.values);
    next.time += dt;
    return next;
}

GridField lf_step(const GridField& field, const ControlSystem& sys, double dt, const OracleOptions& options) {
    return lf_step(field, sys, dt, dissipation_bounds(field.spec, sys, options.threads), options);
}

GridField solve(const GridSpec& spec, const LevelSetFn& g, const ControlSystem& sys, double horizon,
                const OracleOptions& options, SolveReport* report) {
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InputError("solve: horizon must be >= 0");
    const auto t0 = std::chrono::steady_clock::now();
    GridField field = init_field(spec, g);
    SolveReport rep;
    rep.alpha = dissipation_bounds(spec, sys, options.threads);
    if (horizon > 0.0) {
        const double dt_max = max_stable_dt(spec, rep.alpha, options.cfl);
        rep.steps = std::isfinite(dt_max)
                        ? static_cast<std::size_t>(std::ceil(horizon / dt_max - 1e-12))
                        : std::size_t{1};
        rep.steps = std::max<std::size_t>(rep.steps, 1);
        rep.dt = horizon / static_cast<double>(rep.steps);
        check_cfl(spec, rep.alpha, rep.dt, options.cfl);
        Integrator integrator(spec, sys, rep.alpha, options);
        for (std::size_t k = 0; k < rep.steps; ++k) {
            integrator.advance(field.values, rep.dt);
            check_finite(field.values);
        }
        field.time = horizon;
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (report) *report = std::move(rep);
    return field;
}

double sublevel_measure(const GridField& field) {
    const GridSpec& spec = field.spec;
    const auto& w = field.values;
    const int d = spec.dim();
    const auto& n = spec.counts();
    double total = 0.0;
    if (d == 1) {
        const double h = spec.spacing(0);
        for (int i = 0; i + 1 < n[0]; ++i) {
            const double a = w[static_cast<std::size_t>(i)], b = w[static_cast<std::size_t>(i + 1)];
            if (a <= 0.0 && b <= 0.0) {
                total += h;
            } else if (a <= 0.0 || b <= 0.0) {
                const double t = a / (a - b);
                total += (a <= 0.0 ? t : 1.0 - t) * h;
            }
        }
        return total;
    }
    // Sum per slab of the last axis, then in slab order, for a thread-count
    // independent result.
    const int last = d - 1;
    const auto slabs = static_cast<std::size_t>(n[static_cast<std::size_t>(last)] - 1);
    std::vector<double> partial(slabs, 0.0);
    parallel_for(slabs, 0, [&](std::size_t k) {
        double acc = 0.0;
        if (d == 2) {
            const std::size_t sy = spec.stride(1);
            for (int i = 0; i + 1 < n[0]; ++i) {
                const std::size_t c0 = static_cast<std::size_t>(i) + k * sy;
                const std::array<double, 4> v{w[c0], w[c0 + 1], w[c0 + 1 + sy], w[c0 + sy]};
                static constexpr std::array<std::array<double, 2>, 4> corner{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
                std::array<std::array<double, 2>, 8> poly{};
                int m = 0;
                for (int c = 0; c < 4; ++c) {
                    const int nx = (c + 1) % 4;
                    const bool in_c = v[static_cast<std::size_t>(c)] <= 0.0;
                    const bool in_n = v[static_cast<std::size_t>(nx)] <= 0.0;
                    if (in_c) poly[static_cast<std::size_t>(m++)] = corner[static_cast<std::size_t>(c)];
                    if (in_c != in_n) {
                        const double t = v[static_cast<std::size_t>(c)] /
                                         (v[static_cast<std::size_t>(c)] - v[static_cast<std::size_t>(nx)]);
                        const auto& p = corner[static_cast<std::size_t>(c)];
                        const auto& q = corner[static_cast<std::size_t>(nx)];
                        poly[static_cast<std::size_t>(m++)] = {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
                    }
                }
                double area2 = 0.0;
                for (int a = 0; a < m; ++a) {
                    const auto& p = poly[static_cast<std::size_t>(a)];
                    const auto& q = poly[static_cast<std::size_t>((a + 1) % m)];
                    area2 += p[0] * q[1] - q[0] * p[1];
                }
                acc += 0.5 * std::abs(area2);
            }
        } else {
            const std::size_t sy = spec.stride(1), sz = spec.stride(2);
            for (int j = 0; j + 1 < n[1]; ++j) {
                for (int i = 0; i + 1 < n[0]; ++i) {
                    const std::size_t c0 = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * sy + k * sz;
                    int inside = 0;
                    for (std::size_t off : {std::size_t{0}, std::size_t{1}, sy, sy + 1, sz, sz + 1, sz + sy,
                                            sz + sy + 1}) {
                        inside += w[c0 + off] <= 0.0 ? 1 : 0;
                    }
                    acc += inside / 8.0;
                }
            }
        }
        partial[k] = acc;
    });
    for (double p : partial) total += p;
    return total * spec.cell_measure();
}

std::optional<double> interpolate(const GridField& field, std::span<const double> x) {
    const GridSpec& spec = field.spec;
    const int d = spec.dim();
    if (x.size() != static_cast<std::size_t>(d)) throw InputError("interpolate: dimension mismatch");
    std::array<std::size_t, 3> base{};
    std::array<double, 3> frac{};
    for (int a = 0; a < d; ++a) {
        const auto au = static_cast<std::size_t>(a);
        const double s = (x[au] - spec.lower()[au]) / spec.spacing(a);
        const int top = spec.counts()[au] - 1;
        if (!(s >= -1e-12) || !(s <= top + 1e-12)) return std::nullopt;
        const int i = std::clamp(static_cast<int>(std::floor(s)), 0, top - 1);
        base[au] = static_cast<std::size_t>(i) * spec.stride(a);
        frac[au] = std::clamp(s - i, 0.0, 1.0);
    }
    double v = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
        double wgt = 1.0;
        std::size_t flat = 0;
        for (int a = 0; a < d; ++a) {
            const auto au = static_cast<std::size_t>(a);
            const bool hi = (corner >> a) & 1;
            wgt *= hi ? frac[au] : 1.0 - frac[au];
            flat += base[au] + (hi ? spec.stride(a) : 0);
        }
        v += wgt * field.values[flat];
    }
    return v;
}

std::optional<double> gradient_norm(const GridField& field, std::span<const double> x) {
    const auto center = interpolate(field, x);
    if (!center) return std::nullopt;
    const int d = field.spec.dim();
    std::array<double, 3> y{};
    std::copy(x.begin(), x.end(), y.begin());
    const std::span<const double> ys(y.data(), x.size());
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) {
        const auto au = static_cast<std::size_t>(a);
        const double h = field.spec.spacing(a);
        y[au] = x[au] + h;
        const auto up = interpolate(field, ys);
        y[au] = x[au] - h;
        const auto down = interpolate(field, ys);
        y[au] = x[au];
        double g = 0.0;
        if (up && down) {
            g = (*up - *down) / (2 * h);
        } else if (up) {
            g = (*up - *center) / h;
        } else if (down) {
            g = (*center - *down) / h;
        }
        n2 += g * g;
    }
    return std::sqrt(n2);
}

}  // namespace reachtree
