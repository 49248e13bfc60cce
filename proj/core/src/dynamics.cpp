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

#include "reachtree/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "reachtree/errors.hpp"

namespace reachtree {

namespace {

constexpr int kMaxStackDim = 8;

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_dims(const FlowField& f, std::size_t nx, std::size_t nu) {
    if (nx != static_cast<std::size_t>(f.state_dim()) || nu != static_cast<std::size_t>(f.input_dim())) {
        std::ostringstream os;
        os << "flow field '" << f.name() << "' expects state dim " << f.state_dim() << " and input dim "
           << f.input_dim() << ", got " << nx << " and " << nu;
        throw InputError(os.str());
    }
}

void check_finite(std::span<const double> v, const char* what) {
    for (double c : v) {
        if (!std::isfinite(c)) throw NumericError(std::string("non-finite state after ") + what);
    }
}

}  // namespace

const char* to_string(Scheme s) { return s == Scheme::euler ? "euler" : "rk4"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "euler") return Scheme::euler;
    if (s == "rk4") return Scheme::rk4;
    throw InputError("unknown stepper scheme '" + s + "' (expected euler or rk4)");
}

StepperConfig::StepperConfig(Scheme scheme_, double dt_) : scheme(scheme_), dt(dt_) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("stepper: dt must be finite and > 0");
}

FlowField FlowField::linear(Mat a, Mat b) {
    if (a.rows() != a.cols() || a.rows() == 0) throw InputError("linear field: A must be square and non-empty");
    if (b.rows() != a.rows() || b.cols() == 0) throw InputError("linear field: B must have as many rows as A");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::linear;
    impl->name = "linear";
    impl->state_dim = static_cast<int>(a.rows());
    impl->input_dim = static_cast<int>(b.cols());
    impl->a = std::move(a);
    impl->b = std::move(b);
    impl->fn = [a = impl->a, b = impl->b](std::span<const double> x, std::span<const double> u,
                                          std::span<double> dx) {
        const auto n = a.rows();
        const auto m = b.cols();
        for (Eigen::Index i = 0; i < n; ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) acc += a(i, j) * x[static_cast<std::size_t>(j)];
            for (Eigen::Index j = 0; j < m; ++j) acc += b(i, j) * u[static_cast<std::size_t>(j)];
            dx[static_cast<std::size_t>(i)] = acc;
        }
    };
    return FlowField(std::move(impl));
}

FlowField FlowField::dc_motor() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::dc_motor;
    impl->name = "dc-motor";
    impl->state_dim = 3;
    impl->input_dim = 1;
    impl->fn = [](std::span<const double> x, std::span<const double> u, std::span<double> dx) {
        dx[0] = x[1];
        dx[1] = -10.0 * std::sin(x[0]) - sign_of(x[1]) * x[1] * x[1] + 5.0 * x[2];
        dx[2] = -10.0 * x[1] + 50.0 * x[2] + 50.0 * u[0];
    };
    return FlowField(std::move(impl));
}

FlowField FlowField::custom(std::string name, int state_dim, int input_dim, Evaluator fn) {
    if (state_dim <= 0 || input_dim < 0) throw InputError("custom field: invalid dimensions");
    if (!fn) throw InputError("custom field: empty evaluator");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::custom;
    impl->name = std::move(name);
    impl->state_dim = state_dim;
    impl->input_dim = input_dim;
    impl->fn = std::move(fn);
    return FlowField(std::move(impl));
}

FlowField FlowField::zero(int state_dim, int input_dim) {
    return custom("zero", state_dim, input_dim,
                  [](std::span<const double>, std::span<const double>, std::span<double> dx) {
                      std::fill(dx.begin(), dx.end(), 0.0);
                  });
}

FlowField FlowField::constant(Vec c, int input_dim) {
    const int n = static_cast<int>(c.size());
    return custom("constant", n, input_dim,
                  [c = std::move(c)](std::span<const double>, std::span<const double>, std::span<double> dx) {
                      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = c[static_cast<Eigen::Index>(i)];
                  });
}

FlowField FlowField::reversed() const {
    FlowField r = *this;
    r.sign_ = -sign_;
    return r;
}

const Mat* FlowField::a_matrix() const { return impl_->kind == Kind::linear ? &impl_->a : nullptr; }
const Mat* FlowField::b_matrix() const { return impl_->kind == Kind::linear ? &impl_->b : nullptr; }

void FlowField::evaluate(std::span<const double> x, std::span<const double> u, std::span<double> dx) const {
    impl_->fn(x, u, dx);
    if (sign_ < 0.0) {
        for (double& v : dx) v = -v;
    }
}

Vec FlowField::operator()(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u) const {
    check_dims(*this, static_cast<std::size_t>(x.size()), static_cast<std::size_t>(u.size()));
    const Vec xc = x;
    const Vec uc = u;
    Vec dx(state_dim());
    evaluate({xc.data(), static_cast<std::size_t>(xc.size())}, {uc.data(), static_cast<std::size_t>(uc.size())},
             {dx.data(), static_cast<std::size_t>(dx.size())});
    return dx;
}

void step(const FlowField& f, std::span<const double> x, std::span<const double> u, const StepperConfig& cfg,
          std::span<double> out) {
    check_dims(f, x.size(), u.size());
    if (out.size() != x.size()) throw InputError("step: output has the wrong dimension");
    const std::size_t n = x.size();
    const double dt = cfg.dt;

    // scratch for up to five stage vectors; states are tiny in practice
    std::array<double, 5 * kMaxStackDim> small{};
    std::vector<double> large;
    double* scratch = small.data();
    if (n > kMaxStackDim) {
        large.resize(5 * n);
        scratch = large.data();
    }

    if (cfg.scheme == Scheme::euler) {
        std::span<double> k(scratch, n);
        f.evaluate(x, u, k);
        for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt * k[i];
    } else {
        std::span<double> k1(scratch, n), k2(scratch + n, n), k3(scratch + 2 * n, n), k4(scratch + 3 * n, n),
            tmp(scratch + 4 * n, n);
        f.evaluate(x, u, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
        f.evaluate(tmp, u, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
        f.evaluate(tmp, u, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
        f.evaluate(tmp, u, k4);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    check_finite(out, "integration step");
}

Vec step(const FlowField& f, const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u,
         const StepperConfig& cfg) {
    const Vec xc = x;
    const Vec uc = u;
    Vec out(xc.size());
    step(f, {xc.data(), static_cast<std::size_t>(xc.size())}, {uc.data(), static_cast<std::size_t>(uc.size())}, cfg,
         {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

void reverse_step(const FlowField& f, std::span<const double> x, std::span<const double> u,
                  const StepperConfig& cfg, std::span<double> out) {
    step(f.reversed(), x, u, cfg, out);
}

Vec reverse_step(const FlowField& f, const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& u,
                 const StepperConfig& cfg) {
    return step(f.reversed(), x, u, cfg);
}

std::vector<Vec> simulate(const FlowField& f, const Vec& x0, const std::vector<Vec>& u_seq,
                          const StepperConfig& cfg) {
    if (u_seq.empty()) throw InputError("simulate: empty input sequence");
    std::vector<Vec> traj;
    traj.reserve(u_seq.size() + 1);
    traj.push_back(x0);
    for (std::size_t k = 0; k < u_seq.size(); ++k) {
        try {
            traj.push_back(step(f, traj.back(), u_seq[k], cfg));
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " at simulation step " + std::to_string(k), std::nullopt, k);
        }
    }
    return traj;
}

}  // namespace reachtree
