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

#ifndef REACHTREE_ORACLE_HPP
#define REACHTREE_ORACLE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reachtree/dynamics.hpp"
#include "reachtree/point_cloud.hpp"
#include "reachtree/sets.hpp"

namespace reachtree {

// Regular node grid over a box, 1 to 3 axes. Flat index: axis 0 varies
// fastest.
class GridSpec {
public:
    GridSpec(std::vector<double> lower, std::vector<double> upper, std::vector<int> counts);

    int dim() const { return static_cast<int>(counts_.size()); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<int>& counts() const { return counts_; }
    double spacing(int axis) const { return h_[static_cast<std::size_t>(axis)]; }
    std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }
    std::size_t size() const { return size_; }
    double coordinate(int axis, int index) const;
    std::array<int, 3> multi_index(std::size_t flat) const;
    void node(std::size_t flat, std::span<double> out) const;
    Vec node(std::size_t flat) const;
    double cell_measure() const;

private:
    std::vector<double> lower_, upper_, h_;
    std::vector<int> counts_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 0;
};

struct GridField {
    GridSpec spec;
    std::vector<double> values;
    double time = 0.0;
};

// Dynamics plus admissible inputs as seen by the Hamiltonian. When the field
// is linear and input_set is given, H uses the exact support-function form;
// otherwise it minimizes over the input grid.
struct ControlSystem {
    FlowField field;
    InputGrid inputs;
    std::optional<Ellipsoid> input_set;
};

enum class SpatialOrder { first, weno5 };
const char* to_string(SpatialOrder o);
SpatialOrder spatial_order_from_string(const std::string& s);

struct OracleOptions {
    // first: one-sided first differences, forward Euler in time.
    // weno5: fifth-order WENO one-sided derivatives, TVD-RK3 in time.
    SpatialOrder order = SpatialOrder::first;
    double cfl = 0.9;
    unsigned threads = 0;
};

GridField init_field(const GridSpec& spec, const LevelSetFn& g);

// min over inputs of <p, f(x, u)>.
double hamiltonian(std::span<const double> x, std::span<const double> p, const ControlSystem& sys);

// Per-axis bound on |dH/dp_i| over the grid (the Lax-Friedrichs alpha).
std::vector<double> dissipation_bounds(const GridSpec& spec, const ControlSystem& sys, unsigned threads = 0);

// Largest dt satisfying dt * sum_i alpha_i / h_i <= cfl (inf when alpha = 0).
double max_stable_dt(const GridSpec& spec, const std::vector<double>& alpha, double cfl);

// One step of w_t = H(x, grad w) with the Lax-Friedrichs numerical
// Hamiltonian H(x, (D+ + D-)/2) + sum_i alpha_i (D+_i - D-_i) / 2. Edges use
// linearly extrapolated ghost nodes. Throws CflError when dt is too large.
GridField lf_step(const GridField& field, const ControlSystem& sys, double dt, const std::vector<double>& alpha,
                  const OracleOptions& options = {});
GridField lf_step(const GridField& field, const ControlSystem& sys, double dt, const OracleOptions& options = {});

struct SolveReport {
    std::size_t steps = 0;
    double dt = 0.0;
    std::vector<double> alpha;
    double wall_ms = 0.0;
};

// Field at time T, with equal steps no larger than the CFL limit.
GridField solve(const GridSpec& spec, const LevelSetFn& g, const ControlSystem& sys, double horizon,
                const OracleOptions& options = {}, SolveReport* report = nullptr);

// Measure of { w <= 0 }. 1D: interpolated interval length; 2D: per-cell
// clipped polygon area; 3D: corner-count fraction of each cell.
double sublevel_measure(const GridField& field);

// Multilinear interpolation; nullopt outside the grid box.
std::optional<double> interpolate(const GridField& field, std::span<const double> x);
// Central-difference gradient norm of the interpolant, step h_i per axis.
std::optional<double> gradient_norm(const GridField& field, std::span<const double> x);

// Zero level set. 2D: polylines (closed loops repeat their first vertex).
// 3D: triangle mesh.
struct Contour {
    int dim = 0;
    PointCloud vertices;
    std::vector<std::vector<std::size_t>> polylines;
    std::vector<std::array<std::size_t, 3>> triangles;
    bool empty = true;
};

Contour zero_contour(const GridField& field);

// |sum of signed shoelace areas| over the closed 2D loops.
double enclosed_area(const Contour& contour);

}  // namespace reachtree

#endif  // REACHTREE_ORACLE_HPP
