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

#include "reachtree/app/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "reachtree/config.hpp"
#include "reachtree/csv.hpp"
#include "reachtree/errors.hpp"

namespace reachtree::app {

namespace {

using nlohmann::json;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// inf is not a JSON number
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

json header(const char* command, const ProblemSpec& p) {
    return {{"schema", "reachtree-report/" + std::to_string(kSchemaVersion)},
            {"command", command},
            {"problem", json::parse(problem_to_json(p))}};
}

json reach_section(const ProblemSpec& p, const ReachFlags& flags, const ReachOutcome& r) {
    json levels = json::array();
    for (const auto& s : r.run.stats) {
        levels.push_back({{"k", s.k}, {"t", s.t}, {"generated", s.generated}, {"count", s.count},
                          {"degenerate", s.degenerate}});
    }
    return {
        {"algorithm", to_string(flags.algorithm)},
        {"eps", number_or_null(flags.eps)},
        {"seed_count", p.seeds},
        {"input_count", p.input_points},
        {"seed_mode", flags.algorithm == Algorithm::tree_pruned ? "boundary" : "filled"},
        {"input_grid", to_string(p.input_grid().provenance())},
        {"steps", r.run.steps},
        {"levels", levels},
        {"events", r.run.events},
        {"final_level_count", r.run.final_level().size()},
        {"final_hull_vertices", r.hull ? r.hull->vertices().size() : 0},
        {"final_hull_measure", r.hull_measure},
        {"hull_degenerate", !r.hull.has_value()},
    };
}

json oracle_section(const ProblemSpec& p, const OracleOutcome& o) {
    std::vector<double> spacing;
    for (int a = 0; a < o.field.spec.dim(); ++a) spacing.push_back(o.field.spec.spacing(a));
    return {
        {"order", to_string(p.oracle->order)},
        {"cfl", p.oracle->cfl},
        {"time_integrator", p.oracle->order == SpatialOrder::first ? "forward-euler" : "tvd-rk3"},
        {"edge_condition", "linear-extrapolation"},
        {"hamiltonian", p.field.kind() == FlowField::Kind::linear ? "closed-form" : "input-grid-minimum"},
        {"spacing", spacing},
        {"alpha", o.solve.alpha},
        {"steps", o.solve.steps},
        {"dt", o.solve.dt},
        {"horizon", o.field.time},
        {"sublevel_measure", o.measure},
        {"contour_empty", o.contour.empty},
    };
}

json level_timings(const ReachOutcome& r) {
    json ms = json::array();
    for (const auto& s : r.run.stats) ms.push_back(s.wall_ms);
    return ms;
}

void write_overlay(const std::filesystem::path& path, const ReachOutcome& r, const OracleOutcome& o) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out.precision(17);
    const int d = o.field.spec.dim();
    out << "# reachtree overlay v" << kSchemaVersion << "\nseries,part";
    for (int k = 0; k < d; ++k) out << ",x" << k;
    out << '\n';
    auto row = [&](const char* series, std::size_t part, std::span<const double> p) {
        out << series << ',' << part;
        for (double c : p) out << ',' << c;
        out << '\n';
    };
    if (r.hull) {
        const PointCloud& v = r.hull->vertices();
        for (std::size_t i = 0; i < v.size(); ++i) row("tree-hull", 0, v[i]);
        if (d == 2 && !v.empty()) row("tree-hull", 0, v[0]);  // closes the polygon
    }
    if (d == 2) {
        for (std::size_t l = 0; l < o.contour.polylines.size(); ++l) {
            for (std::size_t i : o.contour.polylines[l]) row("oracle-contour", l, o.contour.vertices[i]);
        }
    } else {
        for (std::size_t i = 0; i < o.contour.vertices.size(); ++i) row("oracle-contour", 0, o.contour.vertices[i]);
    }
    if (!out) throw Error("write failed for " + path.string());
}

void write_reach_files(const std::filesystem::path& dir, const ReachOutcome& r) {
    write_nodes_csv(dir / "nodes.csv", r.run.final_level());
    if (r.run.levels.size() > 1) {
        for (const auto& level : r.run.levels) {
            write_nodes_csv(dir / "levels" / ("level_" + std::to_string(level.k) + ".csv"), level);
        }
    }
    if (r.hull) {
        write_hull_vertices_csv(dir / "hull_vertices.csv", *r.hull);
        write_hull_facets_csv(dir / "hull_facets.csv", *r.hull);
    }
    write_level_stats_csv(dir / "node_growth.csv", r.run.stats);
}

void write_oracle_files(const std::filesystem::path& dir, const OracleOutcome& o) {
    write_field_csv(dir / "field.csv", o.field);
    write_contour(dir / (o.field.spec.dim() == 2 ? "contour.csv" : "contour.obj"), o.contour);
}

}  // namespace

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "tree-pruned") return Algorithm::tree_pruned;
    if (s == "tree-full") return Algorithm::tree_full;
    throw ConfigError("unknown algorithm '" + s + "' (expected tree-pruned or tree-full)");
}

const char* to_string(Algorithm a) { return a == Algorithm::tree_pruned ? "tree-pruned" : "tree-full"; }

ProblemSpec apply_flags(ProblemSpec p, const ReachFlags& flags) {
    if (flags.seed_count) p.seeds = *flags.seed_count;
    if (flags.input_count) p.input_points = *flags.input_count;
    if (!(flags.eps >= 0.0)) throw ConfigError("--eps must be >= 0");
    p.validate();
    return p;
}

ReachOutcome run_reach(const ProblemSpec& p, const ReachFlags& flags) {
    const auto t0 = std::chrono::steady_clock::now();
    TreeOptions opts = p.tree;
    opts.keep_levels = flags.keep_levels;
    opts.threads = flags.threads;
    ReachOutcome r;
    PointCloud hull_points(p.field.state_dim());
    if (flags.algorithm == Algorithm::tree_pruned) {
        r.run = run_algorithm2(p.field, p.terminal_set, p.input_grid(), p.stepper, p.horizon, p.seeds, opts);
        hull_points = r.run.final_level().states;
    } else {
        r.run = run_algorithm1(p.step_context(), p.terminal_set, p.horizon, p.seeds, flags.eps, opts);
        const TreeLevel& last = r.run.final_level();
        for (std::size_t i = 0; i < last.size(); ++i) {
            if (last.values[i] <= 0.0) hull_points.push_back(last.states[i]);
        }
    }
    try {
        r.hull = convex_hull(hull_points);
        r.hull_measure = hull_measure(*r.hull);
    } catch (const DegenerateHullError& e) {
        r.run.events.push_back(std::string("final hull degenerate: ") + e.what());
    }
    r.wall_ms = ms_since(t0);
    return r;
}

OracleOutcome run_oracle(const ProblemSpec& p, unsigned threads) {
    if (!p.oracle) throw ConfigError(p.name + ": no oracle grid configured");
    const OracleOptions opts{p.oracle->order, p.oracle->cfl, threads};
    SolveReport report;
    GridField field = solve(p.oracle->grid, p.terminal_function(), p.control_system(), p.horizon, opts, &report);
    const double measure = sublevel_measure(field);
    Contour contour = field.spec.dim() >= 2 ? zero_contour(field) : Contour{};
    return {std::move(field), std::move(report), measure, std::move(contour)};
}

ProblemSpec resolve_problem(const std::string& arg) {
    for (const auto& name : builtin_names()) {
        if (arg == name) return builtin(name);
    }
    if (!std::filesystem::exists(arg)) {
        throw ConfigError("config '" + arg + "' is neither a readable file nor a builtin name");
    }
    return load_problem(arg);
}

std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("REACH_OUT_DIR"); env && *env) return env;
    return "reach_out";
}

void write_reach_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const ReachFlags& flags,
                           const ReachOutcome& r) {
    write_reach_files(dir, r);
    json report = header("reach", p);
    report["reach"] = reach_section(p, flags, r);
    write_json(dir / "report.json", report);
    write_json(dir / "timings.json", {{"reach_ms", r.wall_ms}, {"level_ms", level_timings(r)}});
}

void write_oracle_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const OracleOutcome& o) {
    write_oracle_files(dir, o);
    json report = header("oracle", p);
    report["oracle"] = oracle_section(p, o);
    write_json(dir / "report.json", report);
    write_json(dir / "timings.json", {{"oracle_ms", o.solve.wall_ms}});
}

void write_compare_artifacts(const std::filesystem::path& dir, const ProblemSpec& p, const ReachFlags& flags,
                             const ReachOutcome& r, const OracleOutcome& o) {
    write_reach_files(dir, r);
    write_oracle_files(dir, o);
    write_overlay(dir / "overlay.csv", r, o);
    json report = header("compare", p);
    report["reach"] = reach_section(p, flags, r);
    report["oracle"] = oracle_section(p, o);
    report["comparison"] = {
        {"tree_measure", r.hull_measure},
        {"oracle_measure", o.measure},
        {"ratio", number_or_null(r.hull_measure / o.measure)},
        {"relative_gap", number_or_null(std::abs(r.hull_measure - o.measure) / o.measure)},
    };
    write_json(dir / "report.json", report);
    write_json(dir / "timings.json",
               {{"reach_ms", r.wall_ms}, {"level_ms", level_timings(r)}, {"oracle_ms", o.solve.wall_ms}});
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Backward reachable sets by tree expansion with convex-hull pruning"};
    cli.require_subcommand(1);

    std::string config;
    std::optional<std::string> out_dir;
    std::string algorithm = "tree-pruned";
    ReachFlags flags;

    auto common = [&](CLI::App* sub) {
        sub->add_option("config", config, "JSON config file or builtin name")->required();
        sub->add_option("--out", out_dir, "output directory (default $REACH_OUT_DIR or ./reach_out)");
        sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    };
    auto tree_flags = [&](CLI::App* sub) {
        sub->add_option("--seed-count", flags.seed_count, "override the number of seeds n0");
        sub->add_option("--input-count", flags.input_count, "override the number of input points");
    };

    auto* reach = cli.add_subcommand("reach", "run the backward tree");
    common(reach);
    tree_flags(reach);
    reach->add_option("--algorithm", algorithm, "tree-pruned or tree-full");
    reach->add_option("--eps", flags.eps, "tree-full: drop nodes valued below -eps");
    reach->add_flag("--keep-levels", flags.keep_levels, "keep and write every level");

    auto* oracle = cli.add_subcommand("oracle", "solve the grid level-set oracle");
    common(oracle);

    auto* compare = cli.add_subcommand("compare", "run the pruned tree and the oracle and compare");
    common(compare);
    tree_flags(compare);

    auto* list = cli.add_subcommand("list", "list builtin problems");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        cli.exit(e, out, err);
        return 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& n : builtin_names()) out << n << '\n';
            return 0;
        }
        flags.algorithm = algorithm_from_string(algorithm);
        const ProblemSpec problem = apply_flags(resolve_problem(config), flags);
        const auto dir = resolve_out_dir(out_dir ? std::optional<std::filesystem::path>(*out_dir) : std::nullopt);
        if (reach->parsed()) {
            const auto r = run_reach(problem, flags);
            write_reach_artifacts(dir, problem, flags, r);
            out << "levels " << r.run.stats.size() << ", final count " << r.run.final_level().size()
                << ", hull measure " << r.hull_measure << '\n';
        } else if (oracle->parsed()) {
            const auto o = run_oracle(problem, flags.threads);
            write_oracle_artifacts(dir, problem, o);
            out << "oracle steps " << o.solve.steps << ", sublevel measure " << o.measure << '\n';
        } else {
            flags.algorithm = Algorithm::tree_pruned;
            const auto r = run_reach(problem, flags);
            const auto o = run_oracle(problem, flags.threads);
            write_compare_artifacts(dir, problem, flags, r, o);
            out << "tree " << r.hull_measure << ", oracle " << o.measure << ", ratio " << r.hull_measure / o.measure
                << '\n';
        }
        out << "wrote " << dir.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const CapabilityError& e) {
        err << "unsupported: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const CapacityError& e) {
        err << "capacity exceeded: " << e.what() << '\n';
        return 3;
    } catch (const ConsistencyError& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace reachtree::app
