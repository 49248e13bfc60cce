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

#include "reachtree/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "reachtree/errors.hpp"

namespace reachtree {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    return j.at(key);
}

template <typename T>
T get(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

Vec vec_from(const json& j, const std::string& where) {
    const auto v = get<std::vector<double>>(j, where);
    if (v.empty()) throw ConfigError(where + ": empty vector");
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Mat mat_from(const json& j, const std::string& where) {
    const auto rows = get<std::vector<std::vector<double>>>(j, where);
    if (rows.empty() || rows.front().empty()) throw ConfigError(where + ": empty matrix");
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) throw ConfigError(where + ": ragged matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

json to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
        rows.push_back(row);
    }
    return rows;
}

Ellipsoid ellipsoid_from(const json& j, const std::string& where) {
    only_keys(j, where, {"center", "shape"});
    const Vec q = vec_from(require(j, where, "center"), where + ".center");
    const json& s = require(j, where, "shape");
    try {
        // a scalar shape means scale * I
        if (s.is_number()) return Ellipsoid::scaled_identity(q, get<double>(s, where + ".shape"));
        return Ellipsoid(q, mat_from(s, where + ".shape"));
    } catch (const InputError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

FlowField field_from(const json& j) {
    const std::string where = "model";
    const auto kind = get<std::string>(require(j, where, "kind"), where + ".kind");
    if (kind == "linear") {
        only_keys(j, where, {"kind", "A", "B"});
        try {
            return FlowField::linear(mat_from(require(j, where, "A"), "model.A"),
                                     mat_from(require(j, where, "B"), "model.B"));
        } catch (const InputError& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }
    if (kind == "dc-motor") {
        only_keys(j, where, {"kind"});
        return FlowField::dc_motor();
    }
    if (kind == "zero") {
        only_keys(j, where, {"kind", "state_dim", "input_dim"});
        const int n = get<int>(require(j, where, "state_dim"), "model.state_dim");
        const int m = get<int>(require(j, where, "input_dim"), "model.input_dim");
        if (n < 1 || m < 1) throw ConfigError("model: dimensions must be >= 1");
        return FlowField::zero(n, m);
    }
    throw ConfigError("model.kind: unknown kind '" + kind + "' (expected linear, dc-motor or zero)");
}

json field_to_json(const FlowField& f) {
    if (f.is_reversed()) throw CapabilityError("config: reversed fields are not serializable");
    switch (f.kind()) {
        case FlowField::Kind::linear:
            return {{"kind", "linear"}, {"A", to_json(*f.a_matrix())}, {"B", to_json(*f.b_matrix())}};
        case FlowField::Kind::dc_motor:
            return {{"kind", "dc-motor"}};
        case FlowField::Kind::custom:
            if (f.name() == "zero") {
                return {{"kind", "zero"}, {"state_dim", f.state_dim()}, {"input_dim", f.input_dim()}};
            }
            break;
    }
    throw CapabilityError("config: field '" + f.name() + "' is not serializable");
}

TreeOptions tree_from(const json& j) {
    only_keys(j, "tree", {"dedup_rel", "tol_hull_rel", "tol_reach_rel", "level_cap", "interior_layers"});
    TreeOptions t;
    if (j.contains("dedup_rel")) t.dedup_rel = get<double>(j["dedup_rel"], "tree.dedup_rel");
    if (j.contains("tol_hull_rel")) t.tol_hull_rel = get<double>(j["tol_hull_rel"], "tree.tol_hull_rel");
    if (j.contains("tol_reach_rel")) t.tol_reach_rel = get<double>(j["tol_reach_rel"], "tree.tol_reach_rel");
    if (j.contains("level_cap")) t.level_cap = get<std::size_t>(j["level_cap"], "tree.level_cap");
    if (j.contains("interior_layers")) t.interior_layers = get<int>(j["interior_layers"], "tree.interior_layers");
    return t;
}

OracleConfig oracle_from(const json& j) {
    only_keys(j, "oracle", {"lower", "upper", "counts", "order", "cfl"});
    try {
        OracleConfig o{GridSpec(get<std::vector<double>>(require(j, "oracle", "lower"), "oracle.lower"),
                                get<std::vector<double>>(require(j, "oracle", "upper"), "oracle.upper"),
                                get<std::vector<int>>(require(j, "oracle", "counts"), "oracle.counts")),
                       SpatialOrder::weno5, 0.9};
        if (j.contains("order")) o.order = spatial_order_from_string(get<std::string>(j["order"], "oracle.order"));
        if (j.contains("cfl")) o.cfl = get<double>(j["cfl"], "oracle.cfl");
        if (!(o.cfl > 0.0)) throw ConfigError("oracle.cfl must be > 0");
        return o;
    } catch (const InputError& e) {
        throw ConfigError(std::string("oracle: ") + e.what());
    }
}

ProblemSpec problem_from(const json& doc) {
    only_keys(doc, "problem",
              {"name", "model", "input_set", "terminal_set", "horizon", "stepper", "seeds", "input_points", "tree",
               "oracle"});
    const json& st = require(doc, "problem", "stepper");
    only_keys(st, "stepper", {"scheme", "dt"});
    StepperConfig stepper = [&] {
        try {
            return StepperConfig(scheme_from_string(get<std::string>(require(st, "stepper", "scheme"), "stepper.scheme")),
                                 get<double>(require(st, "stepper", "dt"), "stepper.dt"));
        } catch (const InputError& e) {
            throw ConfigError(std::string("stepper: ") + e.what());
        }
    }();
    ProblemSpec p{
        .name = doc.contains("name") ? get<std::string>(doc["name"], "name") : std::string("custom"),
        .field = field_from(require(doc, "problem", "model")),
        .input_set = ellipsoid_from(require(doc, "problem", "input_set"), "input_set"),
        .terminal_set = ellipsoid_from(require(doc, "problem", "terminal_set"), "terminal_set"),
        .horizon = get<double>(require(doc, "problem", "horizon"), "horizon"),
        .stepper = stepper,
        .seeds = get<int>(require(doc, "problem", "seeds"), "seeds"),
        .input_points = get<int>(require(doc, "problem", "input_points"), "input_points"),
        .tree = doc.contains("tree") ? tree_from(doc["tree"]) : TreeOptions{},
        .oracle = std::nullopt,
    };
    if (doc.contains("oracle") && !doc["oracle"].is_null()) p.oracle = oracle_from(doc["oracle"]);
    p.validate();
    return p;
}

json problem_to_doc(const ProblemSpec& p) {
    json doc = {
        {"name", p.name},
        {"model", field_to_json(p.field)},
        {"input_set", {{"center", to_json(p.input_set.center())}, {"shape", to_json(p.input_set.shape())}}},
        {"terminal_set", {{"center", to_json(p.terminal_set.center())}, {"shape", to_json(p.terminal_set.shape())}}},
        {"horizon", p.horizon},
        {"stepper", {{"scheme", to_string(p.stepper.scheme)}, {"dt", p.stepper.dt}}},
        {"seeds", p.seeds},
        {"input_points", p.input_points},
        {"tree",
         {{"dedup_rel", p.tree.dedup_rel},
          {"tol_hull_rel", p.tree.tol_hull_rel},
          {"tol_reach_rel", p.tree.tol_reach_rel},
          {"level_cap", p.tree.level_cap},
          {"interior_layers", p.tree.interior_layers}}},
    };
    if (p.oracle) {
        const GridSpec& g = p.oracle->grid;
        doc["oracle"] = {{"lower", g.lower()},
                         {"upper", g.upper()},
                         {"counts", g.counts()},
                         {"order", to_string(p.oracle->order)},
                         {"cfl", p.oracle->cfl}};
    }
    return doc;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    if (doc.contains("builtin")) {
        only_keys(doc, "config", {"builtin", "overrides"});
        ProblemSpec base = [&] {
            try {
                return builtin(get<std::string>(doc["builtin"], "builtin"));
            } catch (const InputError& e) {
                throw ConfigError(e.what());
            }
        }();
        if (!doc.contains("overrides")) return base;
        json merged = problem_to_doc(base);
        if (!doc["overrides"].is_object()) throw ConfigError("overrides: expected an object");
        merged.merge_patch(doc["overrides"]);
        return problem_from(merged);
    }
    return problem_from(doc);
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string problem_to_json(const ProblemSpec& p, int indent) { return problem_to_doc(p).dump(indent); }

}  // namespace reachtree
