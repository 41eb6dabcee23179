// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON views of reports, vector sets and instance sidecars (nlohmann/json).
// Field names are stable; kReportSchemaVersion bumps on breaking changes.

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spanlab/audit.hpp"
#include "spanlab/clustering.hpp"
#include "spanlab/convex_sets.hpp"
#include "spanlab/distortion.hpp"
#include "spanlab/edge_list.hpp"
#include "spanlab/emulator.hpp"
#include "spanlab/lower_bound.hpp"
#include "spanlab/path_buying.hpp"
#include "spanlab/preserver.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

[[nodiscard]] inline Json to_json(const AuditCheck& c) {
    Json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (!c.measured.empty()) {
        Json m = Json::object();
        for (const auto& [k, v] : c.measured) m[k] = v;
        j["measured"] = m;
    }
    return j;
}

[[nodiscard]] inline Json to_json(const AuditReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"schema_version", kReportSchemaVersion}, {"pass", r.ok()}, {"fingerprint", hex64(r.fingerprint)}, {"checks", checks}};
}

[[nodiscard]] inline Json to_json(const DistortionReport& r) {
    Json hist = Json::object();
    for (const auto& [k, v] : r.histogram) hist[std::to_string(k)] = v;
    return {{"max_additive", r.max_additive},
            {"argmax_pair", {r.argmax_pair.first, r.argmax_pair.second}},
            {"pairs_checked", r.pair_count_checked},
            {"subgraph_ok", r.subgraph_ok},
            {"histogram", hist}};
}

[[nodiscard]] inline Json to_json(const LevelRecord& l) {
    Json j{{"depth", l.depth}, {"n", l.n}, {"edges", l.edges}, {"alpha", l.alpha}, {"r", l.r}, {"r_hat", l.r_hat}};
    j["measured_distortion"] = l.measured_distortion ? Json(*l.measured_distortion) : Json(nullptr);
    return j;
}

[[nodiscard]] inline Json to_json(const std::vector<LevelRecord>& levels) {
    Json j = Json::array();
    for (const auto& l : levels) j.push_back(to_json(l));
    return j;
}

[[nodiscard]] inline Json to_json(const EmulatorStats& s) {
    return {{"baseline_edges", s.baseline_edges}, {"small_cluster_edges", s.small_cluster_edges},
            {"recursive_edges", s.recursive_edges}, {"greedy_edges", s.greedy_edges},
            {"greedy_rounds", s.greedy_rounds},     {"sampled", s.sampled},
            {"sample_gap", s.sample_gap},           {"clusters", s.clusters},
            {"small_clusters", s.small_clusters},   {"large_clusters", s.large_clusters},
            {"r", s.r},                             {"r_hat", s.r_hat}};
}

[[nodiscard]] inline Json to_json(const SpannerStats& s) {
    return {{"baseline_edges", s.baseline_edges},     {"small_cluster_edges", s.small_cluster_edges},
            {"small_cluster_paths", s.small_cluster_paths}, {"recursive_edges", s.recursive_edges},
            {"greedy_edges", s.greedy_edges},         {"greedy_paths", s.greedy_paths},
            {"greedy_rounds", s.greedy_rounds},       {"sampled", s.sampled},
            {"sample_gap", s.sample_gap},             {"clusters", s.clusters},
            {"small_clusters", s.small_clusters},     {"large_clusters", s.large_clusters},
            {"r", s.r},                               {"r_hat", s.r_hat}};
}

[[nodiscard]] inline Json to_json(const PathSystem& ps) {
    Json j = Json::array();
    for (const auto& p : ps.paths) j.push_back(p);
    return j;
}

[[nodiscard]] inline PathSystem path_system_from_json(const Json& j) {
    PathSystem ps;
    for (const auto& p : j) ps.add(p.get<std::vector<Vertex>>());
    return ps;
}

[[nodiscard]] inline Json to_json(const ConsistencyReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"first", x.first}, {"second", x.second}, {"reason", x.reason}});
    return {{"pass", r.ok()}, {"paths_checked", r.paths_checked}, {"violations", v}};
}

[[nodiscard]] inline Json to_json(const DecompositionCheck& c) {
    return {{"pass", c.ok()},           {"coverage_ok", c.coverage_ok},        {"balls_exact", c.balls_exact},
            {"radius_ok", c.radius_ok}, {"levels_ok", c.levels_ok},            {"overlap_ok", c.overlap_ok},
            {"radius_levels", c.radius_levels}, {"overlap_constant", c.overlap_constant}, {"violations", c.violations}};
}

[[nodiscard]] inline Json to_json(const ExponentSchedule& s) {
    Json values = Json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i)
        values.push_back({{"i", i}, {"fraction", to_fraction(s.values[i])}, {"decimal", to_double(s.values[i])}});
    return {{"kind", std::string(to_string(s.kind))}, {"fixed_point", s.fixed_point}, {"values", values}};
}

[[nodiscard]] inline Json vectors_to_json(const std::vector<Vec2>& w) {
    Json j = Json::array();
    for (const auto& v : w) j.push_back({v.x, v.y});
    return j;
}

[[nodiscard]] inline std::vector<Vec2> vectors_from_json(const Json& j) {
    std::vector<Vec2> out;
    for (const auto& v : j) out.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
    return out;
}

[[nodiscard]] inline Json to_json(const ConvexVectorSet& w) {
    Json j{{"r", w.r}, {"vectors", vectors_to_json(w.vectors)}, {"psi_max", w.psi_max}};
    if (!w.stripes.empty()) {
        j["stripes"] = w.stripes;
        j["psi2"] = w.psi2;
        j["beta"] = w.beta;
    }
    j["pool_size"] = w.pool_size;
    j["hull_size"] = w.hull_size;
    j["thinned_size"] = w.thinned_size;
    return j;
}

[[nodiscard]] inline ConvexVectorSet convex_set_from_json(const Json& j) {
    ConvexVectorSet w;
    w.r = j.at("r").get<std::int64_t>();
    w.vectors = vectors_from_json(j.at("vectors"));
    w.psi_max = j.value("psi_max", max_angle_to_horizontal(w.vectors));
    if (j.contains("stripes")) {
        w.stripes = j.at("stripes").get<std::vector<std::vector<std::size_t>>>();
        w.psi2 = j.value("psi2", 0.0);
        w.beta = j.value("beta", std::size_t{0});
    }
    w.pool_size = j.value("pool_size", std::size_t{0});
    w.hull_size = j.value("hull_size", std::size_t{0});
    w.thinned_size = j.value("thinned_size", std::size_t{0});
    return w;
}

[[nodiscard]] inline Json to_json(const CisReport& r) {
    return {{"property1", r.property1},
            {"property3", r.property3},
            {"property2_ratio", r.property2_ratio},
            {"property1_violations", vectors_to_json(r.property1_violations)},
            {"property3_violations", r.property3_violations.size()}};
}

[[nodiscard]] inline Json to_json(const GraphDistanceCheck& c, bool with_records = false) {
    Json j{{"pass", c.ok()},
           {"i_star", c.i_star},
           {"v_star", {c.v_star.x, c.v_star.y}},
           {"star_pair", c.star_pair},
           {"records", c.records.size()},
           {"failures", c.failures}};
    Json recs = Json::array();
    for (const auto& r : c.records) {
        if (!with_records && r.pass) continue;
        recs.push_back({{"s", r.s}, {"t", r.t}, {"d", r.d}, {"delta_x", r.delta_x}, {"delta_y", r.delta_y},
                        {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}});
    }
    j[with_records ? "all_records" : "failed_records"] = recs;
    return j;
}

[[nodiscard]] inline Json to_json(const StretchRecord& r) {
    Json deleted = Json::array();
    for (const auto& e : r.deleted) deleted.push_back({e.u, e.v});
    return {{"pair_index", r.pair_index},
            {"deleted", deleted},
            {"before", r.before},
            {"after", r.after ? Json(*r.after) : Json(nullptr)},
            {"stretch", r.stretch ? Json(*r.stretch) : Json("infinite")},
            {"inner_copies", r.inner_copies},
            {"z", r.z},
            {"min_h_z", std::min<std::int64_t>(static_cast<std::int64_t>(r.inner_copies), r.z)},
            {"case", r.stretch ? (r.same_outer_route ? "same_outer_route" : "detour") : "disconnected"}};
}

[[nodiscard]] inline Json to_json(const PigeonholeRecord& r) {
    return {{"pair_index", r.pair_index},
            {"missing", r.missing},
            {"length", r.length},
            {"missing_fraction", r.missing_fraction},
            {"d_g", r.d_g},
            {"d_h", r.d_h ? Json(*r.d_h) : Json(nullptr)},
            {"distortion", r.distortion ? Json(*r.distortion) : Json("infinite")},
            {"budget_met", r.budget_met},
            {"candidate_edges", r.candidate_edges},
            {"instance_edges", r.instance_edges}};
}

// ---- instance sidecars ---------------------------------------------------

[[nodiscard]] inline Json spec_to_json(const BaseGraphSpec& s) {
    return {{"x", s.x}, {"y", s.y}, {"r", s.r}, {"W", to_json(s.W)}};
}

[[nodiscard]] inline BaseGraphSpec spec_from_json(const Json& j) {
    return {j.at("x").get<std::int64_t>(), j.at("y").get<std::int64_t>(), j.at("r").get<std::int64_t>(),
            convex_set_from_json(j.at("W"))};
}

[[nodiscard]] inline Json sidecar(const BaseGraph& bg) {
    Json pairs = Json::array();
    for (const auto& p : bg.pairs) pairs.push_back({{"s", p.s}, {"t", p.t}, {"vector", p.vector_index}, {"path", p.path}});
    return {{"schema_version", kReportSchemaVersion}, {"kind", "base"}, {"spec", spec_to_json(bg.spec)}, {"pairs", pairs}};
}

[[nodiscard]] inline Json sidecar(const ComposedInstance& inst) {
    Json phi = Json::array();
    for (const auto& m : inst.phi.inner_pair) phi.push_back(m ? Json(*m) : Json(nullptr));
    Json pairs = Json::array();
    for (const auto& p : inst.pairs)
        pairs.push_back({{"s", p.s},
                         {"t", p.t},
                         {"outer_pair", p.outer_pair},
                         {"vector", p.vector_index},
                         {"inner_pair", p.inner_pair},
                         {"hops", p.hops},
                         {"path", p.path}});
    Json outer_edges = Json::array();
    for (const auto& e : inst.outer_edges) outer_edges.push_back({e.u, e.v});
    return {{"schema_version", kReportSchemaVersion},
            {"kind", "composed"},
            {"z", inst.z},
            {"pruned", inst.pruned},
            {"inner", spec_to_json(inst.inner.spec)},
            {"outer", spec_to_json(inst.outer.spec)},
            {"phi", {{"map", phi}, {"per_stripe", inst.phi.per_stripe}, {"trimmed_outer", inst.phi.trimmed_outer},
                     {"trimmed_inner", inst.phi.trimmed_inner}}},
            {"vertex_origin",
             {{"scheme", "copy-major"},
              {"n_inner", inst.n_inner},
              {"n_outer", inst.n_outer},
              {"subdivision_base", inst.n_outer * inst.n_inner},
              {"outer_edges", outer_edges}}},
            {"pairs", pairs},
            {"fingerprint", hex64(fingerprint(inst))}};
}

/// Base graph from its edge list and sidecar. S and T are recomputed from
/// the spec; graph and pairs are taken as stored so audits see the file
/// contents, not a rebuild.
[[nodiscard]] inline BaseGraph base_graph_from(const Graph& g, const Json& side) {
    require(side.value("kind", "") == "base", ErrorCode::ParseError, "sidecar is not a base-graph sidecar");
    BaseGraph bg;
    bg.spec = spec_from_json(side.at("spec"));
    bg.graph = g;
    for (std::int64_t col = 1; col <= bg.spec.r / 2; ++col)
        for (std::int64_t row = 1; row <= bg.spec.y / 2; ++row) bg.S.push_back(bg.id({col, row}));
    for (std::int64_t col = std::max<std::int64_t>(1, bg.spec.x - bg.spec.r); col <= bg.spec.x; ++col)
        for (std::int64_t row = 1; row <= bg.spec.y; ++row) bg.T.push_back(bg.id({col, row}));
    for (const auto& p : side.at("pairs"))
        bg.pairs.push_back({p.at("s").get<Vertex>(), p.at("t").get<Vertex>(), p.at("vector").get<std::size_t>(),
                            p.at("path").get<std::vector<Vertex>>()});
    return bg;
}

/// Composed instance from its edge list and sidecar. Inner and outer graphs
/// are rebuilt from their specs; z, phi and pairs come from the sidecar.
[[nodiscard]] inline ComposedInstance composed_from(const Graph& g, const Json& side) {
    require(side.value("kind", "") == "composed", ErrorCode::ParseError, "sidecar is not a composed-instance sidecar");
    ComposedInstance inst;
    inst.inner = build_base_graph(spec_from_json(side.at("inner")));
    inst.outer = build_base_graph(spec_from_json(side.at("outer")));
    inst.graph = g;
    inst.z = side.at("z").get<std::int64_t>();
    inst.pruned = side.value("pruned", true);
    inst.n_inner = inst.inner.graph.vertex_count();
    inst.n_outer = inst.outer.graph.vertex_count();
    inst.outer_edges = inst.outer.graph.edges();
    const auto& phi = side.at("phi");
    for (const auto& m : phi.at("map"))
        inst.phi.inner_pair.push_back(m.is_null() ? std::nullopt : std::optional<std::size_t>(m.get<std::size_t>()));
    inst.phi.per_stripe = phi.value("per_stripe", std::size_t{0});
    inst.phi.trimmed_outer = phi.value("trimmed_outer", std::size_t{0});
    inst.phi.trimmed_inner = phi.value("trimmed_inner", std::size_t{0});
    for (const auto& p : side.at("pairs")) {
        ComposedPair cp;
        cp.s = p.at("s").get<Vertex>();
        cp.t = p.at("t").get<Vertex>();
        cp.outer_pair = p.at("outer_pair").get<std::size_t>();
        cp.vector_index = p.at("vector").get<std::size_t>();
        cp.inner_pair = p.at("inner_pair").get<std::size_t>();
        cp.hops = p.at("hops").get<std::size_t>();
        cp.path = p.at("path").get<std::vector<Vertex>>();
        require(cp.inner_pair < inst.inner.pairs.size(), ErrorCode::ParseError, "inner pair index out of range");
        inst.pairs.push_back(std::move(cp));
    }
    return inst;
}

/// Writes `text` to `path`, or to stdout when path is "-".
inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    require(static_cast<bool>(os), ErrorCode::InvalidParams, "cannot write " + path);
    os << text;
}

[[nodiscard]] inline Json load_json(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(static_cast<bool>(is), ErrorCode::InvalidParams, "cannot read " + path);
    try {
        return Json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

/// Saves `graph` as `<stem>.edges` and `side` as `<stem>.json`.
inline void save_bundle(const std::string& stem, const Graph& graph, const Json& side) {
    save_edge_list(stem + ".edges", graph);
    write_text(stem + ".json", side.dump(2) + "\n");
}

} // namespace spanlab
