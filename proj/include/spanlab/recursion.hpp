// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Recursion driver: level d runs the emulator / spanner procedure with
// alpha = a_{d-1} and uses level d-1 as the base for large clusters. Level 0
// is exact (the graph itself).

#include <memory>
#include <optional>
#include <vector>

#include "spanlab/distortion.hpp"
#include "spanlab/emulator.hpp"
#include "spanlab/random.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

struct RecursionOptions {
    bool audit_levels = false;               // exact distortion of every call, when within the cap
    std::size_t audit_cap = kDefaultAuditCap;
};

namespace detail {

template <class Config>
Config level_config(const Config& top, ScheduleKind kind, int depth, std::uint64_t call_index) {
    Config cfg = top;
    cfg.alpha = to_double(exponent_schedule(kind, depth - 1).values.back());
    cfg.depth = depth;
    cfg.seed = mix64(top.seed ^ (static_cast<std::uint64_t>(depth) << 48) ^ call_index);
    // Forced r / r_hat values describe the top level only.
    if (depth != top.depth) {
        cfg.r_override.reset();
        cfg.r_hat_override.reset();
        cfg.small_threshold_override.reset();
    }
    return cfg;
}

inline void audit_level(LevelRecord& rec, const Graph& g, const Graph& h, const RecursionOptions& opt) {
    if (opt.audit_levels && g.vertex_count() <= opt.audit_cap) rec.measured_distortion = additive_distortion(g, h).max_additive;
}

} // namespace detail

/// Emulator of the requested recursion depth. cfg.depth is overwritten.
[[nodiscard]] inline Emulator run_recursive_emulator(const Graph& g, int depth, EmulatorConfig cfg,
                                                     const RecursionOptions& opt = {}) {
    require(depth >= 0, ErrorCode::InvalidParams, "depth must be >= 0");
    if (depth == 0) {
        Emulator out;
        out.host_n = g.vertex_count();
        out.graph = Graph(g.vertex_count(), true);
        for (const auto& e : g.edges()) out.graph.add_edge(e.u, e.v, e.w);
        out.levels.push_back({0, g.vertex_count(), g.edge_count(), 0, 0, 0, opt.audit_levels ? std::optional<Dist>(0) : std::nullopt});
        return out;
    }
    cfg.depth = depth;
    auto log = std::make_shared<std::vector<LevelRecord>>();
    auto calls = std::make_shared<std::uint64_t>(0);
    const EmulatorConfig top = cfg;
    std::function<Graph(const Graph&, int)> solve = [&, log, calls](const Graph& sub, int d) -> Graph {
        if (d == 0 || sub.vertex_count() < 2) return sub;
        auto c = detail::level_config(top, ScheduleKind::Emulator, d, (*calls)++);
        c.base = [&solve, d](const Graph& inner) { return solve(inner, d - 1); };
        auto em = build_emulator(sub, c);
        auto rec = em.levels.back();
        detail::audit_level(rec, sub, em.graph, opt);
        log->push_back(rec);
        return std::move(em.graph);
    };
    auto c = detail::level_config(top, ScheduleKind::Emulator, depth, (*calls)++);
    c.base = [&solve, depth](const Graph& inner) { return solve(inner, depth - 1); };
    auto out = build_emulator(g, c);
    detail::audit_level(out.levels.back(), g, out.graph, opt);
    log->push_back(out.levels.back());
    out.levels = *log;
    return out;
}

/// Spanner of the requested recursion depth. cfg.depth is overwritten.
[[nodiscard]] inline SpannerResult run_recursive_spanner(const Graph& g, int depth, SpannerConfig cfg,
                                                         const RecursionOptions& opt = {}) {
    require(depth >= 0, ErrorCode::InvalidParams, "depth must be >= 0");
    if (depth == 0) {
        SpannerResult out;
        out.subgraph = g;
        out.levels.push_back({0, g.vertex_count(), g.edge_count(), 0, 0, 0, opt.audit_levels ? std::optional<Dist>(0) : std::nullopt});
        return out;
    }
    cfg.depth = depth;
    auto log = std::make_shared<std::vector<LevelRecord>>();
    auto calls = std::make_shared<std::uint64_t>(0);
    const SpannerConfig top = cfg;
    std::function<Graph(const Graph&, int)> solve = [&, log, calls](const Graph& sub, int d) -> Graph {
        if (d == 0 || sub.vertex_count() < 2) return sub;
        auto c = detail::level_config(top, ScheduleKind::Spanner, d, (*calls)++);
        c.base = [&solve, d](const Graph& inner) { return solve(inner, d - 1); };
        auto sp = build_spanner(sub, c);
        auto rec = sp.levels.back();
        detail::audit_level(rec, sub, sp.subgraph, opt);
        log->push_back(rec);
        return std::move(sp.subgraph);
    };
    auto c = detail::level_config(top, ScheduleKind::Spanner, depth, (*calls)++);
    c.base = [&solve, depth](const Graph& inner) { return solve(inner, depth - 1); };
    auto out = build_spanner(g, c);
    detail::audit_level(out.levels.back(), g, out.subgraph, opt);
    log->push_back(out.levels.back());
    out.levels = *log;
    return out;
}

} // namespace spanlab
