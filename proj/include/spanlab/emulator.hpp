// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Recursive additive emulator: multiplicative baseline, sampling, cluster
// decomposition, exact small clusters, recursion into large clusters, then
// greedy path buying with weighted shortcut edges.

#include <functional>
#include <optional>
#include <vector>

#include "spanlab/clustering.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/path_buying.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/shortest_paths.hpp"
#include "spanlab/subgraph.hpp"

namespace spanlab {

/// Base procedure for large clusters: receives G[cluster] and returns an
/// emulator over the same local vertex ids (weighted or unweighted).
using EmulatorBase = std::function<Graph(const Graph&)>;

struct EmulatorConfig : PathBuyingConfig {
    EmulatorConfig() {
        alpha = 0.25;
        greedy_stop_multiplier = 16;
    }
    EmulatorBase base; // empty = exact: the cluster graph itself
    int depth = 1;     // recorded in level logs
};

struct EmulatorStats {
    std::size_t baseline_edges = 0;
    std::size_t small_cluster_edges = 0;
    std::size_t recursive_edges = 0;
    std::size_t greedy_edges = 0;
    std::size_t greedy_rounds = 0;
    std::size_t sampled = 0;
    Dist sample_gap = 0; // max distance to V'; a gap <= r is the w.h.p. event
    std::size_t clusters = 0;
    std::size_t small_clusters = 0;
    std::size_t large_clusters = 0;
    Dist r = 0;
    Dist r_hat = 0;
};

struct Emulator {
    std::size_t host_n = 0;
    Graph graph{0, true};
    EmulatorStats stats;
    std::vector<LevelRecord> levels;
    GreedyOutcome greedy;
};

/// Greedy phase on its own: adds edge (x, y) with weight d_G(x, y).
inline GreedyOutcome emulator_greedy_phase(const Graph& g, Graph& h, Dist r_hat, Dist stop_mult, Dist prefix_mult) {
    require(h.weighted(), ErrorCode::InvalidParams, "emulator must be a weighted graph");
    return greedy_phase(g, h, r_hat, stop_mult, prefix_mult,
                        [&](const std::vector<Vertex>& path, std::size_t ix, std::size_t iy) -> std::size_t {
                            Dist w = 0;
                            for (std::size_t i = ix; i < iy; ++i) w += *g.weight(path[i], path[i + 1]);
                            return h.add_edge(path[ix], path[iy], w) ? 1 : 0;
                        });
}

[[nodiscard]] inline Emulator build_emulator(const Graph& g, const EmulatorConfig& cfg) {
    detail::validate(cfg);
    require(!g.weighted(), ErrorCode::InvalidParams, "emulator input must be unweighted");
    const auto n = g.vertex_count();
    require(n >= 2, ErrorCode::InvalidParams, "emulator needs n >= 2");
    Emulator out;
    out.host_n = n;
    out.graph = Graph(n, true);
    auto& h = out.graph;
    auto& st = out.stats;

    // (1) multiplicative baseline
    for (const auto& e : multiplicative_spanner(g).edges())
        if (h.add_edge(e.u, e.v, 1)) ++st.baseline_edges;

    // (2) radius and sampling
    st.r = cfg.r_override ? *cfg.r_override : radius_for(ScheduleKind::Emulator, n, cfg.alpha);
    const auto sample = detail::sample_vertices(g, st.r, cfg);
    st.sampled = sample.count;
    st.sample_gap = sample.max_gap;

    // (3) clusters and r_hat
    const auto dec = decompose(g, st.r, cfg.eps);
    st.r_hat = detail::r_hat_for(n, st.r, cfg);
    st.clusters = dec.size();
    const double small_limit = cfg.small_threshold_override
                                   ? *cfg.small_threshold_override
                                   : static_cast<double>(st.r) * static_cast<double>(st.r) / detail::log2_ceil_sq(n);

    std::vector<Dist> dist;
    for (std::size_t i = 0; i < dec.size(); ++i) {
        const auto& cluster = dec.clusters[i];
        if (static_cast<double>(cluster.size()) <= small_limit) {
            // (4) small: all sampled pairs, weight = global d_G
            ++st.small_clusters;
            std::vector<Vertex> chosen;
            for (const Vertex v : cluster)
                if (sample.in[v]) chosen.push_back(v);
            for (std::size_t a = 0; a < chosen.size(); ++a) {
                sssp_into(g, chosen[a], dist);
                for (std::size_t b = a + 1; b < chosen.size(); ++b)
                    if (h.add_edge(chosen[a], chosen[b], dist[chosen[b]])) ++st.small_cluster_edges;
            }
        } else {
            // (5) large: base procedure on G[cluster]
            ++st.large_clusters;
            const auto sub = induced_subgraph(g, cluster);
            const Graph sub_h = cfg.base ? cfg.base(sub.graph) : sub.graph;
            require(sub_h.vertex_count() == sub.graph.vertex_count(), ErrorCode::VertexSetMismatch,
                    "base emulator changed the vertex count");
            for (const auto& e : sub_h.edges())
                if (h.add_edge(sub.to_parent[e.u], sub.to_parent[e.v], e.w)) ++st.recursive_edges;
        }
    }

    out.greedy = emulator_greedy_phase(g, h, st.r_hat, cfg.greedy_stop_multiplier, cfg.prefix_err_multiplier);
    st.greedy_edges = out.greedy.edges_added;
    st.greedy_rounds = out.greedy.rounds;
    out.levels.push_back({cfg.depth, n, h.edge_count(), cfg.alpha, st.r, st.r_hat, std::nullopt});
    return out;
}

} // namespace spanlab
