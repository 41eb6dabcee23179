// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Recursive additive spanner. Same skeleton as the emulator, but small
// clusters get canonical shortest paths between sampled vertices and the
// greedy phase inserts the canonical (x, y)-path instead of a weighted edge.

#include <functional>
#include <optional>
#include <vector>

#include "spanlab/clustering.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/path_buying.hpp"
#include "spanlab/preserver.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/shortest_paths.hpp"
#include "spanlab/subgraph.hpp"

namespace spanlab {

/// Base procedure for large clusters: receives G[cluster] and returns a
/// subgraph of it over the same local ids.
using SpannerBase = std::function<Graph(const Graph&)>;

struct SpannerConfig : PathBuyingConfig {
    SpannerConfig() {
        alpha = 3.0 / 7.0;
        greedy_stop_multiplier = 32;
    }
    SpannerBase base;
    // Small-cluster test |cluster| <= r^(4/3) / ceil(log2 n)^2; with
    // figure_threshold the log factor is dropped.
    bool figure_threshold = false;
    int depth = 1;
};

struct SpannerStats {
    std::size_t baseline_edges = 0;
    std::size_t small_cluster_edges = 0;
    std::size_t small_cluster_paths = 0;
    std::size_t recursive_edges = 0;
    std::size_t greedy_edges = 0;
    std::size_t greedy_paths = 0;
    std::size_t greedy_rounds = 0;
    std::size_t sampled = 0;
    Dist sample_gap = 0;
    std::size_t clusters = 0;
    std::size_t small_clusters = 0;
    std::size_t large_clusters = 0;
    Dist r = 0;
    Dist r_hat = 0;
};

struct SpannerResult {
    Graph subgraph;
    PathSystem path_system; // small-cluster and greedy paths of this level
    SpannerStats stats;
    std::vector<LevelRecord> levels;
    GreedyOutcome greedy;
};

namespace detail {

inline std::size_t add_path(Graph& h, std::span<const Vertex> path) {
    std::size_t added = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) added += h.add_edge(path[i], path[i + 1]) ? 1 : 0;
    return added;
}

} // namespace detail

/// Greedy phase on its own: inserts the canonical (x, y)-path of G, which is
/// the (x, y) stretch of the canonical (s, t)-path. Paths go to `ps` if given.
inline GreedyOutcome spanner_greedy_phase(const Graph& g, Graph& h, Dist r_hat, Dist stop_mult, Dist prefix_mult,
                                          PathSystem* ps = nullptr) {
    require(!h.weighted(), ErrorCode::InvalidParams, "spanner must be unweighted");
    auto out = greedy_phase(g, h, r_hat, stop_mult, prefix_mult,
                            [&](const std::vector<Vertex>& path, std::size_t ix, std::size_t iy) -> std::size_t {
                                std::vector<Vertex> piece(path.begin() + static_cast<std::ptrdiff_t>(ix),
                                                          path.begin() + static_cast<std::ptrdiff_t>(iy) + 1);
                                const auto added = detail::add_path(h, piece);
                                if (ps) ps->add(std::move(piece));
                                return added;
                            });
    out.paths_added = out.rounds;
    return out;
}

[[nodiscard]] inline SpannerResult build_spanner(const Graph& g, const SpannerConfig& cfg) {
    detail::validate(cfg);
    require(!g.weighted(), ErrorCode::InvalidParams, "spanner input must be unweighted");
    const auto n = g.vertex_count();
    require(n >= 2, ErrorCode::InvalidParams, "spanner needs n >= 2");
    SpannerResult out;
    out.subgraph = Graph(n);
    auto& h = out.subgraph;
    auto& st = out.stats;

    for (const auto& e : multiplicative_spanner(g).edges())
        if (h.add_edge(e.u, e.v)) ++st.baseline_edges;

    st.r = cfg.r_override ? *cfg.r_override : radius_for(ScheduleKind::Spanner, n, cfg.alpha);
    const auto sample = detail::sample_vertices(g, st.r, cfg);
    st.sampled = sample.count;
    st.sample_gap = sample.max_gap;

    const auto dec = decompose(g, st.r, cfg.eps);
    st.r_hat = detail::r_hat_for(n, st.r, cfg);
    st.clusters = dec.size();
    double small_limit = std::pow(static_cast<double>(st.r), 4.0 / 3.0);
    if (!cfg.figure_threshold) small_limit /= detail::log2_ceil_sq(n);
    if (cfg.small_threshold_override) small_limit = *cfg.small_threshold_override;

    std::vector<Dist> dist;
    for (std::size_t i = 0; i < dec.size(); ++i) {
        const auto& cluster = dec.clusters[i];
        if (static_cast<double>(cluster.size()) <= small_limit) {
            ++st.small_clusters;
            const auto sub = induced_subgraph(g, cluster);
            // local index of each cluster vertex
            auto local = [&](Vertex v) {
                return static_cast<Vertex>(std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), v) -
                                           sub.to_parent.begin());
            };
            for (const Vertex s : dec.cores[i]) {
                if (!sample.in[s]) continue;
                sssp_into(g, s, dist, st.r);
                const CanonicalTree tree(sub.graph, local(s), sub.to_parent);
                for (const Vertex t : cluster) {
                    if (t == s || !sample.in[t] || !reachable(dist[t]) || dist[t] > st.r) continue;
                    auto local_path = tree.path_to(local(t));
                    require(static_cast<Dist>(local_path.size()) - 1 == dist[t], ErrorCode::SpecViolation,
                            "small-cluster path is not a shortest path of G");
                    std::vector<Vertex> path;
                    path.reserve(local_path.size());
                    for (const Vertex v : local_path) path.push_back(sub.to_parent[v]);
                    st.small_cluster_edges += detail::add_path(h, path);
                    ++st.small_cluster_paths;
                    out.path_system.add(std::move(path));
                }
            }
        } else {
            ++st.large_clusters;
            const auto sub = induced_subgraph(g, cluster);
            const Graph sub_h = cfg.base ? cfg.base(sub.graph) : sub.graph;
            require(sub_h.vertex_count() == sub.graph.vertex_count(), ErrorCode::VertexSetMismatch,
                    "base spanner changed the vertex count");
            for (const auto& e : sub_h.edges()) {
                require(sub.graph.has_edge(e.u, e.v), ErrorCode::NotSubgraph, "base spanner added a non-edge");
                if (h.add_edge(sub.to_parent[e.u], sub.to_parent[e.v])) ++st.recursive_edges;
            }
        }
    }

    out.greedy = spanner_greedy_phase(g, h, st.r_hat, cfg.greedy_stop_multiplier, cfg.prefix_err_multiplier,
                                      &out.path_system);
    st.greedy_edges = out.greedy.edges_added;
    st.greedy_paths = out.greedy.paths_added;
    st.greedy_rounds = out.greedy.rounds;
    out.levels.push_back({cfg.depth, n, h.edge_count(), cfg.alpha, st.r, st.r_hat, std::nullopt});
    return out;
}

} // namespace spanlab
