// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact additive-distortion auditor: max over pairs of d_H - d_G, computed
// from independent searches in G and H.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/parallel.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

struct DistortionReport {
    Dist max_additive = 0;
    VertexPair argmax_pair{0, 0};
    std::size_t pair_count_checked = 0;
    std::map<Dist, std::size_t> histogram;
    bool subgraph_ok = true; // meaningful only when the subgraph check was requested
};

namespace detail {

struct PartialDistortion {
    Dist max_additive = -1;
    VertexPair argmax{0, 0};
    std::size_t checked = 0;
    std::map<Dist, std::size_t> histogram;
};

inline void absorb_pair(PartialDistortion& acc, Vertex s, Vertex t, Dist dg, Dist dh) {
    if (!reachable(dg)) return;
    if (!reachable(dh))
        fail(ErrorCode::LostConnectivity,
             "pair (" + std::to_string(s) + "," + std::to_string(t) + ") reachable in G but not in H");
    if (dh < dg)
        fail(ErrorCode::Undershoot, "d_H(" + std::to_string(s) + "," + std::to_string(t) + ")=" + std::to_string(dh) +
                                        " < d_G=" + std::to_string(dg));
    const Dist err = dh - dg;
    ++acc.checked;
    ++acc.histogram[err];
    if (err > acc.max_additive) {
        acc.max_additive = err;
        acc.argmax = {s, t};
    }
}

} // namespace detail

/// Audits h against g. `pairs` restricts the audit to the given pairs; when
/// absent every unordered pair is checked. Pairs disconnected in g are
/// skipped; a pair connected in g but not in h is a hard failure.
[[nodiscard]] inline DistortionReport additive_distortion(const Graph& g, const Graph& h,
                                                          std::optional<std::span<const VertexPair>> pairs = std::nullopt,
                                                          bool require_subgraph = false) {
    require(g.vertex_count() == h.vertex_count(), ErrorCode::VertexSetMismatch,
            "|V(G)|=" + std::to_string(g.vertex_count()) + " but |V(H)|=" + std::to_string(h.vertex_count()));
    DistortionReport report;
    if (require_subgraph) {
        for (const auto& e : h.edges()) {
            if (!g.has_edge(e.u, e.v)) {
                report.subgraph_ok = false;
                fail(ErrorCode::NotSubgraph, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in G");
            }
        }
    }
    const auto n = g.vertex_count();
    // Group targets by source so each source costs one search per graph.
    std::vector<std::vector<Vertex>> targets;
    if (pairs) {
        targets.resize(n);
        for (const auto& [a, b] : *pairs) {
            require(a < n && b < n, ErrorCode::InvalidParams, "pair vertex out of range");
            targets[std::min(a, b)].push_back(std::max(a, b));
        }
    }
    std::vector<detail::PartialDistortion> partial(n);
    detail::parallel_for(n, [&](std::size_t si) {
        const auto s = static_cast<Vertex>(si);
        if (pairs && targets[s].empty()) return;
        std::vector<Dist> dg, dh;
        sssp_into(g, s, dg);
        sssp_into(h, s, dh);
        auto& acc = partial[s];
        if (pairs) {
            for (const Vertex t : targets[s]) detail::absorb_pair(acc, s, t, dg[t], dh[t]);
        } else {
            for (Vertex t = s + 1; t < n; ++t) detail::absorb_pair(acc, s, t, dg[t], dh[t]);
        }
    });
    bool any = false;
    for (const auto& p : partial) {
        report.pair_count_checked += p.checked;
        for (const auto& [k, c] : p.histogram) report.histogram[k] += c;
        if (p.checked > 0 && (!any || p.max_additive > report.max_additive)) {
            report.max_additive = p.max_additive;
            report.argmax_pair = p.argmax;
            any = true;
        }
    }
    return report;
}

/// Largest d_H(u, v) over the edges (u, v) of g; kUnreachable if some edge
/// endpoint pair is disconnected in h.
[[nodiscard]] inline Dist max_edge_stretch(const Graph& g, const Graph& h, Dist search_limit = -1) {
    Dist worst = 0;
    std::vector<Dist> dist;
    Vertex last_source = static_cast<Vertex>(-1);
    for (const auto& e : g.edges()) {
        if (e.u != last_source) {
            sssp_into(h, e.u, dist, search_limit);
            last_source = e.u;
        }
        if (!reachable(dist[e.v])) return kUnreachable;
        worst = std::max(worst, dist[e.v]);
    }
    return worst;
}

} // namespace spanlab
