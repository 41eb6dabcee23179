// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <vector>

#include "spanlab/graph.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent; // new id -> old id, increasing
};

/// G[S] relabeled to 0..|S|-1 in increasing order of the original ids.
[[nodiscard]] inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<Vertex> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    constexpr Vertex kAbsent = static_cast<Vertex>(-1);
    std::vector<Vertex> local(g.vertex_count(), kAbsent);
    for (Vertex i = 0; i < subset.size(); ++i) {
        require(subset[i] < g.vertex_count(), ErrorCode::InvalidParams, "subset vertex out of range");
        local[subset[i]] = i;
    }
    InducedSubgraph out{Graph(subset.size(), g.weighted()), subset};
    for (Vertex i = 0; i < subset.size(); ++i)
        for (const auto& nb : g.neighbors(subset[i]))
            if (local[nb.to] != kAbsent && subset[i] < nb.to) out.graph.add_edge(i, local[nb.to], nb.w);
    return out;
}

/// Default stretch parameter k = ceil(log2(max(n, 2))).
[[nodiscard]] inline std::size_t default_stretch_parameter(std::size_t n) { return ceil_log2(std::max<std::size_t>(n, 2)); }

/// Greedy (2k-1)-spanner: scan edges by (min endpoint, max endpoint) and
/// keep (u, v) iff the current spanner has d_H(u, v) > 2k - 1.
[[nodiscard]] inline Graph multiplicative_spanner(const Graph& g, std::size_t k) {
    require(!g.weighted(), ErrorCode::InvalidParams, "multiplicative spanner expects an unweighted graph");
    require(k >= 1, ErrorCode::InvalidParams, "stretch parameter k must be >= 1");
    const Dist threshold = static_cast<Dist>(2 * k - 1);
    Graph h(g.vertex_count());
    std::vector<Dist> dist;
    for (const auto& e : g.edges()) {
        sssp_into(h, e.u, dist, threshold);
        if (!reachable(dist[e.v]) || dist[e.v] > threshold) h.add_edge(e.u, e.v);
    }
    return h;
}

[[nodiscard]] inline Graph multiplicative_spanner(const Graph& g) {
    return multiplicative_spanner(g, default_stretch_parameter(g.vertex_count()));
}

} // namespace spanlab
