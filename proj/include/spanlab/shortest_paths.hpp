// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact shortest-path engines: BFS for unweighted graphs, Dijkstra for
// weighted ones. Every distance query in the library goes through here.

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/parallel.hpp"

namespace spanlab {

inline constexpr std::size_t kDefaultAuditCap = 5000;

struct DistanceVector {
    Vertex source = 0;
    std::vector<Dist> dist;

    [[nodiscard]] Dist operator[](Vertex v) const { return dist[v]; }
};

namespace detail {

inline void bfs_into(const Graph& g, Vertex s, std::vector<Dist>& dist, Dist limit = -1) {
    const auto n = g.vertex_count();
    dist.assign(n, kUnreachable);
    std::vector<Vertex> frontier;
    frontier.reserve(n);
    dist[s] = 0;
    frontier.push_back(s);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const Vertex u = frontier[head];
        const Dist du = dist[u];
        if (limit >= 0 && du >= limit) continue;
        for (const auto& nb : g.neighbors(u)) {
            if (dist[nb.to] == kUnreachable) {
                dist[nb.to] = du + 1;
                frontier.push_back(nb.to);
            }
        }
    }
}

inline void dijkstra_into(const Graph& g, Vertex s, std::vector<Dist>& dist, Dist limit = -1) {
    using Item = std::pair<Dist, Vertex>;
    dist.assign(g.vertex_count(), kUnreachable);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist[u]) continue;
        for (const auto& nb : g.neighbors(u)) {
            const Dist cand = du + nb.w;
            if (limit >= 0 && cand > limit) continue;
            if (dist[nb.to] == kUnreachable || cand < dist[nb.to]) {
                dist[nb.to] = cand;
                heap.emplace(cand, nb.to);
            }
        }
    }
}

} // namespace detail

/// Single-source distances into a caller-owned buffer (reused across calls
/// in hot loops). A non-negative `limit` stops the search beyond that radius;
/// vertices farther away are reported unreachable.
inline void sssp_into(const Graph& g, Vertex s, std::vector<Dist>& dist, Dist limit = -1) {
    require(s < g.vertex_count(), ErrorCode::InvalidParams, "source out of range");
    if (g.weighted())
        detail::dijkstra_into(g, s, dist, limit);
    else
        detail::bfs_into(g, s, dist, limit);
}

[[nodiscard]] inline DistanceVector sssp(const Graph& g, Vertex s) {
    DistanceVector out{s, {}};
    sssp_into(g, s, out.dist);
    return out;
}

/// Row-major all-pairs distance table.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, kUnreachable) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] Dist operator()(Vertex a, Vertex b) const { return data_[std::size_t{a} * n_ + b]; }
    [[nodiscard]] std::span<const Dist> row(Vertex a) const { return {data_.data() + std::size_t{a} * n_, n_}; }
    [[nodiscard]] std::span<Dist> row(Vertex a) { return {data_.data() + std::size_t{a} * n_, n_}; }

  private:
    std::size_t n_ = 0;
    std::vector<Dist> data_;
};

/// All-pairs distances, one search per source. Audit-only: refuses graphs
/// above `cap` vertices.
[[nodiscard]] inline DistanceMatrix apsp(const Graph& g, std::size_t cap = kDefaultAuditCap) {
    const auto n = g.vertex_count();
    require(n <= cap, ErrorCode::CapExceeded,
            "apsp on " + std::to_string(n) + " vertices exceeds audit cap " + std::to_string(cap));
    DistanceMatrix m(n);
    detail::parallel_for(n, [&](std::size_t s) {
        std::vector<Dist> buf;
        sssp_into(g, static_cast<Vertex>(s), buf);
        std::copy(buf.begin(), buf.end(), m.row(static_cast<Vertex>(s)).begin());
    });
    return m;
}

/// B(v, r): every vertex at distance at most r from v, sorted by id.
[[nodiscard]] inline std::vector<Vertex> ball(const Graph& g, Vertex v, Dist r) {
    require(v < g.vertex_count(), ErrorCode::InvalidParams, "ball center out of range");
    require(r >= 0, ErrorCode::InvalidParams, "ball radius must be non-negative");
    std::vector<Dist> dist;
    sssp_into(g, v, dist, r);
    std::vector<Vertex> out;
    for (Vertex u = 0; u < dist.size(); ++u)
        if (reachable(dist[u]) && dist[u] <= r) out.push_back(u);
    return out;
}

/// Number of shortest s->v paths for every v, saturating at UINT64_MAX.
/// Only equality with 1 matters to callers, so saturation never changes a
/// verdict.
struct PathCounts {
    std::vector<Dist> dist;
    std::vector<std::uint64_t> count;
};

[[nodiscard]] inline PathCounts count_shortest_paths(const Graph& g, Vertex s) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
    PathCounts out;
    const auto n = g.vertex_count();
    require(s < n, ErrorCode::InvalidParams, "source out of range");
    out.count.assign(n, 0);
    if (!g.weighted()) {
        out.dist.assign(n, kUnreachable);
        std::vector<Vertex> queue{s};
        out.dist[s] = 0;
        out.count[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            for (const auto& nb : g.neighbors(u)) {
                if (out.dist[nb.to] == kUnreachable) {
                    out.dist[nb.to] = out.dist[u] + 1;
                    queue.push_back(nb.to);
                }
                if (out.dist[nb.to] == out.dist[u] + 1) out.count[nb.to] = sat_add(out.count[nb.to], out.count[u]);
            }
        }
        return out;
    }
    sssp_into(g, s, out.dist);
    // Settle order by distance; counts flow along tight edges.
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
        if (reachable(out.dist[v])) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return out.dist[a] < out.dist[b]; });
    out.count[s] = 1;
    for (const Vertex u : order) {
        for (const auto& nb : g.neighbors(u)) {
            if (out.dist[nb.to] == out.dist[u] + nb.w) out.count[nb.to] = sat_add(out.count[nb.to], out.count[u]);
        }
    }
    return out;
}

/// Some shortest s->t path (smallest-id predecessor at every step), or an
/// empty vector when t is unreachable.
[[nodiscard]] inline std::vector<Vertex> any_shortest_path(const Graph& g, Vertex s, Vertex t) {
    std::vector<Dist> from_t;
    sssp_into(g, t, from_t);
    if (!reachable(from_t[s])) return {};
    std::vector<Vertex> path{s};
    Vertex cur = s;
    while (cur != t) {
        Vertex best = std::numeric_limits<Vertex>::max();
        for (const auto& nb : g.neighbors(cur))
            if (reachable(from_t[nb.to]) && from_t[nb.to] + nb.w == from_t[cur]) best = std::min(best, nb.to);
        cur = best;
        path.push_back(cur);
    }
    return path;
}

} // namespace spanlab
