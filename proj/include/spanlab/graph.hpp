// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Undirected simple graph with optional positive integer edge weights.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spanlab/error.hpp"

namespace spanlab {

using Vertex = std::uint32_t;
using Weight = std::int64_t;
using Dist = std::int64_t;

/// Distance sentinel for "no path". Never a valid distance.
inline constexpr Dist kUnreachable = -1;

[[nodiscard]] constexpr bool reachable(Dist d) noexcept { return d != kUnreachable; }

struct Edge {
    Vertex u = 0; // u < v after normalization
    Vertex v = 0;
    Weight w = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
    Vertex to;
    Weight w;
};

using VertexPair = std::pair<Vertex, Vertex>;

[[nodiscard]] constexpr std::uint64_t edge_key(Vertex a, Vertex b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t n, bool weighted = false) : adj_(n), weighted_(weighted) {}

    static Graph from_edges(std::size_t n, std::span<const Edge> edges, bool weighted = false) {
        Graph g(n, weighted);
        for (const auto& e : edges) {
            if (!g.add_edge(e.u, e.v, e.w))
                fail(ErrorCode::InvalidParams, "parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
        return g;
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return adj_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return index_.size(); }
    [[nodiscard]] bool weighted() const noexcept { return weighted_; }

    /// Inserts {u, v}. Returns false if the edge already existed; in that
    /// case the stored weight becomes min(old, w).
    bool add_edge(Vertex u, Vertex v, Weight w = 1) {
        check_vertex(u);
        check_vertex(v);
        require(u != v, ErrorCode::InvalidParams, "self-loop at " + std::to_string(u));
        require(w >= 1, ErrorCode::InvalidParams, "edge weight must be >= 1");
        require(weighted_ || w == 1, ErrorCode::InvalidParams, "weight on unweighted graph");
        const auto key = edge_key(u, v);
        if (auto it = index_.find(key); it != index_.end()) {
            if (w < it->second) {
                it->second = w;
                set_adjacent_weight(u, v, w);
                set_adjacent_weight(v, u, w);
            }
            return false;
        }
        index_.emplace(key, w);
        adj_[u].push_back({v, w});
        adj_[v].push_back({u, w});
        return true;
    }

    bool remove_edge(Vertex u, Vertex v) {
        if (index_.erase(edge_key(u, v)) == 0) return false;
        auto drop = [](std::vector<Neighbor>& list, Vertex x) {
            list.erase(std::find_if(list.begin(), list.end(), [x](const Neighbor& nb) { return nb.to == x; }));
        };
        drop(adj_[u], v);
        drop(adj_[v], u);
        return true;
    }

    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return index_.contains(edge_key(u, v)); }

    [[nodiscard]] std::optional<Weight> weight(Vertex u, Vertex v) const {
        if (auto it = index_.find(edge_key(u, v)); it != index_.end()) return it->second;
        return std::nullopt;
    }

    [[nodiscard]] std::span<const Neighbor> neighbors(Vertex v) const { return adj_[v]; }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adj_[v].size(); }

    /// All edges sorted by (min endpoint, max endpoint).
    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(index_.size());
        for (const auto& [key, w] : index_)
            out.push_back({static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu), w});
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count() == b.vertex_count() && a.weighted_ == b.weighted_ && a.index_ == b.index_;
    }

  private:
    void check_vertex(Vertex v) const {
        require(v < adj_.size(), ErrorCode::InvalidParams,
                "vertex " + std::to_string(v) + " out of range " + std::to_string(adj_.size()));
    }

    void set_adjacent_weight(Vertex from, Vertex to, Weight w) {
        for (auto& nb : adj_[from])
            if (nb.to == to) nb.w = w;
    }

    std::vector<std::vector<Neighbor>> adj_;
    std::unordered_map<std::uint64_t, Weight> index_;
    bool weighted_ = false;
};

/// True when every edge of `h` (ignoring weights) is an edge of `g`.
[[nodiscard]] inline bool is_subgraph(const Graph& h, const Graph& g) {
    if (h.vertex_count() != g.vertex_count()) return false;
    for (const auto& e : h.edges())
        if (!g.has_edge(e.u, e.v)) return false;
    return true;
}

} // namespace spanlab
