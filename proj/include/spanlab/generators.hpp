// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/random.hpp"

namespace spanlab {

enum class GraphKind { Gnm, Cycle, Path, Grid, Tree };

struct GenParams {
    std::size_t n = 0;     // gnm, cycle, path, tree
    std::size_t m = 0;     // gnm
    std::size_t rows = 0;  // grid
    std::size_t cols = 0;  // grid
};

[[nodiscard]] inline std::optional<GraphKind> parse_graph_kind(std::string_view s) {
    if (s == "gnm") return GraphKind::Gnm;
    if (s == "cycle") return GraphKind::Cycle;
    if (s == "path") return GraphKind::Path;
    if (s == "grid") return GraphKind::Grid;
    if (s == "tree") return GraphKind::Tree;
    return std::nullopt;
}

namespace detail {

// Index -> pair in the lexicographic enumeration of {(u, v) : u < v < n}.
inline VertexPair pair_from_index(std::uint64_t idx, std::uint64_t n) {
    std::uint64_t u = 0;
    while (idx >= n - 1 - u) {
        idx -= n - 1 - u;
        ++u;
    }
    return {static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + idx)};
}

inline Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::uint64_t total = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
    require(m <= total, ErrorCode::InvalidParams,
            "gnm: m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(total));
    // Floyd's sampling: m distinct indices, uniformly.
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m * 2);
    for (std::uint64_t j = total - m; j < total; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> picked(chosen.begin(), chosen.end());
    std::sort(picked.begin(), picked.end());
    Graph g(n);
    for (auto idx : picked) {
        const auto [u, v] = pair_from_index(idx, n);
        g.add_edge(u, v);
    }
    return g;
}

} // namespace detail

/// Deterministic desk-scale graph generator.
[[nodiscard]] inline Graph gen_graph(GraphKind kind, const GenParams& p, std::uint64_t seed = 0) {
    switch (kind) {
    case GraphKind::Gnm:
        return detail::gnm(p.n, p.m, seed);
    case GraphKind::Cycle: {
        require(p.n >= 3, ErrorCode::InvalidParams, "cycle needs n >= 3");
        Graph g(p.n);
        for (std::size_t i = 0; i < p.n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % p.n));
        return g;
    }
    case GraphKind::Path: {
        require(p.n >= 1, ErrorCode::InvalidParams, "path needs n >= 1");
        Graph g(p.n);
        for (std::size_t i = 0; i + 1 < p.n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
        return g;
    }
    case GraphKind::Grid: {
        require(p.rows >= 1 && p.cols >= 1, ErrorCode::InvalidParams, "grid needs rows, cols >= 1");
        Graph g(p.rows * p.cols);
        auto id = [&](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * p.cols + c); };
        for (std::size_t r = 0; r < p.rows; ++r)
            for (std::size_t c = 0; c < p.cols; ++c) {
                if (c + 1 < p.cols) g.add_edge(id(r, c), id(r, c + 1));
                if (r + 1 < p.rows) g.add_edge(id(r, c), id(r + 1, c));
            }
        return g;
    }
    case GraphKind::Tree: {
        // Random recursive tree: vertex i attaches to a uniform earlier vertex.
        require(p.n >= 1, ErrorCode::InvalidParams, "tree needs n >= 1");
        Rng rng(seed);
        Graph g(p.n);
        for (std::size_t i = 1; i < p.n; ++i) g.add_edge(static_cast<Vertex>(rng.below(i)), static_cast<Vertex>(i));
        return g;
    }
    }
    fail(ErrorCode::InvalidParams, "unknown graph kind");
}

[[nodiscard]] inline Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    return gen_graph(GraphKind::Gnm, {.n = n, .m = m}, seed);
}

/// `count` distinct unordered pairs {s, t}, s != t, drawn with the seed.
[[nodiscard]] inline std::vector<VertexPair> random_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
    const std::uint64_t total = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
    require(count <= total, ErrorCode::InvalidParams, "too many pairs requested");
    Rng rng(seed);
    std::unordered_set<std::uint64_t> seen;
    std::vector<VertexPair> out;
    while (out.size() < count) {
        auto a = static_cast<Vertex>(rng.below(n));
        auto b = static_cast<Vertex>(rng.below(n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.insert(edge_key(a, b)).second) out.emplace_back(a, b);
    }
    return out;
}

} // namespace spanlab
