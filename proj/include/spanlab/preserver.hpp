// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Consistent shortest paths and pairwise distance preservers.
//
// Ties among shortest paths are broken by a symbolic perturbation: edge
// {a, b} (original ids, a < b) carries the secondary weight key = a*2^32 + b
// and a tertiary weight mix64(key). Paths are compared by (length, sum of
// keys, sum of mixed keys). Lower keys win first, so on C_4 the path 0-1-2 is
// preferred over 0-3-2. With the tertiary term the optimum is unique for
// all practical purposes, and unique optima are consistent: if two of them
// met, split and met again, one of the two detours would be strictly better
// for both. check_consistency verifies the property on every system.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/random.hpp"

namespace spanlab {

struct PathSystem {
    std::vector<std::vector<Vertex>> paths;
    std::vector<VertexPair> pair_of;

    void add(std::vector<Vertex> path) {
        pair_of.emplace_back(path.front(), path.back());
        paths.push_back(std::move(path));
    }
    [[nodiscard]] std::size_t size() const noexcept { return paths.size(); }
};

namespace detail {

struct PathLabel {
    Dist dist = 0;
    unsigned __int128 keys = 0;
    std::uint64_t mixed = 0;

    friend bool operator<(const PathLabel& a, const PathLabel& b) {
        return std::tie(a.dist, a.keys, a.mixed) < std::tie(b.dist, b.keys, b.mixed);
    }
    friend bool operator==(const PathLabel&, const PathLabel&) = default;
};

inline PathLabel edge_label(Vertex a, Vertex b, Weight w) {
    const std::uint64_t key = edge_key(a, b);
    // 40-bit tertiary term: sums over paths of up to 2^24 edges stay exact.
    return {w, key, mix64(key) >> 24};
}

/// Perturbed shortest-path tree from s. `to_parent` maps local ids to the
/// ids that define the perturbation (empty = identity). Returns predecessor
/// per vertex (self for s, max() for unreachable).
inline std::vector<Vertex> perturbed_tree(const Graph& g, Vertex s, std::span<const Vertex> to_parent) {
    constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
    const auto n = g.vertex_count();
    auto orig = [&](Vertex v) { return to_parent.empty() ? v : to_parent[v]; };
    std::vector<PathLabel> label(n);
    std::vector<Vertex> pred(n, kNone);
    std::vector<char> done(n, 0);
    using Item = std::pair<PathLabel, Vertex>;
    auto cmp = [](const Item& a, const Item& b) { return b.first < a.first || (a.first == b.first && b.second < a.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    pred[s] = s;
    heap.emplace(PathLabel{}, s);
    while (!heap.empty()) {
        const auto [lu, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const auto& nb : g.neighbors(u)) {
            if (done[nb.to]) continue;
            const auto el = edge_label(orig(u), orig(nb.to), nb.w);
            const PathLabel cand{lu.dist + el.dist, lu.keys + el.keys, lu.mixed + el.mixed};
            if (pred[nb.to] == kNone || cand < label[nb.to]) {
                label[nb.to] = cand;
                pred[nb.to] = u;
                heap.emplace(cand, nb.to);
            }
        }
    }
    return pred;
}

inline std::vector<Vertex> walk_tree(std::span<const Vertex> pred, Vertex s, Vertex t) {
    std::vector<Vertex> path{t};
    while (path.back() != s) path.push_back(pred[path.back()]);
    return path; // t ... s
}

} // namespace detail

/// Canonical paths from one source to many targets. Because the perturbed
/// optimum is unique, the tree rooted at s yields the same paths as
/// per-pair queries.
class CanonicalTree {
  public:
    CanonicalTree(const Graph& g, Vertex s, std::span<const Vertex> to_parent = {})
        : source_(s), pred_(detail::perturbed_tree(g, s, to_parent)) {}

    [[nodiscard]] bool reaches(Vertex t) const { return pred_[t] != std::numeric_limits<Vertex>::max(); }

    /// Path from the source to t.
    [[nodiscard]] std::vector<Vertex> path_to(Vertex t) const {
        if (!reaches(t))
            fail(ErrorCode::Unreachable, std::to_string(source_) + " and " + std::to_string(t) + " are disconnected");
        auto path = detail::walk_tree(pred_, source_, t);
        std::reverse(path.begin(), path.end());
        return path;
    }

  private:
    Vertex source_;
    std::vector<Vertex> pred_;
};

/// The canonical shortest (s, t)-path, listed from s to t. The path for
/// (t, s) is its reverse. `to_parent` relabels local ids to the ids used for
/// tie-breaking (pass the map of an induced subgraph to stay consistent with
/// paths computed in the host graph).
[[nodiscard]] inline std::vector<Vertex> consistent_shortest_path(const Graph& g, Vertex s, Vertex t,
                                                                  std::span<const Vertex> to_parent = {}) {
    require(s < g.vertex_count() && t < g.vertex_count(), ErrorCode::InvalidParams, "path endpoint out of range");
    const Vertex lo = std::min(s, t), hi = std::max(s, t);
    const auto pred = detail::perturbed_tree(g, lo, to_parent);
    if (pred[hi] == std::numeric_limits<Vertex>::max())
        fail(ErrorCode::Unreachable, std::to_string(s) + " and " + std::to_string(t) + " are disconnected");
    auto path = detail::walk_tree(pred, lo, hi); // hi ... lo
    if (path.front() != s) std::reverse(path.begin(), path.end());
    return path;
}

struct Preserver {
    Graph graph;
    PathSystem paths;
    double size_bound = 0; // n + sqrt(n) * |pairs|, informational
};

/// Union of the canonical paths of all demand pairs. One perturbed search
/// per distinct lower endpoint.
[[nodiscard]] inline Preserver build_preserver(const Graph& g, std::span<const VertexPair> pairs) {
    const auto n = g.vertex_count();
    Preserver out{Graph(n, g.weighted()), {}, static_cast<double>(n) + std::sqrt(static_cast<double>(n)) * pairs.size()};
    std::map<Vertex, std::vector<std::size_t>> by_source;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        require(a < n && b < n, ErrorCode::InvalidParams, "pair vertex out of range");
        by_source[std::min(a, b)].push_back(i);
    }
    std::vector<std::vector<Vertex>> paths(pairs.size());
    for (const auto& [lo, idxs] : by_source) {
        const auto pred = detail::perturbed_tree(g, lo, {});
        for (const auto i : idxs) {
            const auto [s, t] = pairs[i];
            const Vertex hi = std::max(s, t);
            if (pred[hi] == std::numeric_limits<Vertex>::max())
                fail(ErrorCode::Unreachable, std::to_string(s) + " and " + std::to_string(t) + " are disconnected");
            auto path = detail::walk_tree(pred, lo, hi);
            if (path.front() != s) std::reverse(path.begin(), path.end());
            paths[i] = std::move(path);
        }
    }
    for (auto& path : paths) {
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            out.graph.add_edge(path[k], path[k + 1], *g.weight(path[k], path[k + 1]));
        out.paths.add(std::move(path));
    }
    return out;
}

struct ConsistencyViolation {
    std::size_t first = 0;
    std::size_t second = 0;
    std::string reason;
};

struct ConsistencyReport {
    std::size_t paths_checked = 0;
    std::vector<ConsistencyViolation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Every two paths must share either nothing or one contiguous subpath.
///
/// Equivalent formulation used here: for each ordered vertex pair (a, b) on
/// a common path, all paths containing both agree on the vertex that follows
/// a toward b. Agreement on every such step forces identical a..b segments,
/// and identical segments between the extreme shared vertices make the
/// shared set contiguous. Cost is sum of |path|^2 instead of pairs of paths.
/// `max_violations` bounds the witness list.
[[nodiscard]] inline ConsistencyReport check_consistency(const PathSystem& ps, std::size_t max_violations = 64) {
    ConsistencyReport rep;
    rep.paths_checked = ps.paths.size();
    struct Step {
        Vertex next;
        std::size_t owner;
    };
    std::unordered_map<std::uint64_t, Step> step;
    std::set<std::pair<std::size_t, std::size_t>> reported;
    auto record = [&](Vertex a, Vertex b, Vertex next, std::size_t owner) {
        const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        const auto [it, fresh] = step.try_emplace(key, Step{next, owner});
        if (fresh || it->second.next == next) return;
        if (rep.violations.size() >= max_violations || !reported.emplace(it->second.owner, owner).second) return;
        rep.violations.push_back({it->second.owner, owner,
                                  "paths leave " + std::to_string(a) + " toward " + std::to_string(b) + " via " +
                                      std::to_string(it->second.next) + " and " + std::to_string(next)});
    };
    for (std::size_t p = 0; p < ps.paths.size(); ++p) {
        const auto& path = ps.paths[p];
        for (std::size_t i = 0; i < path.size(); ++i)
            for (std::size_t j = i + 1; j < path.size(); ++j) {
                record(path[i], path[j], path[i + 1], p);
                record(path[j], path[i], path[j - 1], p);
            }
    }
    return rep;
}

} // namespace spanlab
