// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact structural audits of base graphs and composed instances, the
// distance inequality for inner graphs, and the deletion / pigeonhole
// stretch experiments. Every audit is a pure function of its input.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spanlab/edge_list.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/lower_bound.hpp"
#include "spanlab/parallel.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

/// Structural checks run one search per source rather than all pairs, so
/// they accept far larger graphs than the APSP cap.
inline constexpr std::size_t kStructuralAuditCap = 2'000'000;

struct AuditCheck {
    std::string name;
    bool pass = true;
    std::string witness; // empty on pass
    std::map<std::string, double> measured;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    std::uint64_t fingerprint = 0;

    [[nodiscard]] bool ok() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.pass; });
    }
    [[nodiscard]] const AuditCheck* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// FNV-1a, 64 bit.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (const unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

[[nodiscard]] inline std::uint64_t fingerprint(const Graph& g) { return fnv1a64(to_edge_list_string(g)); }

[[nodiscard]] inline std::uint64_t fingerprint(const BaseGraph& bg) {
    auto h = fingerprint(bg.graph);
    for (const auto& p : bg.pairs) {
        h = fnv1a64("pair " + std::to_string(p.s) + " " + std::to_string(p.t) + " " + std::to_string(p.vector_index) + "\n", h);
    }
    return h;
}

[[nodiscard]] inline std::uint64_t fingerprint(const ComposedInstance& inst) {
    auto h = fnv1a64("z " + std::to_string(inst.z) + "\n", fingerprint(inst.graph));
    for (const auto& p : inst.pairs) {
        std::string line = "pair";
        for (const auto v : p.path) line += " " + std::to_string(v);
        h = fnv1a64(line + "\n", h);
    }
    return h;
}

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

namespace detail {

inline std::string edge_name(Vertex a, Vertex b) { return "{" + std::to_string(a) + "," + std::to_string(b) + "}"; }

/// Owner of each edge across a family of paths. Reports the first edge owned
/// twice, the first path edge missing from g, and the first graph edge owned
/// by no path.
struct Ownership {
    std::unordered_map<std::uint64_t, std::size_t> owner;
    std::optional<std::string> collision;
    std::optional<std::string> missing;
    std::optional<std::string> orphan;
    std::size_t path_edges = 0;
};

template <class PathOf>
Ownership edge_ownership(const Graph& g, std::size_t count, PathOf&& path_of) {
    Ownership own;
    for (std::size_t i = 0; i < count; ++i) {
        const std::vector<Vertex>& path = path_of(i);
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            ++own.path_edges;
            const auto key = edge_key(path[k], path[k + 1]);
            if (!own.missing && !g.has_edge(path[k], path[k + 1]))
                own.missing = "edge " + edge_name(path[k], path[k + 1]) + " of path " + std::to_string(i) + " is not in the graph";
            const auto [it, fresh] = own.owner.try_emplace(key, i);
            if (!fresh && !own.collision)
                own.collision = "edge " + edge_name(path[k], path[k + 1]) + " on paths " + std::to_string(it->second) +
                                " and " + std::to_string(i);
        }
    }
    for (const auto& e : g.edges())
        if (!own.owner.contains(edge_key(e.u, e.v))) {
            own.orphan = "edge " + edge_name(e.u, e.v) + " lies on no canonical path";
            break;
        }
    return own;
}

/// For each pair: the number of shortest s-t paths is 1 and its length is
/// the canonical length. One counting search per distinct source.
template <class Pairs>
AuditCheck unique_shortest_paths(const Graph& g, const Pairs& pairs) {
    AuditCheck c{"unique_shortest_paths", true, {}, {}};
    std::map<Vertex, std::vector<std::size_t>> by_source;
    for (std::size_t i = 0; i < pairs.size(); ++i) by_source[pairs[i].s].push_back(i);
    std::vector<std::pair<Vertex, std::vector<std::size_t>>> groups(by_source.begin(), by_source.end());
    std::vector<std::string> first_bad(groups.size());
    std::vector<std::size_t> bad(groups.size(), 0);
    detail::parallel_for(groups.size(), [&](std::size_t gi) {
        const auto counts = count_shortest_paths(g, groups[gi].first);
        for (const auto i : groups[gi].second) {
            const auto& p = pairs[i];
            const auto len = static_cast<Dist>(p.path.size()) - 1;
            if (counts.dist[p.t] == len && counts.count[p.t] == 1) continue;
            if (bad[gi]++ == 0)
                first_bad[gi] = "pair " + std::to_string(i) + " (" + std::to_string(p.s) + "->" + std::to_string(p.t) +
                                "): distance " + std::to_string(counts.dist[p.t]) + ", canonical length " +
                                std::to_string(len) + ", shortest paths " + std::to_string(counts.count[p.t]);
        }
    });
    std::size_t total_bad = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (bad[gi] && c.pass) c.witness = first_bad[gi];
        if (bad[gi]) c.pass = false;
        total_bad += bad[gi];
    }
    c.measured["pairs"] = static_cast<double>(pairs.size());
    c.measured["failures"] = static_cast<double>(total_bad);
    return c;
}

} // namespace detail

/// Vertex count, pair count, edge-disjointness, edges-only-on-paths, path
/// length bounds and uniqueness of every canonical path as a shortest path.
[[nodiscard]] inline AuditReport check_base_graph_properties(const BaseGraph& bg, std::size_t cap = kStructuralAuditCap) {
    const auto& g = bg.graph;
    require(g.vertex_count() <= cap, ErrorCode::CapExceeded,
            "base graph with " + std::to_string(g.vertex_count()) + " vertices exceeds cap " + std::to_string(cap));
    const auto& sp = bg.spec;
    AuditReport rep;
    {
        AuditCheck c{"vertex_count", g.vertex_count() == static_cast<std::size_t>(sp.x * sp.y), {}, {}};
        c.measured["vertices"] = static_cast<double>(g.vertex_count());
        c.measured["expected"] = static_cast<double>(sp.x * sp.y);
        if (!c.pass) c.witness = "graph has " + std::to_string(g.vertex_count()) + " vertices";
        rep.checks.push_back(std::move(c));
    }
    {
        const auto expected = static_cast<std::size_t>(sp.r / 2) * static_cast<std::size_t>(sp.y / 2) * sp.W.vectors.size();
        AuditCheck c{"pair_count", bg.pairs.size() == expected && bg.pairs.size() == bg.S.size() * sp.W.vectors.size(), {}, {}};
        c.measured["pairs"] = static_cast<double>(bg.pairs.size());
        c.measured["expected"] = static_cast<double>(expected);
        if (!c.pass) c.witness = std::to_string(bg.pairs.size()) + " pairs, |S||W| = " + std::to_string(expected);
        rep.checks.push_back(std::move(c));
    }
    const auto own = detail::edge_ownership(g, bg.pairs.size(), [&](std::size_t i) -> const std::vector<Vertex>& {
        return bg.pairs[i].path;
    });
    {
        AuditCheck c{"edge_disjoint", !own.collision && !own.missing, own.collision.value_or(own.missing.value_or("")), {}};
        rep.checks.push_back(std::move(c));
    }
    {
        AuditCheck c{"edges_on_paths", !own.orphan && own.path_edges == g.edge_count(), own.orphan.value_or(""), {}};
        c.measured["edges"] = static_cast<double>(g.edge_count());
        c.measured["path_edges"] = static_cast<double>(own.path_edges);
        if (c.pass && own.path_edges != g.edge_count()) c.witness = "|E| differs from the sum of path lengths";
        rep.checks.push_back(std::move(c));
    }
    {
        // (x - 2r) / r <= |pi| <= 2x / r
        AuditCheck c{"path_lengths", true, {}, {}};
        std::size_t lo = std::numeric_limits<std::size_t>::max(), hi = 0;
        for (std::size_t i = 0; i < bg.pairs.size(); ++i) {
            const auto len = static_cast<std::int64_t>(bg.pairs[i].path.size()) - 1;
            lo = std::min<std::size_t>(lo, static_cast<std::size_t>(len));
            hi = std::max<std::size_t>(hi, static_cast<std::size_t>(len));
            if ((len * sp.r < sp.x - 2 * sp.r || len * sp.r > 2 * sp.x) && c.pass) {
                c.pass = false;
                c.witness = "pair " + std::to_string(i) + " has length " + std::to_string(len);
            }
        }
        c.measured["min"] = bg.pairs.empty() ? 0.0 : static_cast<double>(lo);
        c.measured["max"] = static_cast<double>(hi);
        c.measured["x_over_r"] = static_cast<double>(sp.x) / static_cast<double>(sp.r);
        rep.checks.push_back(std::move(c));
    }
    rep.checks.push_back(detail::unique_shortest_paths(g, bg.pairs));
    rep.fingerprint = fingerprint(bg);
    return rep;
}

/// Every inner pair has horizontal displacement x_I - r_I/2.
[[nodiscard]] inline AuditCheck check_inner_displacement(const BaseGraph& inner) {
    AuditCheck c{"inner_displacement", true, {}, {}};
    const auto want = inner.spec.x - inner.spec.r / 2;
    std::size_t good = 0;
    for (std::size_t i = 0; i < inner.pairs.size(); ++i) {
        const auto dx = inner.coord(inner.pairs[i].t).x - inner.coord(inner.pairs[i].s).x;
        if (dx == want) {
            ++good;
        } else if (c.pass) {
            c.pass = false;
            c.witness = "pair " + std::to_string(i) + " has t1 - s1 = " + std::to_string(dx);
        }
    }
    c.measured["expected"] = static_cast<double>(want);
    c.measured["fraction"] = inner.pairs.empty() ? 1.0 : static_cast<double>(good) / static_cast<double>(inner.pairs.size());
    return c;
}

[[nodiscard]] inline AuditReport check_inner_graph_properties(const BaseGraph& inner, std::size_t cap = kStructuralAuditCap) {
    auto rep = check_base_graph_properties(inner, cap);
    rep.checks.push_back(check_inner_displacement(inner));
    return rep;
}

/// z, the edge partition by composed canonical paths, |P| against the outer
/// pairs, subdivided path shape, composed path lengths and distinct inner
/// paths per inner copy.
[[nodiscard]] inline AuditReport check_composed_properties(const ComposedInstance& inst,
                                                           std::size_t cap = kStructuralAuditCap) {
    const auto& g = inst.graph;
    require(g.vertex_count() <= cap, ErrorCode::CapExceeded,
            "instance with " + std::to_string(g.vertex_count()) + " vertices exceeds cap " + std::to_string(cap));
    AuditReport rep;
    const auto n_i = inst.inner.graph.vertex_count();
    const auto p_i = inst.inner.pairs.size();
    {
        AuditCheck c{"z_value", p_i > 0 && n_i % p_i == 0 && inst.z == static_cast<std::int64_t>(n_i / p_i), {}, {}};
        c.measured["z"] = static_cast<double>(inst.z);
        c.measured["V_I"] = static_cast<double>(n_i);
        c.measured["P_I"] = static_cast<double>(p_i);
        if (!c.pass) c.witness = "z = " + std::to_string(inst.z) + " but |V_I|/|P_I| = " + std::to_string(n_i) + "/" + std::to_string(p_i);
        rep.checks.push_back(std::move(c));
    }
    {
        std::size_t mapped = 0;
        for (const auto& p : inst.outer.pairs)
            if (p.vector_index < inst.phi.inner_pair.size() && inst.phi.inner_pair[p.vector_index]) ++mapped;
        AuditCheck c{"pair_count", inst.pairs.size() == mapped, {}, {}};
        c.measured["P"] = static_cast<double>(inst.pairs.size());
        c.measured["P_O"] = static_cast<double>(inst.outer.pairs.size());
        c.measured["P_O_mapped"] = static_cast<double>(mapped);
        if (!c.pass) c.witness = std::to_string(inst.pairs.size()) + " composed pairs for " + std::to_string(mapped) + " mapped outer pairs";
        rep.checks.push_back(std::move(c));
    }
    const auto own = detail::edge_ownership(g, inst.pairs.size(), [&](std::size_t i) -> const std::vector<Vertex>& {
        return inst.pairs[i].path;
    });
    {
        AuditCheck c{"partition", !own.collision && !own.missing && !own.orphan, {}, {}};
        c.witness = own.collision.value_or(own.missing.value_or(own.orphan.value_or("")));
        c.measured["edges"] = static_cast<double>(g.edge_count());
        c.measured["path_edges"] = static_cast<double>(own.path_edges);
        rep.checks.push_back(std::move(c));
    }
    {
        // Interior vertices of every subdivided path have degree 2 and chain
        // the two copies of the outer edge's endpoints with exactly z edges.
        AuditCheck c{"subdivided_paths", inst.z >= 1, {}, {}};
        if (!c.pass) c.witness = "z < 1";
        const auto base = inst.n_outer * inst.n_inner;
        for (std::size_t e = 0; c.pass && e < inst.outer_edges.size(); ++e) {
            const auto& oe = inst.outer_edges[e];
            auto copy_of = [&](Vertex v) -> std::optional<Vertex> {
                if (v >= base) return std::nullopt;
                return static_cast<Vertex>(v / inst.n_inner);
            };
            std::vector<Vertex> chain;
            for (std::int64_t k = 1; k < inst.z; ++k) chain.push_back(inst.subdivision_vertex(e, static_cast<std::size_t>(k)));
            bool ok = true;
            Vertex first_end = 0, last_end = 0;
            if (chain.empty()) {
                // z = 1: the outer edge is a single edge between two copies
                std::size_t found = 0;
                for (Vertex a = static_cast<Vertex>(oe.u * inst.n_inner); a < (oe.u + 1) * inst.n_inner && !found; ++a)
                    for (const auto& nb : g.neighbors(a))
                        if (copy_of(nb.to) == oe.v) ++found;
                ok = found > 0;
            } else {
                for (std::size_t k = 0; k < chain.size() && ok; ++k) {
                    if (g.degree(chain[k]) != 2) ok = false;
                    if (k + 1 < chain.size() && !g.has_edge(chain[k], chain[k + 1])) ok = false;
                }
                if (ok) {
                    for (const auto& nb : g.neighbors(chain.front()))
                        if (chain.size() == 1 ? copy_of(nb.to) == oe.u : nb.to != chain[1]) first_end = nb.to;
                    for (const auto& nb : g.neighbors(chain.back()))
                        if (chain.size() == 1 ? copy_of(nb.to) == oe.v : nb.to != chain[chain.size() - 2]) last_end = nb.to;
                    ok = copy_of(first_end) == oe.u && copy_of(last_end) == oe.v;
                }
            }
            if (!ok) {
                c.pass = false;
                c.witness = "subdivided path of outer edge " + detail::edge_name(oe.u, oe.v) + " is malformed";
            }
        }
        c.measured["outer_edges"] = static_cast<double>(inst.outer_edges.size());
        rep.checks.push_back(std::move(c));
    }
    {
        // Each composed path: hops x (|pi_I| + z) edges.
        AuditCheck c{"path_lengths", true, {}, {}};
        for (std::size_t i = 0; i < inst.pairs.size() && c.pass; ++i) {
            const auto& p = inst.pairs[i];
            const auto inner_len = inst.inner.pairs[p.inner_pair].path.size() - 1;
            const auto want = p.hops * (inner_len + static_cast<std::size_t>(inst.z));
            if (p.path.size() - 1 != want) {
                c.pass = false;
                c.witness = "pair " + std::to_string(i) + " has " + std::to_string(p.path.size() - 1) + " edges, expected " +
                            std::to_string(want);
            }
        }
        rep.checks.push_back(std::move(c));
    }
    {
        // Which inner canonical path each inner edge belongs to, then per
        // (copy, composed path) the inner paths used: exactly one, and no
        // two composed paths share one inside the same copy.
        AuditCheck c{"inner_copy_distinct", true, {}, {}};
        std::unordered_map<std::uint64_t, std::size_t> inner_owner;
        for (std::size_t i = 0; i < inst.inner.pairs.size(); ++i) {
            const auto& path = inst.inner.pairs[i].path;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) inner_owner.emplace(edge_key(path[k], path[k + 1]), i);
        }
        std::map<std::pair<Vertex, std::size_t>, std::size_t> used; // (copy, inner pair) -> composed pair
        const auto base = inst.n_outer * inst.n_inner;
        for (std::size_t i = 0; i < inst.pairs.size() && c.pass; ++i) {
            const auto& path = inst.pairs[i].path;
            std::map<Vertex, std::size_t> here; // copy -> inner pair
            for (std::size_t k = 0; k + 1 < path.size() && c.pass; ++k) {
                const Vertex a = path[k], b = path[k + 1];
                if (a >= base || b >= base || a / inst.n_inner != b / inst.n_inner) continue;
                const auto copy = static_cast<Vertex>(a / inst.n_inner);
                const auto it = inner_owner.find(edge_key(static_cast<Vertex>(a % inst.n_inner), static_cast<Vertex>(b % inst.n_inner)));
                if (it == inner_owner.end()) {
                    c.pass = false;
                    c.witness = "composed pair " + std::to_string(i) + " uses a non-canonical inner edge in copy " + std::to_string(copy);
                    break;
                }
                const auto [h, fresh] = here.try_emplace(copy, it->second);
                if (!fresh && h->second != it->second) {
                    c.pass = false;
                    c.witness = "composed pair " + std::to_string(i) + " mixes inner paths in copy " + std::to_string(copy);
                }
            }
            for (const auto& [copy, ip] : here) {
                const auto [u, fresh] = used.try_emplace({copy, ip}, i);
                if (!fresh && c.pass) {
                    c.pass = false;
                    c.witness = "composed pairs " + std::to_string(u->second) + " and " + std::to_string(i) +
                                " share inner path " + std::to_string(ip) + " in copy " + std::to_string(copy);
                }
            }
        }
        c.measured["copy_traversals"] = static_cast<double>(used.size());
        rep.checks.push_back(std::move(c));
    }
    rep.fingerprint = fingerprint(inst);
    return rep;
}

struct GraphDistanceRecord {
    Vertex s = 0;
    Vertex t = 0;
    Dist d = 0; // d_G(s, t) - |pi*|
    std::int64_t delta_x = 0;
    std::int64_t delta_y = 0;
    double lhs = 0;
    double rhs = 0;
    bool pass = true;
};

struct GraphDistanceCheck {
    std::int64_t i_star = 0;
    Vec2 v_star;
    std::size_t star_pair = 0;
    std::vector<GraphDistanceRecord> records;
    std::size_t failures = 0;
    [[nodiscard]] bool ok() const noexcept { return failures == 0; }
};

/// For every s in S_I and every reachable t in T_I with first coordinate in
/// [x_I - r_I/2 + 1, x_I]: with delta = (t - s) - (t* - s*) and
/// d = d_G(s, t) - |pi*|, checks (delta_y / i* + delta_x) / (r_I - c + i*) <= d
/// exactly (cross-multiplied). c is |W_I| and i* is read off the star
/// pair's vector, whose second coordinate is sum_{j=i*}^{c} j.
[[nodiscard]] inline GraphDistanceCheck check_graph_distance_property(const BaseGraph& inner, std::size_t star_pair_index) {
    require(star_pair_index < inner.pairs.size(), ErrorCode::InvalidParams, "star pair index out of range");
    const auto& sp = inner.spec;
    const auto c = static_cast<std::int64_t>(sp.W.vectors.size());
    GraphDistanceCheck out;
    out.star_pair = star_pair_index;
    const auto& star = inner.pairs[star_pair_index];
    out.v_star = sp.W.vectors[star.vector_index];
    // first coordinate r_I - c + i*
    out.i_star = out.v_star.x - sp.r + c;
    require(out.i_star >= 1 && out.i_star <= c && out.v_star.y == (out.i_star + c) * (c - out.i_star + 1) / 2,
            ErrorCode::InvalidParams, "graph is not an inner graph: star vector does not match the inner formula");
    const Vec2 star_disp = inner.coord(star.t) - inner.coord(star.s);
    const Dist star_len = static_cast<Dist>(star.path.size()) - 1;
    const auto denom = sp.r - c + out.i_star;

    std::vector<Vertex> targets;
    for (const Vertex t : inner.T)
        if (inner.coord(t).x >= sp.x - sp.r / 2 + 1) targets.push_back(t);

    std::vector<std::vector<GraphDistanceRecord>> per_source(inner.S.size());
    detail::parallel_for(inner.S.size(), [&](std::size_t si) {
        const Vertex s = inner.S[si];
        std::vector<Dist> dist;
        sssp_into(inner.graph, s, dist);
        for (const Vertex t : targets) {
            if (!reachable(dist[t])) continue;
            GraphDistanceRecord rec;
            rec.s = s;
            rec.t = t;
            rec.d = dist[t] - star_len;
            const Vec2 delta = (inner.coord(t) - inner.coord(s)) - star_disp;
            rec.delta_x = delta.x;
            rec.delta_y = delta.y;
            rec.lhs = (static_cast<double>(delta.y) / static_cast<double>(out.i_star) + static_cast<double>(delta.x)) /
                      static_cast<double>(denom);
            rec.rhs = static_cast<double>(rec.d);
            // (dy / i* + dx) / denom <= d  <=>  dy + i* dx <= d i* denom
            rec.pass = delta.y + out.i_star * delta.x <= rec.d * out.i_star * denom;
            per_source[si].push_back(rec);
        }
    });
    for (auto& recs : per_source)
        for (auto& rec : recs) {
            out.failures += rec.pass ? 0 : 1;
            out.records.push_back(rec);
        }
    return out;
}

enum class DeletionPolicy { OneEdgePerInnerCopy, HalfOfPath, Explicit };

[[nodiscard]] inline std::optional<DeletionPolicy> parse_deletion_policy(std::string_view s) {
    if (s == "one_edge_per_inner_copy") return DeletionPolicy::OneEdgePerInnerCopy;
    if (s == "half_of_path") return DeletionPolicy::HalfOfPath;
    if (s == "explicit") return DeletionPolicy::Explicit;
    return std::nullopt;
}

struct StretchRecord {
    std::size_t pair_index = 0;
    std::vector<Edge> deleted;
    Dist before = 0;
    std::optional<Dist> after;   // nullopt: disconnected
    std::optional<Dist> stretch; // nullopt: infinite
    std::size_t inner_copies = 0; // h, inner copies with an inner subpath on pi*
    std::int64_t z = 0;
    bool same_outer_route = false; // surviving shortest path uses the same subdivided paths as pi*
    std::vector<Vertex> surviving_path;
};

namespace detail {

/// BFS that ignores the edges in `banned`; returns dist and the
/// smallest-id predecessor of each vertex.
inline std::pair<std::vector<Dist>, std::vector<Vertex>> bfs_avoiding(const Graph& g, Vertex s,
                                                                      const std::unordered_set<std::uint64_t>& banned) {
    const auto n = g.vertex_count();
    std::vector<Dist> dist(n, kUnreachable);
    std::vector<Vertex> pred(n, std::numeric_limits<Vertex>::max());
    std::vector<Vertex> queue{s};
    dist[s] = 0;
    pred[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (const auto& nb : g.neighbors(u)) {
            if (banned.contains(edge_key(u, nb.to))) continue;
            if (dist[nb.to] == kUnreachable) {
                dist[nb.to] = dist[u] + 1;
                pred[nb.to] = u;
                queue.push_back(nb.to);
            } else if (dist[nb.to] == dist[u] + 1 && u < pred[nb.to]) {
                pred[nb.to] = u;
            }
        }
    }
    return {std::move(dist), std::move(pred)};
}

/// Subdivided paths touched by a path, in order of first use.
inline std::vector<std::size_t> outer_route(const ComposedInstance& inst, std::span<const Vertex> path) {
    std::vector<std::size_t> route;
    for (const Vertex v : path) {
        const auto o = inst.origin(v);
        if (o.kind != VertexOrigin::Kind::Subdivision) continue;
        if (route.empty() || route.back() != o.outer_edge) route.push_back(o.outer_edge);
    }
    return route;
}

} // namespace detail

/// Deletes F from G and measures d_{G-F}(s, t) - d_G(s, t) for one composed
/// pair. F must lie on the pair's canonical path.
///   OneEdgePerInnerCopy: the first edge of every inner subpath of pi*.
///   HalfOfPath: every other edge of pi*, starting with the first.
///   Explicit: `explicit_edges`.
[[nodiscard]] inline StretchRecord deletion_stretch_experiment(const ComposedInstance& inst, std::size_t pair_index,
                                                               DeletionPolicy policy,
                                                               const std::vector<Edge>& explicit_edges = {}) {
    require(pair_index < inst.pairs.size(), ErrorCode::InvalidParams, "pair index out of range");
    const auto& p = inst.pairs[pair_index];
    StretchRecord rec;
    rec.pair_index = pair_index;
    rec.z = inst.z;
    const auto base = inst.n_outer * inst.n_inner;
    auto inner_edge = [&](std::size_t k) {
        const Vertex a = p.path[k], b = p.path[k + 1];
        return a < base && b < base && a / inst.n_inner == b / inst.n_inner;
    };
    for (std::size_t k = 0; k + 1 < p.path.size(); ++k)
        if (inner_edge(k) && (k == 0 || !inner_edge(k - 1))) ++rec.inner_copies;

    std::unordered_set<std::uint64_t> on_path;
    for (std::size_t k = 0; k + 1 < p.path.size(); ++k) on_path.insert(edge_key(p.path[k], p.path[k + 1]));
    switch (policy) {
    case DeletionPolicy::OneEdgePerInnerCopy:
        for (std::size_t k = 0; k + 1 < p.path.size(); ++k)
            if (inner_edge(k) && (k == 0 || !inner_edge(k - 1))) rec.deleted.push_back({p.path[k], p.path[k + 1], 1});
        break;
    case DeletionPolicy::HalfOfPath:
        for (std::size_t k = 0; k + 1 < p.path.size(); k += 2) rec.deleted.push_back({p.path[k], p.path[k + 1], 1});
        break;
    case DeletionPolicy::Explicit:
        for (const auto& e : explicit_edges) {
            require(on_path.contains(edge_key(e.u, e.v)), ErrorCode::InvalidParams,
                    "deleted edge " + detail::edge_name(e.u, e.v) + " is not on the canonical path");
            rec.deleted.push_back(e);
        }
        break;
    }
    std::unordered_set<std::uint64_t> banned;
    for (const auto& e : rec.deleted) banned.insert(edge_key(e.u, e.v));

    const auto [d0, pred0] = detail::bfs_avoiding(inst.graph, p.s, {});
    rec.before = d0[p.t];
    const auto [d1, pred1] = detail::bfs_avoiding(inst.graph, p.s, banned);
    if (reachable(d1[p.t])) {
        rec.after = d1[p.t];
        rec.stretch = d1[p.t] - d0[p.t];
        for (Vertex v = p.t;; v = pred1[v]) {
            rec.surviving_path.push_back(v);
            if (v == p.s) break;
        }
        std::reverse(rec.surviving_path.begin(), rec.surviving_path.end());
        rec.same_outer_route = detail::outer_route(inst, rec.surviving_path) == detail::outer_route(inst, p.path);
    }
    return rec;
}

struct PigeonholeRecord {
    std::size_t pair_index = 0;
    std::size_t missing = 0;
    std::size_t length = 0;
    double missing_fraction = 0;
    Dist d_g = 0;
    std::optional<Dist> d_h;        // nullopt: disconnected in the candidate
    std::optional<Dist> distortion; // nullopt: infinite
    bool budget_met = true;         // |E(H)| <= |E(G)| / 2
    std::size_t candidate_edges = 0;
    std::size_t instance_edges = 0;
};

/// Since canonical paths partition E, a candidate keeping at most half the
/// edges misses at least half of some canonical path. Finds the pair with
/// the largest missing fraction (lowest index on ties) and measures its
/// exact distortion in the candidate.
[[nodiscard]] inline PigeonholeRecord pigeonhole_adversary(const ComposedInstance& inst, const Graph& candidate) {
    require(candidate.vertex_count() == inst.graph.vertex_count(), ErrorCode::VertexSetMismatch,
            "candidate has a different vertex count");
    for (const auto& e : candidate.edges())
        if (!inst.graph.has_edge(e.u, e.v))
            fail(ErrorCode::NotSubgraph, "candidate edge " + detail::edge_name(e.u, e.v) + " is not in the instance");
    require(!inst.pairs.empty(), ErrorCode::InvalidParams, "instance has no pairs");
    PigeonholeRecord rec;
    rec.candidate_edges = candidate.edge_count();
    rec.instance_edges = inst.graph.edge_count();
    rec.budget_met = 2 * rec.candidate_edges <= rec.instance_edges;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        const auto& path = inst.pairs[i].path;
        std::size_t missing = 0;
        for (std::size_t k = 0; k + 1 < path.size(); ++k) missing += candidate.has_edge(path[k], path[k + 1]) ? 0 : 1;
        const auto len = path.size() - 1;
        // missing / len > best.missing / best.length
        if (i == 0 || missing * rec.length > rec.missing * len) {
            rec.pair_index = i;
            rec.missing = missing;
            rec.length = len;
        }
    }
    rec.missing_fraction = rec.length ? static_cast<double>(rec.missing) / static_cast<double>(rec.length) : 0.0;
    if (rec.budget_met && 2 * rec.missing < rec.length)
        fail(ErrorCode::SpecViolation, "no canonical path is half missing although the candidate keeps at most half the "
                                       "edges; the canonical paths do not partition E");
    const auto& p = inst.pairs[rec.pair_index];
    std::vector<Dist> dist;
    sssp_into(inst.graph, p.s, dist);
    rec.d_g = dist[p.t];
    sssp_into(candidate, p.s, dist);
    if (reachable(dist[p.t])) {
        rec.d_h = dist[p.t];
        rec.distortion = dist[p.t] - rec.d_g;
    }
    return rec;
}

/// Every other edge of g in sorted order (odd positions kept, so at most
/// half the edges survive).
[[nodiscard]] inline Graph parity_filter(const Graph& g) {
    Graph h(g.vertex_count(), g.weighted());
    const auto edges = g.edges();
    for (std::size_t i = 1; i < edges.size(); i += 2) h.add_edge(edges[i].u, edges[i].v, edges[i].w);
    return h;
}

} // namespace spanlab
