// Independent reference implementations used by the tests. Deliberately
// naive: dense matrices, maps keyed by coordinates, no shared helpers with
// the library beyond the Graph container and the canonical-path primitive.
#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "spanlab/graph.hpp"
#include "spanlab/preserver.hpp"

namespace oracle {

using ll = long long;
using Matrix = std::vector<std::vector<ll>>;
inline constexpr ll kInf = LLONG_MAX / 4;

/// All-pairs distances by Floyd-Warshall over the weighted edge list.
inline Matrix floyd_warshall(const spanlab::Graph& g) {
    const auto n = g.vertex_count();
    Matrix d(n, std::vector<ll>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : g.edges()) {
        d[e.u][e.v] = std::min<ll>(d[e.u][e.v], e.w);
        d[e.v][e.u] = std::min<ll>(d[e.v][e.u], e.w);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i][k] == kInf) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
        }
    return d;
}

/// Max over pairs connected in g of d_H - d_G; kInf if some such pair is
/// disconnected in h.
inline ll max_additive(const Matrix& dg, const Matrix& dh) {
    ll worst = 0;
    for (std::size_t i = 0; i < dg.size(); ++i)
        for (std::size_t j = i + 1; j < dg.size(); ++j) {
            if (dg[i][j] == kInf) continue;
            if (dh[i][j] == kInf) return kInf;
            worst = std::max(worst, dh[i][j] - dg[i][j]);
        }
    return worst;
}

// ---- lattice ---------------------------------------------------------------

using P = std::pair<ll, ll>;

/// First-quadrant lattice points with r - r^(-1/3) <= |p| <= r, by floating
/// norms and a full scan of [-r, r]^2.
inline std::set<P> lattice_annulus(ll r) {
    std::set<P> out;
    const double lo = static_cast<double>(r) - std::cbrt(1.0 / static_cast<double>(r));
    for (ll x = -r; x <= r; ++x)
        for (ll y = -r; y <= r; ++y) {
            if (x < 0 || y < 0) continue;
            const double n = std::hypot(static_cast<double>(x), static_cast<double>(y));
            if (n >= lo - 1e-12 && n <= static_cast<double>(r) + 1e-12) out.insert({x, y});
        }
    return out;
}

inline ll cross(P o, P a, P b) { return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first); }

/// q in the closed triangle abc (degenerate triangles act as segments).
inline bool in_triangle(P a, P b, P c, P q) {
    const ll d1 = cross(a, b, q), d2 = cross(b, c, q), d3 = cross(c, a, q);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
    if (neg && pos) return false;
    if (cross(a, b, c) != 0) return true;
    // collinear: q must lie within the bounding box of the three points
    const auto [xl, xh] = std::minmax({a.first, b.first, c.first});
    const auto [yl, yh] = std::minmax({a.second, b.second, c.second});
    return q.first >= xl && q.first <= xh && q.second >= yl && q.second <= yh;
}

/// W is strongly convex iff no v lies in conv({+-u : u != v} u {0}).
/// Caratheodory: it suffices to try every triangle of those points.
inline bool strongly_convex_bruteforce(const std::vector<P>& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<P> pts{{0, 0}};
        for (std::size_t j = 0; j < w.size(); ++j)
            if (j != i) {
                pts.push_back(w[j]);
                pts.push_back({-w[j].first, -w[j].second});
            }
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a; b < pts.size(); ++b)
                for (std::size_t c = b; c < pts.size(); ++c)
                    if (in_triangle(pts[a], pts[b], pts[c], w[i])) return false;
    }
    return true;
}

// ---- straight-line greedy references ---------------------------------------

struct RefRun {
    spanlab::Graph h;
    std::size_t baseline_edges = 0;
    std::size_t small_edges = 0;
    std::size_t large_edges = 0;
    std::size_t greedy_edges = 0;
    std::size_t rounds = 0;
    ll max_additive = 0;
};

struct RefInput {
    std::vector<std::vector<spanlab::Vertex>> clusters;
    std::vector<std::vector<spanlab::Vertex>> cores;
    std::vector<char> sampled;
    ll r = 0;
    ll r_hat = 0;
    double small_limit = 0;
    ll stop = 16;
    ll prefix = 1;
    std::size_t k = 1; // multiplicative stretch parameter of the baseline
};

/// Greedy (2k-1)-spanner with a fresh BFS per edge on the partial spanner.
inline spanlab::Graph ref_multiplicative(const spanlab::Graph& g, std::size_t k) {
    spanlab::Graph h(g.vertex_count());
    for (const auto& e : g.edges()) {
        std::vector<ll> dist(g.vertex_count(), kInf);
        std::deque<spanlab::Vertex> q{e.u};
        dist[e.u] = 0;
        while (!q.empty()) {
            const auto u = q.front();
            q.pop_front();
            for (const auto& nb : h.neighbors(u))
                if (dist[nb.to] == kInf) {
                    dist[nb.to] = dist[u] + 1;
                    q.push_back(nb.to);
                }
        }
        if (dist[e.v] > static_cast<ll>(2 * k - 1)) h.add_edge(e.u, e.v);
    }
    return h;
}

/// One path-buying loop written out round by round: recompute both APSP
/// matrices, take the lexicographically least violating pair, find x and y
/// by checking every pair of the candidate prefix/suffix, insert.
template <class Insert>
inline void ref_greedy(const spanlab::Graph& g, RefRun& run, const RefInput& in, Insert insert) {
    const auto dg = floyd_warshall(g);
    const auto n = g.vertex_count();
    for (;;) {
        const auto dh = floyd_warshall(run.h);
        std::optional<std::pair<spanlab::Vertex, spanlab::Vertex>> pick;
        for (spanlab::Vertex s = 0; s < n && !pick; ++s)
            for (spanlab::Vertex t = s + 1; t < n && !pick; ++t)
                if (dg[s][t] != kInf && (dh[s][t] == kInf || dh[s][t] > dg[s][t] + in.stop * in.r_hat)) pick = {{s, t}};
        if (!pick) break;
        const auto path = spanlab::consistent_shortest_path(g, pick->first, pick->second);
        const std::size_t len = path.size();
        auto ok_range = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t a = lo; a <= hi; ++a)
                for (std::size_t b = a + 1; b <= hi; ++b)
                    if (dh[path[a]][path[b]] > dg[path[a]][path[b]] + in.prefix * in.r_hat) return false;
            return true;
        };
        std::size_t ix = 0, iy = len - 1;
        while (ix + 1 < len && ok_range(0, ix + 1)) ++ix;
        while (iy > 0 && ok_range(iy - 1, len - 1)) --iy;
        run.greedy_edges += insert(path, ix, iy, dg);
        ++run.rounds;
    }
    run.max_additive = max_additive(dg, floyd_warshall(run.h));
}

inline RefRun ref_emulator(const spanlab::Graph& g, const RefInput& in) {
    RefRun run;
    run.h = spanlab::Graph(g.vertex_count(), true);
    for (const auto& e : ref_multiplicative(g, in.k).edges()) run.baseline_edges += run.h.add_edge(e.u, e.v, 1);
    const auto dg = floyd_warshall(g);
    for (std::size_t i = 0; i < in.clusters.size(); ++i) {
        const auto& c = in.clusters[i];
        if (static_cast<double>(c.size()) <= in.small_limit) {
            for (const auto a : c)
                for (const auto b : c)
                    if (a < b && in.sampled[a] && in.sampled[b]) run.small_edges += run.h.add_edge(a, b, dg[a][b]);
        } else {
            for (const auto& e : g.edges())
                if (std::binary_search(c.begin(), c.end(), e.u) && std::binary_search(c.begin(), c.end(), e.v))
                    run.large_edges += run.h.add_edge(e.u, e.v, 1);
        }
    }
    ref_greedy(g, run, in, [&](const std::vector<spanlab::Vertex>& path, std::size_t ix, std::size_t iy, const Matrix& d) {
        return run.h.add_edge(path[ix], path[iy], d[path[ix]][path[iy]]) ? std::size_t{1} : std::size_t{0};
    });
    return run;
}

inline RefRun ref_spanner(const spanlab::Graph& g, const RefInput& in) {
    RefRun run;
    run.h = spanlab::Graph(g.vertex_count());
    for (const auto& e : ref_multiplicative(g, in.k).edges()) run.baseline_edges += run.h.add_edge(e.u, e.v);
    const auto dg = floyd_warshall(g);
    auto add_path = [&](const std::vector<spanlab::Vertex>& p, std::size_t lo, std::size_t hi) {
        std::size_t added = 0;
        for (std::size_t i = lo; i < hi; ++i) added += run.h.add_edge(p[i], p[i + 1]) ? 1 : 0;
        return added;
    };
    for (std::size_t i = 0; i < in.clusters.size(); ++i) {
        const auto& c = in.clusters[i];
        if (static_cast<double>(c.size()) <= in.small_limit) {
            for (const auto s : in.cores[i]) {
                if (!in.sampled[s]) continue;
                for (const auto t : c) {
                    if (t == s || !in.sampled[t] || dg[s][t] > in.r) continue;
                    const auto p = spanlab::consistent_shortest_path(g, s, t);
                    run.small_edges += add_path(p, 0, p.size() - 1);
                }
            }
        } else {
            for (const auto& e : g.edges())
                if (std::binary_search(c.begin(), c.end(), e.u) && std::binary_search(c.begin(), c.end(), e.v))
                    run.large_edges += run.h.add_edge(e.u, e.v);
        }
    }
    ref_greedy(g, run, in, [&](const std::vector<spanlab::Vertex>& path, std::size_t ix, std::size_t iy, const Matrix&) {
        return add_path(path, ix, iy);
    });
    return run;
}

// ---- tiny composed instance, rebuilt from coordinates ---------------------

/// The smallest composed instance built straight from its definition:
/// outer 8 x 16 grid, W_O = (2,0) | (1,1); inner 26 x 52 grid with
/// W_I = (4,2), (3,3); each outer vector uses the first inner pair (the one
/// from (1,1)) of its vector class; every outer edge is a path of z edges.
struct TinyPair {
    ll before = 0;
    std::optional<ll> after_one_per_copy; // first inner edge of every copy deleted
    std::optional<ll> after_first_edge;   // only the very first edge deleted
    std::size_t hops = 0;
    std::size_t inner_copies = 0;
};

struct TinyOracle {
    ll z = 0;
    std::size_t vertices_used = 0;
    std::size_t edges = 0;
    std::vector<TinyPair> pairs;
};

inline TinyOracle tiny_composed_oracle() {
    constexpr ll xo = 8, yo = 16, ri = 4, xi = 26, yi = 52;
    const std::array<P, 2> w_o{{{2, 0}, {1, 1}}};
    const std::array<P, 2> w_i{{{4, 2}, {3, 3}}};
    TinyOracle out;
    // |V_I| / |P_I| with |P_I| = |S_I| * |W_I| = (r/2 * y/2) * 2
    out.z = (xi * yi) / ((ri / 2) * (yi / 2) * 2);

    using Key = std::tuple<int, ll, ll, ll, ll, ll>; // kind, a, b, c, d, position
    std::map<Key, int> ids;
    auto id = [&](const Key& k) {
        const auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        const int v = static_cast<int>(ids.size());
        ids.emplace(k, v);
        return v;
    };
    auto inner_v = [&](P copy, P at) { return id({0, copy.first, copy.second, at.first, at.second, 0}); };
    auto sub_v = [&](P u, P w, ll k) { return id({1, u.first, u.second, w.first, w.second, k}); };

    struct Path {
        std::vector<int> v;
        std::vector<std::size_t> inner_starts; // index of the first edge of each inner subpath
        std::size_t hops = 0;
    };
    std::vector<Path> paths;
    for (ll row = 1; row <= yo / 2; ++row)
        for (std::size_t j = 0; j < 2; ++j) {
            const P v = w_o[j];
            const ll k = (xo - 1) / v.first;
            const P wi = w_i[j];
            const ll ki = (xi - 1) / wi.first;
            Path p;
            p.hops = static_cast<std::size_t>(k);
            for (ll h = 0; h < k; ++h) {
                const P u{1 + h * v.first, row + h * v.second};
                const P nxt{u.first + v.first, u.second + v.second};
                p.inner_starts.push_back(p.v.size());
                for (ll s = 0; s <= ki; ++s) p.v.push_back(inner_v(u, {1 + s * wi.first, 1 + s * wi.second}));
                for (ll s = 1; s < out.z; ++s) p.v.push_back(sub_v(u, nxt, s));
            }
            p.v.push_back(inner_v({1 + k * v.first, row + k * v.second}, {1, 1}));
            paths.push_back(std::move(p));
        }

    const int n = static_cast<int>(ids.size());
    out.vertices_used = static_cast<std::size_t>(n);
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (const auto& p : paths)
        for (std::size_t i = 0; i + 1 < p.v.size(); ++i) {
            adj[p.v[i]].insert(p.v[i + 1]);
            adj[p.v[i + 1]].insert(p.v[i]);
        }
    for (const auto& a : adj) out.edges += a.size();
    out.edges /= 2;

    auto bfs = [&](int s, int t, const std::set<std::pair<int, int>>& banned) -> std::optional<ll> {
        std::vector<ll> d(static_cast<std::size_t>(n), -1);
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (const int w : adj[u])
                if (d[w] < 0 && !banned.count({std::min(u, w), std::max(u, w)})) {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
        }
        return d[t] < 0 ? std::nullopt : std::optional<ll>(d[t]);
    };
    for (const auto& p : paths) {
        TinyPair tp;
        tp.hops = p.hops;
        tp.inner_copies = p.inner_starts.size();
        tp.before = *bfs(p.v.front(), p.v.back(), {});
        std::set<std::pair<int, int>> banned;
        for (const auto i : p.inner_starts) banned.insert({std::min(p.v[i], p.v[i + 1]), std::max(p.v[i], p.v[i + 1])});
        tp.after_one_per_copy = bfs(p.v.front(), p.v.back(), banned);
        tp.after_first_edge = bfs(p.v.front(), p.v.back(), {{std::min(p.v[0], p.v[1]), std::max(p.v[0], p.v[1])}});
        out.pairs.push_back(tp);
    }
    return out;
}

} // namespace oracle
