// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hard instances: the grid base graph G_B(x, y, r, W), its inner and outer
// instantiations, the stripe-aligned bijection phi and the composed
// (obstacle-product) graph with subdivided outer edges.
//
// Grid point (col, row) in [1, x] x [1, y] has vertex id (col-1)*y + (row-1).
// In the composed graph, inner copy u occupies ids [u*n_I, (u+1)*n_I) and the
// z-1 interior vertices of every subdivided outer edge follow, one block per
// outer edge in sorted edge order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/convex_sets.hpp"
#include "spanlab/error.hpp"
#include "spanlab/geometry.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

struct BaseGraphSpec {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t r = 0;
    ConvexVectorSet W;
};

struct CriticalPair {
    Vertex s = 0;
    Vertex t = 0;
    std::size_t vector_index = 0; // into spec.W.vectors
    std::vector<Vertex> path;     // canonical path, s first
};

struct BaseGraph {
    BaseGraphSpec spec;
    Graph graph;
    std::vector<Vertex> S;
    std::vector<Vertex> T;
    std::vector<CriticalPair> pairs; // ordered by s, then vector index

    [[nodiscard]] Vertex id(Vec2 p) const { return static_cast<Vertex>((p.x - 1) * spec.y + (p.y - 1)); }
    [[nodiscard]] Vec2 coord(Vertex v) const {
        return {static_cast<std::int64_t>(v) / spec.y + 1, static_cast<std::int64_t>(v) % spec.y + 1};
    }
    [[nodiscard]] bool in_grid(Vec2 p) const { return p.x >= 1 && p.x <= spec.x && p.y >= 1 && p.y <= spec.y; }
    [[nodiscard]] bool in_T(Vec2 p) const { return in_grid(p) && p.x >= spec.x - spec.r; }
};

/// Checks the base-graph premises; throws SpecViolation naming the first
/// broken one.
inline void validate_base_spec(const BaseGraphSpec& spec) {
    auto violation = [](const std::string& what) { fail(ErrorCode::SpecViolation, what); };
    if (spec.x < 1 || spec.y < 2 || spec.r < 2) violation("need x >= 1, y >= 2, r >= 2");
    if (4 * spec.r > spec.x) violation("r = " + std::to_string(spec.r) + " exceeds x/4 = " + std::to_string(spec.x) + "/4");
    if (spec.W.vectors.empty()) violation("W is empty");
    for (const auto& v : spec.W.vectors) {
        const std::string name = "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
        if (2 * v.x < spec.r || v.x > spec.r) violation("first coordinate of " + name + " outside [r/2, r]");
        if (v.y < 0 || v.y > v.x) violation("angle of " + name + " outside [0, pi/4]");
        // tan(angle) <= y / (2x), cross-multiplied
        if (2 * spec.x * v.y > spec.y * v.x) violation("angle of " + name + " exceeds atan(y / 2x)");
    }
    if (const auto sc = check_strong_convexity(spec.W.vectors); !sc.ok)
        violation("W is not strongly convex, witness (" + std::to_string(sc.witness->x) + "," +
                  std::to_string(sc.witness->y) + ")");
}

[[nodiscard]] inline BaseGraph build_base_graph(const BaseGraphSpec& spec) {
    validate_base_spec(spec);
    BaseGraph bg;
    bg.spec = spec;
    bg.graph = Graph(static_cast<std::size_t>(spec.x * spec.y));
    for (std::int64_t col = 1; col <= spec.r / 2; ++col)
        for (std::int64_t row = 1; row <= spec.y / 2; ++row) bg.S.push_back(bg.id({col, row}));
    for (std::int64_t col = std::max<std::int64_t>(1, spec.x - spec.r); col <= spec.x; ++col)
        for (std::int64_t row = 1; row <= spec.y; ++row) bg.T.push_back(bg.id({col, row}));

    for (const Vertex s : bg.S) {
        const Vec2 sp = bg.coord(s);
        for (std::size_t j = 0; j < spec.W.vectors.size(); ++j) {
            const Vec2 v = spec.W.vectors[j];
            const std::int64_t k = (spec.x - sp.x) / v.x;
            const Vec2 tp = sp + k * v;
            if (k < 1 || !bg.in_T(tp))
                fail(ErrorCode::SpecViolation, "s + k v left the grid or missed T for s=(" + std::to_string(sp.x) + "," +
                                                   std::to_string(sp.y) + ")");
            CriticalPair p{s, bg.id(tp), j, {}};
            p.path.reserve(static_cast<std::size_t>(k) + 1);
            for (std::int64_t i = 0; i <= k; ++i) p.path.push_back(bg.id(sp + i * v));
            for (std::size_t i = 0; i + 1 < p.path.size(); ++i) bg.graph.add_edge(p.path[i], p.path[i + 1]);
            bg.pairs.push_back(std::move(p));
        }
    }
    return bg;
}

/// W_I = {(r_I - c + i, sum_{j=i}^{c} j) : i in [1, c]}, in increasing angle.
[[nodiscard]] inline ConvexVectorSet inner_vector_set(std::int64_t c, std::int64_t r_i) {
    require(c >= 1, ErrorCode::InvalidParams, "c must be >= 1");
    ConvexVectorSet w;
    w.r = r_i;
    for (std::int64_t i = c; i >= 1; --i) w.vectors.push_back({r_i - c + i, (i + c) * (c - i + 1) / 2});
    w.psi_max = max_angle_to_horizontal(w.vectors);
    return w;
}

/// lambda = prod_{i=1}^{c} (r_I - c + i), or nullopt on int64 overflow.
[[nodiscard]] inline std::optional<std::int64_t> inner_lambda(std::int64_t c, std::int64_t r_i) {
    __int128 lambda = 1;
    for (std::int64_t i = 1; i <= c; ++i) {
        lambda *= r_i - c + i;
        if (lambda > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    }
    return static_cast<std::int64_t>(lambda);
}

struct InnerParams {
    std::int64_t c = 2;
    std::int64_t r = 4;
    std::int64_t x = 26;
    std::int64_t y = 52;
};

[[nodiscard]] inline BaseGraph build_inner_graph(const InnerParams& p) {
    require(p.c >= 1, ErrorCode::InvalidParams, "c must be >= 1");
    if (p.r % 2 != 0) fail(ErrorCode::SpecViolation, "r_I must be even");
    if (p.r - p.c + 1 < 1) fail(ErrorCode::SpecViolation, "r_I must exceed c - 1");
    const auto lambda = inner_lambda(p.c, p.r);
    if (!lambda) fail(ErrorCode::DivisibilityViolation, "lambda overflows 64 bits");
    if (((p.x - p.r / 2) % *lambda + *lambda) % *lambda != 0)
        fail(ErrorCode::DivisibilityViolation, "x_I = " + std::to_string(p.x) + " is not r_I/2 = " +
                                                   std::to_string(p.r / 2) + " modulo lambda = " + std::to_string(*lambda));
    auto bg = build_base_graph({p.x, p.y, p.r, inner_vector_set(p.c, p.r)});
    for (const auto& pair : bg.pairs) {
        const auto dx = bg.coord(pair.t).x - bg.coord(pair.s).x;
        if (dx != p.x - p.r / 2)
            fail(ErrorCode::SpecViolation, "inner pair with horizontal displacement " + std::to_string(dx) + " != x_I - r_I/2");
    }
    return bg;
}

/// Smallest admissible inner parameters for a given c: smallest even r_I
/// with every W_I vector in [r_I/2, r_I] x [0, first coordinate], then the
/// smallest x_I >= 4 r_I with x_I = r_I/2 mod lambda, then the smallest even
/// y_I with max tan <= y_I / (2 x_I).
[[nodiscard]] inline InnerParams search_inner_params(std::int64_t c) {
    require(c >= 1 && c <= 8, ErrorCode::InvalidParams, "preset search supports 1 <= c <= 8");
    InnerParams p;
    p.c = c;
    for (p.r = 2;; p.r += 2) {
        const bool low_ok = 2 * (p.r - c + 1) >= p.r && p.r - c + 1 >= 1;
        const bool angle_ok = c * (c + 1) / 2 <= p.r - c + 1;
        if (low_ok && angle_ok) break;
    }
    const auto lambda = *inner_lambda(c, p.r);
    p.x = p.r / 2;
    while (p.x < 4 * p.r) p.x += lambda;
    const auto w = inner_vector_set(c, p.r);
    p.y = 2;
    for (const auto& v : w.vectors)
        while (2 * p.x * v.y > p.y * v.x) p.y += 2;
    return p;
}

/// x_O = ceil(sqrt(n_O / 2)), y_O = 2 x_O.
[[nodiscard]] inline std::pair<std::int64_t, std::int64_t> outer_shape(std::int64_t n_o) {
    require(n_o >= 2, ErrorCode::InvalidParams, "n_O must be >= 2");
    std::int64_t x = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n_o) / 2.0));
    while (2 * x * x < n_o) ++x;
    while (x > 1 && 2 * (x - 1) * (x - 1) >= n_o) --x;
    return {x, 2 * x};
}

[[nodiscard]] inline BaseGraph build_outer_graph(std::int64_t x_o, std::int64_t y_o, const ConvexVectorSet& w_o) {
    require(!w_o.stripes.empty(), ErrorCode::SpecViolation, "outer vector set must be striped");
    return build_base_graph({x_o, y_o, w_o.r, w_o});
}

/// phi as a map from outer vector index to inner pair index; trimmed outer
/// vectors map to nullopt.
struct Phi {
    std::vector<std::optional<std::size_t>> inner_pair;
    std::size_t per_stripe = 0;
    std::size_t trimmed_outer = 0;
    std::size_t trimmed_inner = 0;
};

/// Stripe i maps, in order, onto the inner pairs whose canonical vector is
/// the i-th W_I vector. Both sides are trimmed to the common size: the
/// highest-angle vectors of each stripe and the highest-indexed pairs of each
/// inner vector class go.
[[nodiscard]] inline Phi default_phi(const ConvexVectorSet& w_o, const BaseGraph& inner) {
    const auto c = inner.spec.W.vectors.size();
    if (w_o.stripes.size() != c)
        fail(ErrorCode::CardinalityMismatch, std::to_string(w_o.stripes.size()) + " stripes for " + std::to_string(c) +
                                                 " inner vectors");
    std::vector<std::vector<std::size_t>> classes(c);
    for (std::size_t i = 0; i < inner.pairs.size(); ++i) classes[inner.pairs[i].vector_index].push_back(i);
    for (std::size_t i = 1; i < c; ++i)
        if (classes[i].size() != classes[0].size())
            fail(ErrorCode::CardinalityMismatch, "inner vector classes differ in size");
    for (const auto& s : w_o.stripes)
        if (s.size() != w_o.stripes[0].size()) fail(ErrorCode::CardinalityMismatch, "stripes differ in size");
    Phi phi;
    phi.per_stripe = std::min(w_o.stripes[0].size(), classes[0].size());
    if (phi.per_stripe == 0) fail(ErrorCode::CardinalityMismatch, "nothing left after trimming");
    phi.trimmed_outer = c * (w_o.stripes[0].size() - phi.per_stripe);
    phi.trimmed_inner = c * (classes[0].size() - phi.per_stripe);
    phi.inner_pair.assign(w_o.vectors.size(), std::nullopt);
    for (std::size_t i = 0; i < c; ++i) {
        // stripe vectors by angle
        auto stripe = w_o.stripes[i];
        std::sort(stripe.begin(), stripe.end(),
                  [&](std::size_t a, std::size_t b) { return polar_less(w_o.vectors[a], w_o.vectors[b]); });
        for (std::size_t k = 0; k < phi.per_stripe; ++k) phi.inner_pair[stripe[k]] = classes[i][k];
    }
    return phi;
}

/// phi(u), phi(v) share an inner vector iff u and v share a stripe, over all
/// ordered pairs of mapped outer vectors.
[[nodiscard]] inline bool check_phi_alignment(const ConvexVectorSet& w_o, const BaseGraph& inner, const Phi& phi) {
    std::vector<std::size_t> stripe_of(w_o.vectors.size());
    for (std::size_t s = 0; s < w_o.stripes.size(); ++s)
        for (const auto v : w_o.stripes[s]) stripe_of[v] = s;
    for (std::size_t a = 0; a < w_o.vectors.size(); ++a)
        for (std::size_t b = 0; b < w_o.vectors.size(); ++b) {
            if (!phi.inner_pair[a] || !phi.inner_pair[b]) continue;
            const bool same_inner =
                inner.pairs[*phi.inner_pair[a]].vector_index == inner.pairs[*phi.inner_pair[b]].vector_index;
            if (same_inner != (stripe_of[a] == stripe_of[b])) return false;
        }
    return true;
}

struct VertexOrigin {
    enum class Kind { Inner, Subdivision } kind = Kind::Inner;
    Vertex outer = 0;          // copy index (Inner)
    Vertex inner = 0;          // vertex of G_I (Inner)
    std::size_t outer_edge = 0; // index into ComposedInstance::outer_edges (Subdivision)
    std::size_t position = 0;  // 1..z-1 counted from the lower outer endpoint (Subdivision)
};

struct ComposedPair {
    Vertex s = 0;
    Vertex t = 0;
    std::size_t outer_pair = 0;
    std::size_t vector_index = 0; // canonical vector in W_O
    std::size_t inner_pair = 0;   // phi(vector)
    std::size_t hops = 0;         // outer path edges
    std::vector<Vertex> path;
};

struct ComposedInstance {
    Graph graph;
    std::int64_t z = 0;
    Phi phi;
    BaseGraph outer;
    BaseGraph inner;
    std::size_t n_inner = 0;
    std::size_t n_outer = 0;
    std::vector<Edge> outer_edges; // sorted; subdivided paths in this order
    std::vector<ComposedPair> pairs;
    bool pruned = true;

    [[nodiscard]] Vertex inner_vertex(Vertex copy, Vertex v) const { return static_cast<Vertex>(copy * n_inner + v); }
    [[nodiscard]] Vertex subdivision_vertex(std::size_t edge, std::size_t position) const {
        return static_cast<Vertex>(n_outer * n_inner + edge * static_cast<std::size_t>(z - 1) + position - 1);
    }
    [[nodiscard]] VertexOrigin origin(Vertex v) const {
        require(v < graph.vertex_count(), ErrorCode::InvalidParams, "vertex out of range");
        VertexOrigin o;
        if (v < n_outer * n_inner) {
            o.outer = static_cast<Vertex>(v / n_inner);
            o.inner = static_cast<Vertex>(v % n_inner);
            return o;
        }
        const auto rest = v - n_outer * n_inner;
        o.kind = VertexOrigin::Kind::Subdivision;
        o.outer_edge = rest / static_cast<std::size_t>(z - 1);
        o.position = rest % static_cast<std::size_t>(z - 1) + 1;
        return o;
    }
    [[nodiscard]] std::size_t outer_edge_index(Vertex a, Vertex b) const {
        const Edge key{std::min(a, b), std::max(a, b), 1};
        const auto it = std::lower_bound(outer_edges.begin(), outer_edges.end(), key);
        require(it != outer_edges.end() && it->u == key.u && it->v == key.v, ErrorCode::InvalidParams, "not an outer edge");
        return static_cast<std::size_t>(it - outer_edges.begin());
    }
};

struct ComposeOptions {
    bool prune = true; // drop inner edges on no composed canonical path
};

/// The obstacle product. Outer edge (u, u+v) becomes a path of z edges from
/// output port t_I of copy u to input port s_I of copy u+v, where
/// (s_I, t_I) = phi(v). The composed pair of outer pair (s_O, t_O) runs from
/// s_I in copy s_O to s_I in copy t_O.
[[nodiscard]] inline ComposedInstance compose(const BaseGraph& outer, const BaseGraph& inner, const Phi& phi,
                                              const ComposeOptions& opt = {}) {
    ComposedInstance inst;
    inst.outer = outer;
    inst.inner = inner;
    inst.phi = phi;
    inst.pruned = opt.prune;
    inst.n_inner = inner.graph.vertex_count();
    inst.n_outer = outer.graph.vertex_count();
    const auto p_i = inner.pairs.size();
    require(p_i > 0, ErrorCode::InvalidParams, "inner graph has no critical pairs");
    if (inst.n_inner % p_i != 0) {
        const auto lo = inst.n_inner / p_i * p_i;
        fail(ErrorCode::NonIntegralZ, "|V_I| = " + std::to_string(inst.n_inner) + " is not a multiple of |P_I| = " +
                                          std::to_string(p_i) + "; nearest admissible |V_I|: " + std::to_string(lo) +
                                          " or " + std::to_string(lo + p_i));
    }
    inst.z = static_cast<std::int64_t>(inst.n_inner / p_i);
    require(phi.inner_pair.size() == outer.spec.W.vectors.size(), ErrorCode::CardinalityMismatch,
            "phi does not cover W_O");
    {
        std::vector<char> used(p_i, 0);
        for (const auto& m : phi.inner_pair) {
            if (!m) continue;
            require(*m < p_i, ErrorCode::InvalidParams, "phi maps outside P_I");
            if (used[*m]) fail(ErrorCode::PortCollision, "two outer vectors share inner pair " + std::to_string(*m));
            used[*m] = 1;
        }
    }

    inst.outer_edges = outer.graph.edges();
    const auto total = inst.n_outer * inst.n_inner + inst.outer_edges.size() * static_cast<std::size_t>(inst.z - 1);
    require(total < std::numeric_limits<Vertex>::max(), ErrorCode::InvalidParams, "composed instance too large");
    inst.graph = Graph(total);
    auto& g = inst.graph;

    for (std::size_t op = 0; op < outer.pairs.size(); ++op) {
        const auto& opair = outer.pairs[op];
        const auto mapped = phi.inner_pair[opair.vector_index];
        if (!mapped) continue;
        const auto& ipair = inner.pairs[*mapped];
        ComposedPair cp;
        cp.outer_pair = op;
        cp.vector_index = opair.vector_index;
        cp.inner_pair = *mapped;
        cp.hops = opair.path.size() - 1;
        for (std::size_t h = 0; h + 1 < opair.path.size(); ++h) {
            const Vertex u = opair.path[h], w = opair.path[h + 1];
            for (const Vertex iv : ipair.path) cp.path.push_back(inst.inner_vertex(u, iv));
            const auto e = inst.outer_edge_index(u, w);
            // u < w: outer paths move right and ids are column-major
            for (std::int64_t k = 1; k < inst.z; ++k) cp.path.push_back(inst.subdivision_vertex(e, static_cast<std::size_t>(k)));
        }
        cp.path.push_back(inst.inner_vertex(opair.path.back(), ipair.s));
        for (std::size_t k = 0; k + 1 < cp.path.size(); ++k) g.add_edge(cp.path[k], cp.path[k + 1]);
        cp.s = cp.path.front();
        cp.t = cp.path.back();
        inst.pairs.push_back(std::move(cp));
    }
    if (!opt.prune) {
        const auto inner_edges = inner.graph.edges();
        for (Vertex u = 0; u < inst.n_outer; ++u)
            for (const auto& e : inner_edges) g.add_edge(inst.inner_vertex(u, e.u), inst.inner_vertex(u, e.v));
    }
    return inst;
}

enum class LbPreset { Tiny, InnerC2, InnerC3 };

[[nodiscard]] inline std::optional<LbPreset> parse_lb_preset(std::string_view s) {
    if (s == "tiny") return LbPreset::Tiny;
    if (s == "inner-c2") return LbPreset::InnerC2;
    if (s == "inner-c3") return LbPreset::InnerC3;
    return std::nullopt;
}

/// Outer set of the tiny preset: r_O = 2, W_O = {(2,0)} | {(1,1)}.
[[nodiscard]] inline ConvexVectorSet tiny_outer_set() {
    ConvexVectorSet w;
    w.r = 2;
    w.vectors = {{2, 0}, {1, 1}};
    w.stripes = {{0}, {1}};
    w.beta = 1;
    w.psi2 = std::atan(1.0);
    w.psi_max = max_angle_to_horizontal(w.vectors);
    return w;
}

inline constexpr std::int64_t kTinyOuterX = 8;
inline constexpr std::int64_t kTinyOuterY = 16;

[[nodiscard]] inline InnerParams preset_inner_params(LbPreset p) {
    return p == LbPreset::InnerC3 ? search_inner_params(3) : search_inner_params(2);
}

/// Smallest composed instance: the c = 2 inner graph inside an 8 x 16 outer grid.
[[nodiscard]] inline ComposedInstance build_tiny_instance(const ComposeOptions& opt = {}) {
    const auto inner = build_inner_graph(preset_inner_params(LbPreset::Tiny));
    const auto w_o = tiny_outer_set();
    const auto outer = build_outer_graph(kTinyOuterX, kTinyOuterY, w_o);
    return compose(outer, inner, default_phi(w_o, inner), opt);
}

} // namespace spanlab
