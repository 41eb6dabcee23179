// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Strongly convex sets of integer vectors near the circle of radius r, and
// the striped variant used for outer graphs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/geometry.hpp"

namespace spanlab {

struct ConvexVectorSet {
    std::int64_t r = 0;
    std::vector<Vec2> vectors;                  // counterclockwise order
    double psi_max = 0;                         // largest angle to the horizontal
    std::vector<std::vector<std::size_t>> stripes; // indices into vectors, empty if unstriped
    double psi2 = 0;
    std::size_t beta = 0;
    // construction trail
    std::size_t pool_size = 0;
    std::size_t hull_size = 0;
    std::size_t thinned_size = 0;
};

struct ConvexSetOptions {
    double tau = 0.25;   // thinning threshold factor on r^(1/3)
    bool widened = false; // annulus [r-1, r] instead of [r - r^(-1/3), r]
};

/// Smallest integer N with N >= (r - r^(-1/3))^2; the lower edge of the
/// annulus in squared norm. Widened mode uses (r - 1)^2.
[[nodiscard]] inline std::int64_t annulus_min_norm2(std::int64_t r, bool widened = false) {
    if (widened) return (r - 1) * (r - 1);
    const long double inner = static_cast<long double>(r) - std::cbrt(1.0L / static_cast<long double>(r));
    return static_cast<std::int64_t>(std::ceil(inner * inner - 1e-12L));
}

[[nodiscard]] inline double max_angle_to_horizontal(const std::vector<Vec2>& w) {
    double m = 0;
    for (const auto& v : w) m = std::max(m, std::fabs(angle_of(v)));
    return m;
}

/// First-quadrant lattice vectors with squared norm in the annulus, by
/// exhaustive enumeration, in counterclockwise order.
[[nodiscard]] inline std::vector<Vec2> annulus_pool(std::int64_t r, bool widened = false) {
    const auto lo = annulus_min_norm2(r, widened), hi = r * r;
    std::vector<Vec2> out;
    for (std::int64_t x = 0; x <= r; ++x)
        for (std::int64_t y = 0; y <= r; ++y) {
            const auto n2 = x * x + y * y;
            if (n2 >= lo && n2 <= hi && n2 > 0) out.push_back({x, y});
        }
    std::sort(out.begin(), out.end(), polar_less);
    return out;
}

/// The thinned, projection-dominant set W(r) in the first quadrant:
/// annulus pool -> hull vertices -> drop v_i with |v_{i+1} - v_i| <= tau r^(1/3)
/// -> shortest-first pass discarding u with proj_v u >= |v|.
[[nodiscard]] inline ConvexVectorSet build_convex_set(std::int64_t r, const ConvexSetOptions& opt = {}) {
    require(r >= 8, ErrorCode::InvalidParams, "convex set radius must be >= 8");
    ConvexVectorSet out;
    out.r = r;
    const auto pool = annulus_pool(r, opt.widened);
    out.pool_size = pool.size();
    if (pool.empty()) fail(ErrorCode::TooSparse, "no lattice point in the annulus for r=" + std::to_string(r));

    // Vectors whose endpoints are strict vertices of the hull of all endpoints.
    auto hull = convex_hull(pool);
    std::vector<Vec2> vertices;
    for (const auto& v : pool)
        if (std::find(hull.begin(), hull.end(), v) != hull.end()) vertices.push_back(v);
    out.hull_size = vertices.size();

    const long double limit = opt.tau * std::cbrt(static_cast<long double>(r));
    std::vector<Vec2> thinned;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2 u = vertices[(i + 1) % vertices.size()] - vertices[i];
        if (vertices.size() == 1 || static_cast<long double>(norm2(u)) > limit * limit) thinned.push_back(vertices[i]);
    }
    out.thinned_size = thinned.size();

    std::vector<Vec2> by_length = thinned;
    std::stable_sort(by_length.begin(), by_length.end(), [](Vec2 a, Vec2 b) { return norm2(a) < norm2(b); });
    std::vector<char> dead(by_length.size(), 0);
    for (std::size_t i = 0; i < by_length.size(); ++i) {
        if (dead[i]) continue;
        const Vec2 v = by_length[i];
        for (std::size_t j = i + 1; j < by_length.size(); ++j)
            if (!dead[j] && dot(by_length[j], v) >= norm2(v)) dead[j] = 1;
    }
    for (std::size_t i = 0; i < by_length.size(); ++i)
        if (!dead[i]) out.vectors.push_back(by_length[i]);
    std::sort(out.vectors.begin(), out.vectors.end(), polar_less);
    if (out.vectors.empty()) fail(ErrorCode::TooSparse, "construction left no vectors for r=" + std::to_string(r));
    out.psi_max = max_angle_to_horizontal(out.vectors);
    return out;
}

struct StrongConvexity {
    bool ok = true;
    std::optional<Vec2> witness;
};

/// W is strongly convex iff no v0 in W lies in the closed hull of
/// {+-u : u in W, u != v0} together with the origin. That hull is the set of
/// combinations sum lambda_i u_i with sum |lambda_i| <= 1, and a combination
/// that also uses v0 itself can be rescaled away, so this is the definition
/// restated for the plane.
[[nodiscard]] inline StrongConvexity check_strong_convexity(const std::vector<Vec2>& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<Vec2> pts{{0, 0}};
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j == i) continue;
            if (w[j] == w[i]) return {false, w[i]};
            pts.push_back(w[j]);
            pts.push_back(-w[j]);
        }
        if (w[i] == Vec2{0, 0} || in_closed_hull(pts, w[i])) return {false, w[i]};
    }
    return {};
}

struct CisReport {
    bool property1 = true;
    bool property3 = true;
    double property2_ratio = 0; // max (count - 1) / (sector angle * r^(2/3)) over sampled sectors
    std::vector<Vec2> property1_violations;
    std::vector<std::pair<Vec2, Vec2>> property3_violations; // (u, v) with proj_v u >= |v|
    [[nodiscard]] bool ok() const noexcept { return property1 && property3; }
};

/// Property 1 (norm band) and property 3 (proj_v u < |v|) exactly; property
/// 2 measured over angular windows of up to `sector_samples` consecutive
/// vectors.
[[nodiscard]] inline CisReport check_cis_properties(const std::vector<Vec2>& w, std::int64_t r,
                                                    std::size_t sector_samples = 16, bool widened = false) {
    CisReport rep;
    const auto lo = annulus_min_norm2(r, widened), hi = r * r;
    for (const auto& v : w)
        if (norm2(v) < lo || norm2(v) > hi) {
            rep.property1 = false;
            rep.property1_violations.push_back(v);
        }
    for (const auto& v : w)
        for (const auto& u : w)
            if (!(u == v) && dot(u, v) >= norm2(v)) {
                rep.property3 = false;
                rep.property3_violations.emplace_back(u, v);
            }
    std::vector<Vec2> sorted = w;
    std::sort(sorted.begin(), sorted.end(), polar_less);
    const double scale = std::pow(static_cast<double>(r), 2.0 / 3.0);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size() && j - i <= sector_samples; ++j) {
            const double angle = std::fabs(angle_of(sorted[j]) - angle_of(sorted[i]));
            const double ratio = angle > 0 ? static_cast<double>(j - i) / (angle * scale) : std::numeric_limits<double>::infinity();
            rep.property2_ratio = std::max(rep.property2_ratio, ratio);
        }
    return rep;
}

enum class Reflection { AcrossXAxis, AcrossYAxis, AcrossDiagonal, AcrossAntiDiagonal };

[[nodiscard]] inline Vec2 reflect(Vec2 v, Reflection how) {
    switch (how) {
    case Reflection::AcrossXAxis: return {v.x, -v.y};
    case Reflection::AcrossYAxis: return {-v.x, v.y};
    case Reflection::AcrossDiagonal: return {v.y, v.x};
    case Reflection::AcrossAntiDiagonal: return {-v.y, -v.x};
    }
    return v;
}

[[nodiscard]] inline std::vector<Vec2> reflect(const std::vector<Vec2>& w, Reflection how) {
    std::vector<Vec2> out;
    out.reserve(w.size());
    for (const auto& v : w) out.push_back(reflect(v, how));
    return out;
}

namespace detail {

// Greedy carving of c stripes of size beta from angle-sorted vectors, each
// stripe starting at least psi2 past the previous stripe's last vector.
inline std::optional<std::vector<std::vector<std::size_t>>> carve(const std::vector<Vec2>& sorted, std::size_t c,
                                                                 std::size_t beta, double psi2) {
    std::vector<std::vector<std::size_t>> stripes;
    std::size_t i = 0;
    for (std::size_t s = 0; s < c; ++s) {
        if (s > 0) {
            const Vec2 last = sorted[stripes.back().back()];
            while (i < sorted.size() && !angle_at_least(last, sorted[i], psi2)) ++i;
        }
        if (i + beta > sorted.size()) return std::nullopt;
        stripes.emplace_back();
        for (std::size_t k = 0; k < beta; ++k) stripes.back().push_back(i++);
    }
    return stripes;
}

} // namespace detail

/// Striped outer set: take W(r_O), pick the psi1-sector with the most
/// vectors inside [0, pi/4] or [pi/4, pi/2] (the latter reflected across the
/// diagonal), then carve c stripes of the largest feasible equal size beta,
/// skipping an arc of psi2 between stripes.
[[nodiscard]] inline ConvexVectorSet build_striped_set(std::int64_t r_o, std::size_t c, double psi1, double psi2,
                                                       const ConvexSetOptions& opt = {}) {
    require(c >= 1, ErrorCode::InvalidParams, "stripe count c must be >= 1");
    require(psi1 > 0 && psi2 >= 0, ErrorCode::InvalidParams, "psi1 must be positive and psi2 non-negative");
    const auto base = build_convex_set(r_o, opt);
    std::vector<Vec2> low, high;
    for (const auto& v : base.vectors) {
        if (v.y <= v.x) low.push_back(v);
        if (v.y >= v.x) high.push_back(reflect(v, Reflection::AcrossDiagonal));
    }
    std::sort(low.begin(), low.end(), polar_less);
    std::sort(high.begin(), high.end(), polar_less);

    // densest window of angular width <= psi1
    std::vector<Vec2> best;
    for (const auto* side : {&low, &high}) {
        const auto& vs = *side;
        for (std::size_t i = 0, j = 0; i < vs.size(); ++i) {
            j = std::max(j, i);
            while (j + 1 < vs.size() && (psi1 >= std::numbers::pi / 2 || angle_at_most(vs[i], vs[j + 1], psi1))) ++j;
            if (j - i + 1 > best.size()) best.assign(vs.begin() + static_cast<std::ptrdiff_t>(i), vs.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        }
    }
    ConvexVectorSet out;
    out.r = r_o;
    out.pool_size = base.pool_size;
    out.hull_size = base.hull_size;
    out.thinned_size = base.thinned_size;
    out.psi2 = psi2;
    for (std::size_t beta = best.size() / c; beta >= 1; --beta) {
        if (auto stripes = detail::carve(best, c, beta, psi2)) {
            out.beta = beta;
            for (auto& stripe : *stripes) {
                std::vector<std::size_t> idx;
                for (const auto k : stripe) {
                    idx.push_back(out.vectors.size());
                    out.vectors.push_back(best[k]);
                }
                out.stripes.push_back(std::move(idx));
            }
            out.psi_max = max_angle_to_horizontal(out.vectors);
            return out;
        }
    }
    fail(ErrorCode::InfeasibleStripes, "a sector of angle " + std::to_string(psi1) + " holding " +
                                           std::to_string(best.size()) + " vectors cannot host " + std::to_string(c) +
                                           " stripes separated by " + std::to_string(psi2));
}

struct StripeReport {
    bool equal_sizes = true;
    bool separated = true;
    bool coordinates_ok = true;
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const noexcept { return equal_sizes && separated && coordinates_ok; }
};

/// Equal stripe sizes, pairwise cross-stripe angles >= psi2, and for every
/// vector: norm in the annulus, and first coordinate in [r/2, r] when its
/// angle is at most pi/4.
[[nodiscard]] inline StripeReport verify_stripes(const ConvexVectorSet& w, std::size_t c, double psi2, bool widened = false) {
    StripeReport rep;
    if (w.stripes.size() != c) {
        rep.equal_sizes = false;
        rep.violations.push_back("expected " + std::to_string(c) + " stripes, found " + std::to_string(w.stripes.size()));
    }
    for (const auto& s : w.stripes)
        if (s.size() != w.stripes.front().size()) {
            rep.equal_sizes = false;
            rep.violations.push_back("stripe sizes differ");
            break;
        }
    for (std::size_t a = 0; a < w.stripes.size(); ++a)
        for (std::size_t b = a + 1; b < w.stripes.size(); ++b)
            for (const auto i : w.stripes[a])
                for (const auto j : w.stripes[b])
                    if (!angle_at_least(w.vectors[i], w.vectors[j], psi2)) {
                        rep.separated = false;
                        rep.violations.push_back("vectors " + std::to_string(i) + " and " + std::to_string(j) +
                                                 " in stripes " + std::to_string(a) + ", " + std::to_string(b) +
                                                 " are closer than psi2");
                    }
    const auto lo = annulus_min_norm2(w.r, widened), hi = w.r * w.r;
    for (std::size_t i = 0; i < w.vectors.size(); ++i) {
        const auto v = w.vectors[i];
        const bool norm_ok = norm2(v) >= lo && norm2(v) <= hi;
        const bool coord_ok = v.y > v.x || (2 * v.x >= w.r && v.x <= w.r);
        if (!norm_ok || !coord_ok) {
            rep.coordinates_ok = false;
            rep.violations.push_back("vector " + std::to_string(i) + " (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                                     ") outside the norm band or coordinate range");
        }
    }
    return rep;
}

} // namespace spanlab
