// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact planar predicates on integer vectors.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace spanlab {

struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(std::int64_t k, Vec2 a) { return {k * a.x, k * a.y}; }
};

[[nodiscard]] constexpr std::int64_t dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr std::int64_t cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
[[nodiscard]] constexpr std::int64_t norm2(Vec2 a) { return dot(a, a); }
[[nodiscard]] inline double norm(Vec2 a) { return std::sqrt(static_cast<double>(norm2(a))); }
[[nodiscard]] inline double angle_of(Vec2 a) { return std::atan2(static_cast<double>(a.y), static_cast<double>(a.x)); }

/// Counterclockwise order by polar angle in [0, 2 pi), exact.
[[nodiscard]] inline bool polar_less(Vec2 a, Vec2 b) {
    auto half = [](Vec2 v) { return v.y < 0 || (v.y == 0 && v.x < 0) ? 1 : 0; };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

/// Angle between u and v is at least psi (0 <= psi < pi/2), for vectors
/// with dot(u, v) >= 0. Uses |cross| >= tan(psi) * dot.
[[nodiscard]] inline bool angle_at_least(Vec2 u, Vec2 v, double psi) {
    const auto c = static_cast<long double>(std::llabs(cross(u, v)));
    const auto d = static_cast<long double>(dot(u, v));
    if (d <= 0) return true;
    return c >= std::tan(static_cast<long double>(psi)) * d;
}

/// Angle between u and v is at most psi (0 <= psi < pi/2).
[[nodiscard]] inline bool angle_at_most(Vec2 u, Vec2 v, double psi) {
    const auto d = static_cast<long double>(dot(u, v));
    if (d <= 0) return false;
    const auto c = static_cast<long double>(std::llabs(cross(u, v)));
    return c <= std::tan(static_cast<long double>(psi)) * d;
}

/// Strict convex hull (no collinear points), counterclockwise, by Andrew's
/// monotone chain. Degenerate inputs give 1 or 2 points.
[[nodiscard]] inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const auto& p = pts[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

/// q lies in the closed convex hull of pts.
[[nodiscard]] inline bool in_closed_hull(const std::vector<Vec2>& pts, Vec2 q) {
    const auto hull = convex_hull(pts);
    if (hull.empty()) return false;
    if (hull.size() == 1) return hull[0] == q;
    if (hull.size() == 2) {
        const Vec2 a = hull[0], b = hull[1];
        return cross(b - a, q - a) == 0 && dot(q - a, b - a) >= 0 && dot(q - b, a - b) >= 0;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
        if (cross(b - a, q - a) < 0) return false;
    }
    return true;
}

} // namespace spanlab
