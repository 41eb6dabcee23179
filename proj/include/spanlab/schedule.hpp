// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exponent recurrences of the recursive constructions:
//   emulator  a_0 = 1/4, a_{i+1} = 1/(6 - 4 a_i),     fixed point (3 - sqrt 5)/4
//   spanner   a_0 = 3/7, a_{i+1} = 1/(3 - (4/3) a_i), fixed point (9 - sqrt 33)/8

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spanlab/error.hpp"
#include "spanlab/numeric.hpp"

namespace spanlab {

using Rational = boost::multiprecision::cpp_rational;

enum class ScheduleKind { Emulator, Spanner };

[[nodiscard]] inline std::string_view to_string(ScheduleKind k) { return k == ScheduleKind::Emulator ? "emulator" : "spanner"; }

[[nodiscard]] inline std::optional<ScheduleKind> parse_schedule_kind(std::string_view s) {
    if (s == "emulator") return ScheduleKind::Emulator;
    if (s == "spanner") return ScheduleKind::Spanner;
    return std::nullopt;
}

struct ExponentSchedule {
    ScheduleKind kind = ScheduleKind::Emulator;
    std::vector<Rational> values; // a_0 .. a_k
    double fixed_point = 0;
};

[[nodiscard]] inline Rational schedule_start(ScheduleKind kind) {
    return kind == ScheduleKind::Emulator ? Rational(1, 4) : Rational(3, 7);
}

/// One application of the recursion: the new exponent given the old one.
[[nodiscard]] inline Rational schedule_step(ScheduleKind kind, const Rational& a) {
    if (kind == ScheduleKind::Emulator) return Rational(1) / (Rational(6) - 4 * a);
    return Rational(1) / (Rational(3) - Rational(4, 3) * a);
}

[[nodiscard]] inline double schedule_fixed_point(ScheduleKind kind) {
    return kind == ScheduleKind::Emulator ? (3.0 - std::sqrt(5.0)) / 4.0 : (9.0 - std::sqrt(33.0)) / 8.0;
}

[[nodiscard]] inline ExponentSchedule exponent_schedule(ScheduleKind kind, int iterations) {
    require(iterations >= 0, ErrorCode::InvalidParams, "iterations must be >= 0");
    ExponentSchedule s{kind, {schedule_start(kind)}, schedule_fixed_point(kind)};
    for (int i = 0; i < iterations; ++i) s.values.push_back(schedule_step(kind, s.values.back()));
    return s;
}

[[nodiscard]] inline double to_double(const Rational& q) { return q.convert_to<double>(); }

[[nodiscard]] inline std::string to_fraction(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Radius exponent for a level whose base has exponent alpha.
[[nodiscard]] inline long double radius_exponent(ScheduleKind kind, long double alpha) {
    return kind == ScheduleKind::Emulator ? 1.0L / (6.0L - 4.0L * alpha) : 1.0L / (3.0L - 4.0L * alpha / 3.0L);
}

/// r = ceil(n^(1/(6 - 4 alpha))) or ceil(n^(1/(3 - 4 alpha / 3))).
[[nodiscard]] inline std::int64_t radius_for(ScheduleKind kind, std::size_t n, double alpha) {
    require(alpha > 0 && alpha < 1, ErrorCode::InvalidAlpha, "alpha must lie in (0, 1)");
    require(n >= 2, ErrorCode::InvalidParams, "radius_for needs n >= 2");
    return ceil_pow(static_cast<long double>(n), radius_exponent(kind, alpha));
}

/// Exact variant for rational alpha; avoids the binary rounding of 3/7.
[[nodiscard]] inline std::int64_t radius_for(ScheduleKind kind, std::size_t n, const Rational& alpha) {
    require(alpha > 0 && alpha < 1, ErrorCode::InvalidAlpha, "alpha must lie in (0, 1)");
    require(n >= 2, ErrorCode::InvalidParams, "radius_for needs n >= 2");
    const Rational e = kind == ScheduleKind::Emulator ? Rational(1) / (6 - 4 * alpha) : Rational(1) / (3 - Rational(4, 3) * alpha);
    return ceil_pow(static_cast<long double>(n),
                    numerator(e).convert_to<long double>() / denominator(e).convert_to<long double>());
}

} // namespace spanlab
