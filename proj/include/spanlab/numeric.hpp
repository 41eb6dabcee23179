// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "spanlab/error.hpp"

namespace spanlab {

/// ceil(base^exponent) for base >= 1. Evaluated in long double; a result
/// within relative 1e-9 of an integer snaps to it, so exact powers such as
/// (2^20)^(1/5) = 16 do not round up to 17.
[[nodiscard]] inline std::int64_t ceil_pow(long double base, long double exponent) {
    require(base >= 1, ErrorCode::InvalidParams, "ceil_pow expects base >= 1");
    const long double x = std::pow(base, exponent);
    const long double nearest = std::round(x);
    if (std::fabs(x - nearest) <= 1e-9L * std::max<long double>(1, nearest)) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::ceil(x));
}

[[nodiscard]] constexpr std::size_t ceil_log2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

} // namespace spanlab
