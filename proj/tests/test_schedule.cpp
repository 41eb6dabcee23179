#include <cmath>
#include <numeric>

#include "spanlab/spanlab.hpp"
#include "support.hpp"

using namespace spanlab;

namespace {

// Fractions as reduced (p, q) over long long; the first few iterates fit.
struct Frac {
    long long p, q;
};

Frac reduce(long long p, long long q) {
    const auto g = std::gcd(p, q);
    return {p / g, q / g};
}

/// a -> 1 / (6 - 4a) on p/q: q / (6q - 4p).
Frac emulator_step(Frac a) { return reduce(a.q, 6 * a.q - 4 * a.p); }
/// a -> 1 / (3 - 4a/3) on p/q: 3q / (9q - 4p).
Frac spanner_step(Frac a) { return reduce(3 * a.q, 9 * a.q - 4 * a.p); }

} // namespace

TEST_CASE("emulator exponents") {
    const auto s = exponent_schedule(ScheduleKind::Emulator, 3);
    REQUIRE(s.values.size() == 4);
    CHECK(to_fraction(s.values[0]) == "1/4");
    CHECK(to_fraction(s.values[1]) == "1/5");
    CHECK(to_fraction(s.values[2]) == "5/26");
    CHECK(to_fraction(s.values[3]) == "13/68");
}

TEST_CASE("exact iterates agree with an independent fraction recurrence") {
    Frac a{1, 4}, b{3, 7};
    const auto se = exponent_schedule(ScheduleKind::Emulator, 12);
    const auto ss = exponent_schedule(ScheduleKind::Spanner, 8);
    for (int i = 0; i <= 12; ++i) {
        CHECK(to_fraction(se.values[i]) == std::to_string(a.p) + "/" + std::to_string(a.q));
        a = emulator_step(a);
    }
    for (int i = 0; i <= 8; ++i) {
        CHECK(to_fraction(ss.values[i]) == std::to_string(b.p) + "/" + std::to_string(b.q));
        b = spanner_step(b);
    }
}

TEST_CASE("spanner exponents") {
    const auto s = exponent_schedule(ScheduleKind::Spanner, 2);
    CHECK(to_fraction(s.values[0]) == "3/7");
    CHECK(to_fraction(s.values[1]) == "7/17");
    CHECK(to_fraction(s.values[2]) == "51/125");
}

TEST_CASE("fixed points") {
    const auto e = exponent_schedule(ScheduleKind::Emulator, 20);
    CHECK(std::fabs(to_double(e.values[20]) - (3 - std::sqrt(5.0)) / 4) < 1e-9);
    CHECK(std::fabs(e.fixed_point - 1 / (3 + std::sqrt(5.0))) < 1e-12);
    CHECK(std::round(e.fixed_point * 1000) / 1000 == Catch::Approx(0.191));
    const auto s = exponent_schedule(ScheduleKind::Spanner, 20);
    CHECK(std::fabs(to_double(s.values[20]) - (9 - std::sqrt(33.0)) / 8) < 1e-9);
    CHECK(std::round(s.fixed_point * 1000) / 1000 == Catch::Approx(0.407));
    SECTION("monotone decrease toward the fixed point") {
        for (std::size_t i = 1; i < e.values.size(); ++i) {
            CHECK(e.values[i] < e.values[i - 1]);
            CHECK(to_double(e.values[i]) > e.fixed_point);
        }
        for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] < s.values[i - 1]);
    }
}

TEST_CASE("radius") {
    // 1 / (6 - 1) = 1/5: 2^(20/5)
    CHECK(radius_for(ScheduleKind::Emulator, std::size_t{1} << 20, 0.25) == 16);
    // 1 / (3 - 4/7) = 7/17: 2^(17 * 7/17)
    CHECK(radius_for(ScheduleKind::Spanner, std::size_t{1} << 17, Rational(3, 7)) == 128);
    CHECK(radius_for(ScheduleKind::Spanner, std::size_t{1} << 17, 3.0 / 7.0) == 128);
    CHECK(thrown_code([] { (void)radius_for(ScheduleKind::Emulator, 1, 0.25); }) == ErrorCode::InvalidParams);
    CHECK(thrown_code([] { (void)radius_for(ScheduleKind::Emulator, 100, 0.0); }) == ErrorCode::InvalidAlpha);
    CHECK(thrown_code([] { (void)exponent_schedule(ScheduleKind::Emulator, -1); }) == ErrorCode::InvalidParams);
}

TEST_CASE("ceil_pow snaps exact powers") {
    CHECK(ceil_pow(1000.0L, 1.0L / 3.0L) == 10);
    CHECK(ceil_pow(1001.0L, 1.0L / 3.0L) == 11);
    CHECK(ceil_pow(64.0L, 0.5L) == 8);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(300) == 9);
    CHECK(ceil_log2(256) == 8);
}

TEST_CASE("schedule kind names") {
    CHECK(parse_schedule_kind("spanner") == ScheduleKind::Spanner);
    CHECK_FALSE(parse_schedule_kind("oracle"));
}
