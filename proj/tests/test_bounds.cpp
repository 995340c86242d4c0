#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ctxpredict/bounds.hpp"
#include "ctxpredict/universal.hpp"

using namespace ctxpredict;

namespace {

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("main redundancy bound worked examples") {
    CHECK(main_redundancy_bound(8, 4, 1024) == doctest::Approx(1.2267).epsilon(1e-4));
    // M = 1 reduces to the direct substitution
    const std::size_t n = 512, s = 3;
    const double direct = (2.0 * std::sqrt(3.0) + 1.0) * (1.0 + 1.0 / (2.0 * n)) +
                          3.0 * static_cast<double>(s) / n;
    CHECK(main_redundancy_bound(1, s, n) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("main bound with optimal M vanishes monotonically over powers of two") {
    const std::size_t s = 4;
    double prev = 1e300;
    for (std::size_t p = 10; p <= 30; ++p) {
        const std::size_t n = std::size_t{1} << p;
        const double b = main_redundancy_bound(optimal_M(n, s), s, n);
        CHECK(b < prev);
        prev = b;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("psi worked examples") {
    CHECK(psi(1024, MSchedule::hi_pow2()) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(psi(4, MSchedule::hi_pow2()) == doctest::Approx(2.0).epsilon(1e-12));
    // constant schedules approach 2/M0
    CHECK(psi(std::size_t{1} << 26, MSchedule::hi_constant(16)) ==
          doctest::Approx(2.0 / 16.0).epsilon(1e-3));
}

TEST_CASE("horizon independent bound formula arithmetic") {
    // 2*4*(2^4+1)/1024 + sqrt(0.125*1.125) + 0.125/2
    const double expected = 8.0 * 17.0 / 1024.0 + std::sqrt(0.125 * 1.125) + 0.0625;
    CHECK(horizon_independent_bound(1024, 4, MSchedule::hi_pow2()) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("the state term dominates once M(S) * S reaches N") {
    const MSchedule pow2 = MSchedule::hi_pow2();
    const std::size_t s = 8;
    const std::size_t n = s * (std::size_t{1} << s);  // M(S) * S = N
    const double state_term = 2.0 * s * (pow2.m_of(s) + 1.0) / static_cast<double>(n);
    const double ps = psi(n, pow2);
    CHECK(state_term > std::sqrt(ps * (1.0 + ps)) + ps / 2.0);
}

TEST_CASE("bound evaluators are nonnegative and nonincreasing in N at fixed schedule") {
    for (std::size_t p = 4; p <= 24; ++p) {
        const std::size_t n = std::size_t{1} << p;
        CHECK(main_redundancy_bound(16, 8, n) >= 0.0);
        CHECK(main_redundancy_bound(16, 8, 2 * n) <= main_redundancy_bound(16, 8, n));
        const MSchedule pow2 = MSchedule::hi_pow2();
        CHECK(horizon_independent_bound(n, 4, pow2) >= 0.0);
        CHECK(horizon_independent_bound(2 * n, 4, pow2) <=
              horizon_independent_bound(n, 4, pow2) + 1e-15);
    }
}

TEST_CASE("main bound decays at cube-root rate") {
    const std::size_t s = 4;
    std::vector<double> logn, logb;
    for (std::size_t p = 10; p <= 30; ++p) {
        const std::size_t n = std::size_t{1} << p;
        logn.push_back(std::log(static_cast<double>(n)));
        logb.push_back(std::log(main_redundancy_bound(optimal_M(n, s), s, n)));
    }
    const double slope = lsq_slope(logn, logb);
    CHECK(slope >= -1.0 / 3.0 - 0.05);
    CHECK(slope <= -1.0 / 3.0 + 0.05);
}

TEST_CASE("psi halves when N quadruples") {
    const MSchedule pow2 = MSchedule::hi_pow2();
    for (std::size_t n : {1024UL, 1500UL, 4096UL, 9000UL, 65536UL, 1000000UL}) {
        const double ratio = psi(n, pow2) / psi(4 * n, pow2);
        CHECK(ratio >= 1.8);
        CHECK(ratio <= 2.2);
    }
}

TEST_CASE("psi-driven term of the horizon independent bound decays near N^(-1/4)") {
    const MSchedule pow2 = MSchedule::hi_pow2();
    std::vector<double> logn, logt;
    for (std::size_t p = 10; p <= 24; ++p) {
        const std::size_t n = std::size_t{1} << p;
        const double ps = psi(n, pow2);
        logn.push_back(std::log(static_cast<double>(n)));
        logt.push_back(std::log(std::sqrt(ps * (1.0 + ps))));
    }
    const double slope = lsq_slope(logn, logt);
    CHECK(slope >= -0.30);
    CHECK(slope <= -0.20);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(main_redundancy_bound(0, 1, 1), std::domain_error);
    CHECK_THROWS_AS(main_redundancy_bound(1, 0, 1), std::domain_error);
    CHECK_THROWS_AS(psi(0, MSchedule::hi_pow2()), std::domain_error);
}
