#include "ctxpredict/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctxpredict {

double main_redundancy_bound(std::uint64_t m, std::size_t s, std::size_t n) {
    if (m < 1 || s < 1 || n < 1)
        throw std::domain_error("main_redundancy_bound: M, S, N must be >= 1");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double sd = static_cast<double>(s);
    const double first = (2.0 * std::sqrt(2.0 / md + 1.0 / (md * md)) + 1.0 / md) *
                         (1.0 + md / (2.0 * nd));
    return first + (2.0 * md + 1.0) * sd / nd;
}

namespace {
std::size_t psi_j_cap(std::size_t n) {
    if (n <= 1) return 1;
    // ceil(log2 n) + 1
    const auto ceil_log2 = static_cast<std::size_t>(std::bit_width(n - 1));
    return ceil_log2 + 1;
}
}  // namespace

double psi(std::size_t n, const MSchedule& schedule) {
    if (n < 1) throw std::domain_error("psi: N must be >= 1");
    const std::size_t j_cap = psi_j_cap(n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= j_cap; ++j) {
        const double term = std::pow(2.0, static_cast<double>(j)) / static_cast<double>(n) +
                            1.0 / schedule.m_of(j);
        best = std::min(best, term);
    }
    return 2.0 * best;
}

double horizon_independent_bound(std::size_t n, std::size_t s, const MSchedule& schedule) {
    if (n < 1 || s < 1) throw std::domain_error("horizon_independent_bound: N, S must be >= 1");
    const double p = psi(n, schedule);
    const double first =
        2.0 * static_cast<double>(s) * (schedule.m_of(s) + 1.0) / static_cast<double>(n);
    return first + std::sqrt(p * (1.0 + p)) + p / 2.0;
}

BoundReport evaluate_bounds(std::size_t n, std::size_t s, const MSchedule& schedule) {
    BoundReport r;
    r.n = n;
    r.s = s;
    r.schedule = schedule.label();
    r.m = schedule.m_of(1);
    r.main_bound = main_redundancy_bound(
        static_cast<std::uint64_t>(std::max(1.0, schedule.m_of(1))), s, n);
    r.psi_value = psi(n, schedule);
    r.hi_bound = horizon_independent_bound(n, s, schedule);
    return r;
}

}  // namespace ctxpredict
