#ifndef CTXPREDICT_ESTIMATOR_HPP
#define CTXPREDICT_ESTIMATOR_HPP

#include <algorithm>
#include <compare>
#include <cstdint>

#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Follow-up counts for one context.  n = n0 + n1 holds by construction.
struct CountTriple {
    std::uint64_t n0 = 0;
    std::uint64_t n1 = 0;

    std::uint64_t n() const noexcept { return n0 + n1; }
    std::uint64_t min01() const noexcept { return std::min(n0, n1); }
    void add(Bit b) noexcept { (b ? n1 : n0) += 1; }

    auto operator<=>(const CountTriple&) const = default;
};

/// (n1 + 1/2) / (n + 1); strictly inside (0,1) for all finite counts.
double kt_estimate(const CountTriple& c) noexcept;

/// Clamped linear output map with dead zones of half-width
/// eps_n = 1/(2 sqrt(n+2)) around certainty:
///   0 below 1/2 - eps, 1 above 1/2 + eps, linear in between (boundaries
///   take the linear value).  Throws std::domain_error for alpha not in [0,1].
double phi(double alpha, std::uint64_t n);

}  // namespace ctxpredict

#endif
