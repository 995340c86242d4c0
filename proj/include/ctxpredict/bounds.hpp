#ifndef CTXPREDICT_BOUNDS_HPP
#define CTXPREDICT_BOUNDS_HPP

#include <cstdint>
#include <string>

#include "ctxpredict/universal.hpp"

namespace ctxpredict {

struct BoundReport {
    std::size_t n = 0;
    std::size_t s = 0;
    std::string schedule;
    double m = 0.0;              // M_N for horizon-dependent schedules
    double main_bound = 0.0;     // horizon-dependent redundancy bound
    double psi_value = 0.0;
    double hi_bound = 0.0;       // horizon-independent redundancy bound
};

/// (2 sqrt(2/M + 1/M^2) + 1/M) (1 + M/(2N)) + (2M + 1) S / N.
double main_redundancy_bound(std::uint64_t m, std::size_t s, std::size_t n);

/// 2 min_j (2^j/N + 1/M(j)) over j = 1..ceil(log2 N)+1; past that cap the
/// 2^j/N term alone exceeds any attainable minimum.
double psi(std::size_t n, const MSchedule& schedule);

/// 2 S (M(S)+1)/N + sqrt(psi (1+psi)) + psi/2.
double horizon_independent_bound(std::size_t n, std::size_t s, const MSchedule& schedule);

BoundReport evaluate_bounds(std::size_t n, std::size_t s, const MSchedule& schedule);

}  // namespace ctxpredict

#endif
