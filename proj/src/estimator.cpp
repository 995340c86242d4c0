#include "ctxpredict/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace ctxpredict {

double kt_estimate(const CountTriple& c) noexcept {
    return (static_cast<double>(c.n1) + 0.5) / (static_cast<double>(c.n()) + 1.0);
}

double phi(double alpha, std::uint64_t n) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("phi: alpha outside [0,1]");
    const double eps = 0.5 / std::sqrt(static_cast<double>(n) + 2.0);
    if (alpha < 0.5 - eps) return 0.0;
    if (alpha > 0.5 + eps) return 1.0;
    return (alpha - 0.5) / (2.0 * eps) + 0.5;
}

}  // namespace ctxpredict
