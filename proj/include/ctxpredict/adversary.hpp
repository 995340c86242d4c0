#ifndef CTXPREDICT_ADVERSARY_HPP
#define CTXPREDICT_ADVERSARY_HPP

#include <cstdint>
#include <functional>
#include <memory>

#include "ctxpredict/machine.hpp"
#include "ctxpredict/predictor.hpp"

namespace ctxpredict {

struct EnsembleReport {
    std::size_t samples = 0;
    double mean_prefix_error_rate = 0.0;  // expected errors on positions 1..aN, per position
    std::size_t kappa_zero_verified = 0;  // sequences whose oracle upper bound was exactly 0
    std::size_t kappa_checked = 0;
};

using PredictorFactory = std::function<std::unique_ptr<SequentialPredictor>()>;

/// Uniform ensemble over the 2^{aN} sequences self-generated by chain
/// machines whose transients spell out every length-aN prefix (tail bit
/// fixed to 1).  Each sample runs a fresh predictor in expected-loss mode;
/// the prefix is the only sampled quantity.  samples = 0 enumerates the
/// whole ensemble (requires aN <= 24).  Sequences are checked against the
/// predictability oracle whenever N is within the brute-force guard.
EnsembleReport ensemble_experiment(double a, std::size_t n, std::size_t samples,
                                   const PredictorFactory& factory, std::uint64_t seed);

}  // namespace ctxpredict

#endif
