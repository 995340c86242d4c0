#include "ctxpredict/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "ctxpredict/oracle.hpp"
#include "ctxpredict/rng.hpp"

namespace ctxpredict {

namespace {

Word prefix_from_index(std::uint64_t index, std::size_t len) {
    Word w;
    w.bits.resize(len);
    for (std::size_t i = 0; i < len; ++i)
        w.bits[i] = static_cast<Bit>((index >> (len - 1 - i)) & 1);
    return w;
}

Word random_prefix(std::uint64_t seed, std::size_t len) {
    std::mt19937_64 rng(seed);
    Word w;
    w.bits.resize(len);
    for (std::size_t i = 0; i < len; ++i) w.bits[i] = static_cast<Bit>(rng() & 1);
    return w;
}

}  // namespace

EnsembleReport ensemble_experiment(double a, std::size_t n, std::size_t samples,
                                   const PredictorFactory& factory, std::uint64_t seed) {
    const double an_real = a * static_cast<double>(n);
    const auto an = static_cast<std::size_t>(std::llround(an_real));
    if (std::abs(an_real - static_cast<double>(an)) > 1e-9 || an < 1 || an > n)
        throw std::domain_error("ensemble_experiment: aN must be an integer in [1, N]");

    const bool exhaustive = samples == 0;
    if (exhaustive && an > 24)
        throw std::domain_error("exhaustive ensemble limited to aN <= 24");
    const std::size_t count = exhaustive ? (std::size_t{1} << an) : samples;

    EnsembleReport report;
    report.samples = count;
    const bool check_kappa = n <= 16;

    double total_prefix_loss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const Word prefix = exhaustive ? prefix_from_index(i, an)
                                       : random_prefix(derive_seed(seed, i), an);
        const BinarySequence x = self_generate(chain_machine(prefix, 1), n);
        auto predictor = factory();
        for (std::size_t t = 0; t < n; ++t) {
            const double q = predictor->emit();
            const Bit next = x[t + 1];
            if (t < an) total_prefix_loss += next ? 1.0 - q : q;
            predictor->accept(next);
        }
        if (check_kappa) {
            report.kappa_checked += 1;
            if (kappa_bracket(x, an + 1).upper_errors == 0) report.kappa_zero_verified += 1;
        }
    }
    report.mean_prefix_error_rate =
        total_prefix_loss / (static_cast<double>(count) * static_cast<double>(an));
    return report;
}

}  // namespace ctxpredict
