#ifndef CTXPREDICT_PREDICTOR_HPP
#define CTXPREDICT_PREDICTOR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "ctxpredict/estimator.hpp"
#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Online predictor contract.  emit() returns q = Pr{next bit = 1} computed
/// from the symbols accepted so far; accept() then feeds the actual bit.
/// Calls must alternate starting with emit(); violations throw
/// std::logic_error.  A predictor never sees future symbols.
class SequentialPredictor {
public:
    virtual ~SequentialPredictor() = default;
    virtual double emit() = 0;
    virtual void accept(Bit b) = 0;
};

struct StateStats {
    CountTriple counts;
    double expected_errors = 0.0;  // EN_e(s)
};

struct RunReport {
    std::size_t steps = 0;
    double expected_errors = 0.0;
    std::optional<std::uint64_t> sampled_errors;
    std::map<Word, StateStats> per_state;
};

enum class LossMode { Expected, Sampled };

/// Maps the consumed past (first t entries of `past`) to a predictor state.
using StateResolver = std::function<Word(const std::vector<Bit>& past, std::size_t t)>;

/// Fixed-order suffix states: the last min(order, t) bits.  Shorter boundary
/// suffixes near the start of the sequence stand for themselves, matching the
/// truncated walk of a full depth-`order` suffix tree.
StateResolver markov_resolver(std::size_t order);

/// phi/KT predictor over a fixed state partition.
class FixedStatePredictor final : public SequentialPredictor {
public:
    explicit FixedStatePredictor(StateResolver resolver);

    double emit() override;
    void accept(Bit b) override;

    std::size_t consumed() const noexcept { return past_.size(); }
    RunReport report() const;

private:
    StateResolver resolver_;
    std::vector<Bit> past_;
    std::map<Word, StateStats> states_;
    Word pending_state_;
    double pending_q_ = 0.0;
    bool pending_ = false;
    double expected_errors_ = 0.0;
};

/// Full pass of the phi/KT predictor over x with the given state partition.
/// Per-state counts accumulate over that state's prior uses only.  The very
/// first prediction of a run is the flat q = 1/2 and leaves every count
/// untouched; its loss is attributed to the empty-past state.
RunReport run_phi_over_states(const StateResolver& resolver, const BinarySequence& x,
                              LossMode mode = LossMode::Expected,
                              std::uint64_t seed = 0);

}  // namespace ctxpredict

#endif
