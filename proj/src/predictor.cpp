#include "ctxpredict/predictor.hpp"

#include <stdexcept>

#include "ctxpredict/rng.hpp"

namespace ctxpredict {

StateResolver markov_resolver(std::size_t order) {
    return [order](const std::vector<Bit>& past, std::size_t t) {
        const std::size_t k = std::min(order, t);
        Word w;
        w.bits.assign(past.begin() + static_cast<std::ptrdiff_t>(t - k),
                      past.begin() + static_cast<std::ptrdiff_t>(t));
        return w;
    };
}

FixedStatePredictor::FixedStatePredictor(StateResolver resolver)
    : resolver_(std::move(resolver)) {}

double FixedStatePredictor::emit() {
    if (pending_) throw std::logic_error("emit called twice without accept");
    pending_state_ = resolver_(past_, past_.size());
    const StateStats* st = nullptr;
    auto it = states_.find(pending_state_);
    if (it != states_.end()) st = &it->second;
    const CountTriple counts = st ? st->counts : CountTriple{};
    pending_q_ = phi(kt_estimate(counts), counts.n());
    pending_ = true;
    return pending_q_;
}

void FixedStatePredictor::accept(Bit b) {
    if (!pending_) throw std::logic_error("accept called before emit");
    const double loss = b ? 1.0 - pending_q_ : pending_q_;
    StateStats& st = states_[pending_state_];
    st.expected_errors += loss;
    expected_errors_ += loss;
    if (!past_.empty()) st.counts.add(b);  // the opening step records nothing
    past_.push_back(b);
    pending_ = false;
}

RunReport FixedStatePredictor::report() const {
    RunReport r;
    r.steps = past_.size();
    r.expected_errors = expected_errors_;
    r.per_state = states_;
    return r;
}

RunReport run_phi_over_states(const StateResolver& resolver, const BinarySequence& x,
                              LossMode mode, std::uint64_t seed) {
    FixedStatePredictor p(resolver);
    std::mt19937_64 rng(seed);
    std::uint64_t sampled = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double q = p.emit();
        const Bit next = x[t + 1];
        if (mode == LossMode::Sampled) {
            const Bit guess = u01(rng) < q ? 1 : 0;
            sampled += (guess != next);
        }
        p.accept(next);
    }
    RunReport r = p.report();
    if (mode == LossMode::Sampled) r.sampled_errors = sampled;
    return r;
}

}  // namespace ctxpredict
