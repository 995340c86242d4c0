#ifndef CTXPREDICT_TEST_UTIL_HPP
#define CTXPREDICT_TEST_UTIL_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ctxpredict/estimator.hpp"
#include "ctxpredict/machine.hpp"
#include "ctxpredict/sequence.hpp"
#include "ctxpredict/universal.hpp"

namespace ctxpredict::test {

inline BinarySequence make_seq(const std::string& bits) {
    return load_sequence(bits, SequenceFormat::Ascii);
}

inline BinarySequence random_sequence(std::mt19937_64& rng, std::size_t n) {
    std::vector<Bit> bits(n);
    for (auto& b : bits) b = static_cast<Bit>(rng() & 1);
    return BinarySequence(std::move(bits));
}

/// Random complete binary suffix tree with random outputs.
inline ContextTreeSpec random_complete_tree(std::mt19937_64& rng, std::size_t max_depth,
                                            double split_prob = 0.5) {
    std::vector<std::pair<Word, Bit>> leaves;
    // grow recent-first paths; a leaf's forward word is the reversed path
    std::vector<std::vector<Bit>> stack = {{}};
    while (!stack.empty()) {
        std::vector<Bit> path = std::move(stack.back());
        stack.pop_back();
        const bool split = path.size() < max_depth &&
                           (rng() % 1000) < static_cast<std::uint64_t>(split_prob * 1000);
        if (split) {
            for (Bit b : {Bit{0}, Bit{1}}) {
                auto child = path;
                child.push_back(b);
                stack.push_back(std::move(child));
            }
        } else {
            leaves.emplace_back(forward(RecentFirstPath{path}), static_cast<Bit>(rng() & 1));
        }
    }
    return ContextTreeSpec::from_leaves(std::move(leaves));
}

/// Straight-line reference implementation of the growing-context rule: every
/// candidate length is rechecked from scratch against the raw sequence, with
/// no trie, no monotonicity shortcut and no incremental counting.
struct NaiveUniversal {
    std::vector<double> qs;               // one per prediction, including the opening 1/2
    std::map<Word, std::uint64_t> usage;  // prediction-context uses
    std::map<Word, CountTriple> counts;
    std::vector<std::size_t> k0s;
    double expected_errors = 0.0;
};

inline NaiveUniversal naive_universal(const BinarySequence& x, const MSchedule& sched) {
    NaiveUniversal r;
    const std::size_t n = x.size();
    for (std::size_t t = 0; t < n; ++t) {
        Word sel;
        std::size_t k0 = 0;
        if (t >= 1) {
            for (std::size_t k = 1; k <= t; ++k) {
                const Word w = suffix_word(x, t, k);
                const bool c1 = occurrence_count(x, t, w) >= sched.threshold1(k);
                const Word shorter = suffix_word(x, t, k - 1);
                const auto it = r.usage.find(shorter);
                const std::uint64_t used = it == r.usage.end() ? 0 : it->second;
                const bool c2 = used >= sched.threshold2(k);
                if (c1 && c2) k0 = k;
            }
            sel = suffix_word(x, t, k0);
        }
        const CountTriple c = r.counts[sel];
        const std::uint64_t uses = r.usage[sel];
        const double q = phi(kt_estimate(c), uses);
        r.qs.push_back(q);
        r.k0s.push_back(k0);
        const Bit next = x[t + 1];
        r.expected_errors += next ? 1.0 - q : q;
        if (t >= 1) {
            r.usage[sel] += 1;
            r.counts[sel].add(next);
        }
    }
    return r;
}

}  // namespace ctxpredict::test

#endif
