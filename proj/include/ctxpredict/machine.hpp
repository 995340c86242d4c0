#ifndef CTXPREDICT_MACHINE_HPP
#define CTXPREDICT_MACHINE_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ctxpredict/estimator.hpp"
#include "ctxpredict/predictor.hpp"
#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Inclusive range [first,last] of pair indices t: the state resolved from
/// x_1..x_t paired with the outcome x_{t+1}.  Index 0 denotes the empty-past
/// pair (state before anything was seen, outcome x_1).  first > last is the
/// empty window.
struct PairWindow {
    std::size_t first = 1;
    std::size_t last = 0;

    static PairWindow full(std::size_t n) { return {1, n >= 2 ? n - 1 : 0}; }
    static PairWindow all_predictions(std::size_t n) {
        return n >= 1 ? PairWindow{0, n - 1} : PairWindow{1, 0};
    }

    bool empty() const noexcept { return first > last; }
    bool contains(std::size_t t) const noexcept { return t >= first && t <= last; }
};

struct ResolvedContext {
    Word state;      // forward order; the whole consumed past when truncated
    bool truncated;  // ran out of past before reaching a leaf
    int leaf_id;     // valid when !truncated
};

/// A complete binary suffix tree: every node that is not a leaf has two
/// children.  Leaves are contexts stored in forward order; walks consume the
/// most recent symbol first.
class ContextTreeSpec {
public:
    static ContextTreeSpec root_only(Bit output);
    static ContextTreeSpec from_leaves(std::vector<std::pair<Word, Bit>> leaves);

    std::size_t leaf_count() const noexcept { return leaves_.size(); }
    std::size_t max_depth() const noexcept { return max_depth_; }
    const std::vector<std::pair<Word, Bit>>& leaves() const noexcept { return leaves_; }
    Bit output(int leaf_id) const { return leaves_[static_cast<std::size_t>(leaf_id)].second; }

    /// Context in force once the first t symbols have been consumed (the
    /// state predicting x_{t+1}); t may be 0.
    ResolvedContext resolve(const BinarySequence& x, std::size_t t) const;
    ResolvedContext resolve(const std::vector<Bit>& past, std::size_t t) const;

private:
    struct Node {
        int child[2] = {-1, -1};
        int leaf_id = -1;
    };
    std::vector<Node> nodes_;
    std::vector<std::pair<Word, Bit>> leaves_;
    std::size_t max_depth_ = 0;
};

/// Transient states: a prefix-closed set of forward words (the root and
/// internal nodes of a prefix tree), each with an output bit.  May be empty,
/// meaning no transient mode at all.
class PrefixTreeSpec {
public:
    PrefixTreeSpec() = default;
    static PrefixTreeSpec from_outputs(std::map<Word, Bit> internal_outputs);

    /// Internal nodes ∅, p_1, p_1p_2, ..., up to the proper prefixes of
    /// `path`, with outputs reproducing `path` step by step.
    static PrefixTreeSpec chain(const Word& path);

    bool empty() const noexcept { return outputs_.empty(); }
    std::size_t state_count() const noexcept { return outputs_.size(); }  // S^T
    bool contains(const Word& w) const { return outputs_.count(w) != 0; }
    Bit output(const Word& w) const { return outputs_.at(w); }

private:
    std::map<Word, Bit> outputs_;
};

struct ReferenceMachine {
    PrefixTreeSpec transient;
    ContextTreeSpec context_tree;
};

/// Deterministic simulation: the machine starts at the prefix-tree root (or
/// directly in context mode when the transient is empty), advances transient
/// states on observed bits, switches permanently to context mode when the
/// next prefix node is missing, and predicts through the context tree from
/// then on.  Truncated context steps predict 0.  Errors are exact 0/1
/// mismatches.
RunReport run_reference_machine(const ReferenceMachine& m, const BinarySequence& x);

struct HindsightResult {
    std::uint64_t errors = 0;  // sum over leaves of min{N(s,0), N(s,1)}
    std::map<Word, CountTriple> per_leaf;
};

/// Error count of the best deterministic output function for the tree's
/// context partition: pairs (s_t, x_{t+1}) are tallied for t in the window
/// and truncated steps are excluded.  Requires window within [1, N-1].
HindsightResult hindsight_error(const ContextTreeSpec& tree, const BinarySequence& x,
                                PairWindow window);

struct ChainMachineSpec {
    Word prefix;
    Bit tail_bit = 1;
};

/// Chain transient through `prefix` followed by a single-leaf context tree
/// emitting tail_bit; self-generates `prefix` then tail_bit forever.
ReferenceMachine chain_machine(const Word& prefix, Bit tail_bit);
inline ReferenceMachine chain_machine(const ChainMachineSpec& spec) {
    return chain_machine(spec.prefix, spec.tail_bit);
}

/// x_t = the machine's own prediction fed back; the machine then makes no
/// errors when run on the result.
BinarySequence self_generate(const ReferenceMachine& m, std::size_t n);

}  // namespace ctxpredict

#endif
