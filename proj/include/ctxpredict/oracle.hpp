#ifndef CTXPREDICT_ORACLE_HPP
#define CTXPREDICT_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ctxpredict/machine.hpp"
#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Refusal error for brute-force requests beyond the enumeration guard.
class SizeGuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Windowed joint counts (s_t, x_{t+1}) for every context up to a depth cap,
/// stored as a recent-first trie.  Descent stops below contexts with fewer
/// than two tallied pairs: no split below them can reduce min{n0,n1} = 0.
/// Nodes whose partition was carried out are marked expanded; for those,
/// parent counts equal the children's counts plus the boundary pair whose
/// past is too short to extend.
class SuffixCountTree {
public:
    struct Node {
        int child[2] = {-1, -1};
        std::uint32_t depth = 0;
        bool expanded = false;
        CountTriple counts;
    };

    /// Window may start at pair index 0 (the empty-past prediction of x_1,
    /// tallied at the root only).
    static SuffixCountTree build(const BinarySequence& x, std::size_t depth_cap,
                                 PairWindow window);

    int root() const noexcept { return 0; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t depth_cap() const noexcept { return depth_cap_; }

    /// Node for a forward-order context; -1 when the context was pruned.
    int find(const Word& context) const;

    /// Drop the pair (s_t, x_{t+1}) from every tally it entered.  Each pair
    /// may be removed once; used to shrink the window front incrementally.
    void remove_pair(const BinarySequence& x, std::size_t t);

private:
    std::vector<Node> nodes_;
    std::size_t depth_cap_ = 0;
};

struct BestTreeResult {
    std::uint64_t min_errors = 0;
    ContextTreeSpec tree;
};

/// Tree-knapsack over the count trie: the cheapest complete binary suffix
/// tree with at most `leaf_budget` leaves under the hindsight error
/// sum_leaves min{n0,n1}.  Ties prefer making the parent a leaf; returned
/// outputs are per-leaf majorities with ties toward 0.
BestTreeResult best_tree_dp(const SuffixCountTree& ct, std::size_t leaf_budget);

struct KappaBracket {
    std::uint64_t lower_errors = 0;
    std::uint64_t upper_errors = 0;
    std::size_t n = 0;

    double lower() const noexcept {
        return n ? static_cast<double>(lower_errors) / static_cast<double>(n) : 0.0;
    }
    double upper() const noexcept {
        return n ? static_cast<double>(upper_errors) / static_cast<double>(n) : 0.0;
    }

    ContextTreeSpec argmin_tree = ContextTreeSpec::root_only(0);  // achieves the upper bound
    std::size_t transient_len = 0;                                // t0 of the upper-bound machine
    std::size_t context_leaves = 1;                               // S^C of the upper-bound machine
};

/// Certified bracket for the S-state context predictability of x: the lower
/// end is the hindsight-DP bound max(0, min_tree - S)/N; the upper end is
/// the exact best over machines made of a chain transient matching x's
/// prefix (length t0 <= min(S-1, N)) followed by a context tree with at most
/// S - t0 leaves and majority outputs, evaluated by simulation.
KappaBracket kappa_bracket(const BinarySequence& x, std::size_t s);

/// Exact minimum error count over chain transients and exhaustively
/// enumerated complete context trees with hindsight outputs.  Guarded to
/// N <= 16 and S <= 5; beyond that throws SizeGuardError.
std::uint64_t brute_force_kappa(const BinarySequence& x, std::size_t s);

}  // namespace ctxpredict

#endif
