#ifndef CTXPREDICT_UNIVERSAL_HPP
#define CTXPREDICT_UNIVERSAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctxpredict/predictor.hpp"
#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Threshold schedule for the growing-context rule.  threshold1(k) gates the
/// substring occurrence count of a length-k candidate context; threshold2(k)
/// gates the prior prediction-context usage of its length-(k-1) suffix.
///
/// Horizon-dependent: both thresholds are the constant M_N.
/// Horizon-independent: threshold1(k) = M(k), threshold2(k) = M(k-1) with
/// M(0) := M(1); presets are the constant M(k) = M0 and M(k) = 2^k.
class MSchedule {
public:
    enum class Kind { HorizonDependent, HiConstant, HiPow2 };

    static MSchedule horizon_dependent(std::uint64_t m_n);
    static MSchedule hi_constant(std::uint64_t m0);
    static MSchedule hi_pow2();

    Kind kind() const noexcept { return kind_; }
    bool horizon_independent() const noexcept { return kind_ != Kind::HorizonDependent; }

    std::uint64_t threshold1(std::size_t k) const;
    std::uint64_t threshold2(std::size_t k) const;

    /// M(k) as a real number for the bound formulas (HD schedules are
    /// constant in k).
    double m_of(std::size_t k) const;

    std::string label() const;

private:
    Kind kind_ = Kind::HorizonDependent;
    std::uint64_t m_ = 2;
};

struct TreeStats {
    std::size_t total_contexts = 0;  // nodes ever used as a prediction context
    std::size_t internal_nodes = 0;  // used contexts that are proper suffixes of other used contexts
    std::uint64_t max_internal_usage = 0;
    std::size_t max_depth = 0;
};

struct SelectionInfo {
    std::size_t k0 = 0;
    Word context;
    double q = 0.5;
};

/// The growing-context universal predictor.  At each time t it selects the
/// longest suffix of the past that both occurs often enough (condition 1,
/// counting the occurrence ending at t itself) and extends a suffix already
/// used often enough as a prediction context (condition 2, counting uses
/// strictly before t), then plays phi over the KT estimate of that context's
/// follow-up counts.
///
/// The opening prediction of a run (empty past) is the flat q = 1/2 and is
/// not recorded as a use of the null context.
///
/// Candidate contexts live in a lazily grown trie whose occurrence counts
/// stay exactly equal to the substring counts of the consumed sequence.
/// Each step costs O(current trie depth along the suffix); that depth is
/// bounded by (uses so far)/threshold + 1, so low thresholds on highly
/// repetitive inputs make steps proportionally slower.
class UniversalPredictor final : public SequentialPredictor {
public:
    explicit UniversalPredictor(MSchedule schedule);

    double emit() override;
    void accept(Bit b) override;

    std::size_t consumed() const noexcept { return bits_.size(); }
    const SelectionInfo& last_selection() const;

    TreeStats tree_stats() const;
    RunReport report() const;

    struct NodeView {
        std::uint64_t occurrences = 0;
        std::uint64_t usage = 0;
        CountTriple counts;
    };
    /// Counter snapshot for one candidate context; nullopt when the context
    /// is not tracked (equivalent to zero usage).
    std::optional<NodeView> node_view(const Word& context) const;

private:
    struct Node {
        std::uint64_t occ = 0;    // exact substring occurrence count
        std::uint64_t usage = 0;  // times selected as prediction context
        CountTriple counts;       // follow-up counts over recorded uses
        double en_e = 0.0;        // expected errors attributed to this context
        int child[2] = {-1, -1};
        int parent = -1;
        std::uint32_t depth = 0;
        Bit edge = 0;  // recent-first bit on the edge from parent
        bool expanded = false;
        std::vector<std::uint32_t> ends;  // occurrence end positions until expanded
    };

    void expand(int id);
    void consume(Bit b);
    Word word_of(int id) const;

    MSchedule schedule_;
    std::vector<Node> nodes_;
    std::vector<Bit> bits_;
    std::vector<int> path_;  // trie nodes along the current suffix, depth 1..
    SelectionInfo last_;
    int selected_ = 0;
    bool pending_ = false;
    bool record_on_accept_ = false;
};

struct TraceRow {
    std::size_t t = 0;
    std::size_t k0 = 0;
    Word context;
    double q = 0.5;
    Bit next = 0;
    double expected_loss = 0.0;
};

struct UniversalRunResult {
    RunReport report;
    TreeStats stats;
    std::vector<TraceRow> trace;  // filled only when requested
};

UniversalRunResult run_universal(const BinarySequence& x, const MSchedule& schedule,
                                 LossMode mode = LossMode::Expected,
                                 std::uint64_t seed = 0, bool keep_trace = false);

/// max(2, round((N/S)^{2/3})); throws std::domain_error when S > N.
std::uint64_t optimal_M(std::size_t n, std::size_t s);

}  // namespace ctxpredict

#endif
