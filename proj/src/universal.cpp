#include "ctxpredict/universal.hpp"

#include <cmath>
#include <stdexcept>

#include "ctxpredict/rng.hpp"

namespace ctxpredict {

namespace {
constexpr std::size_t kPow2Cap = 62;  // saturate 2^k beyond this

std::uint64_t pow2_saturated(std::size_t k) {
    if (k > kPow2Cap) return std::uint64_t{1} << kPow2Cap;
    return std::uint64_t{1} << k;
}
}  // namespace

MSchedule MSchedule::horizon_dependent(std::uint64_t m_n) {
    if (m_n < 1) throw std::domain_error("M_N must be >= 1");
    MSchedule s;
    s.kind_ = Kind::HorizonDependent;
    s.m_ = m_n;
    return s;
}

MSchedule MSchedule::hi_constant(std::uint64_t m0) {
    if (m0 < 1) throw std::domain_error("M0 must be >= 1");
    MSchedule s;
    s.kind_ = Kind::HiConstant;
    s.m_ = m0;
    return s;
}

MSchedule MSchedule::hi_pow2() {
    MSchedule s;
    s.kind_ = Kind::HiPow2;
    s.m_ = 2;
    return s;
}

std::uint64_t MSchedule::threshold1(std::size_t k) const {
    switch (kind_) {
        case Kind::HorizonDependent:
        case Kind::HiConstant: return m_;
        case Kind::HiPow2: return pow2_saturated(k);
    }
    return m_;
}

std::uint64_t MSchedule::threshold2(std::size_t k) const {
    switch (kind_) {
        case Kind::HorizonDependent:
        case Kind::HiConstant: return m_;
        case Kind::HiPow2: return pow2_saturated(k >= 2 ? k - 1 : 1);  // M(0) := M(1)
    }
    return m_;
}

double MSchedule::m_of(std::size_t k) const {
    if (kind_ == Kind::HiPow2) return std::pow(2.0, static_cast<double>(k));
    return static_cast<double>(m_);
}

std::string MSchedule::label() const {
    switch (kind_) {
        case Kind::HorizonDependent: return "hd:" + std::to_string(m_);
        case Kind::HiConstant: return "const:" + std::to_string(m_);
        case Kind::HiPow2: return "pow2";
    }
    return "?";
}

UniversalPredictor::UniversalPredictor(MSchedule schedule) : schedule_(schedule) {
    Node root;
    root.depth = 0;
    root.expanded = true;
    nodes_.push_back(std::move(root));
    for (Bit b : {Bit{0}, Bit{1}}) {
        Node child;
        child.depth = 1;
        child.parent = 0;
        child.edge = b;
        nodes_[0].child[b] = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(child));
    }
}

void UniversalPredictor::expand(int id) {
    // Children inherit the exact occurrence history from the recorded end
    // positions; after this the walk keeps their counts current directly.
    std::vector<std::uint32_t> ends = std::move(nodes_[static_cast<std::size_t>(id)].ends);
    const std::uint32_t depth = nodes_[static_cast<std::size_t>(id)].depth;
    int child_id[2];
    for (Bit b : {Bit{0}, Bit{1}}) {
        Node child;
        child.depth = depth + 1;
        child.parent = id;
        child.edge = b;
        child_id[b] = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(child));
    }
    for (std::uint32_t end : ends) {
        if (end <= depth) continue;  // boundary occurrence, nothing older to extend with
        const Bit older = bits_[end - depth - 1];  // x_{end - depth}
        Node& c = nodes_[static_cast<std::size_t>(child_id[older])];
        c.occ += 1;
        c.ends.push_back(end);
    }
    Node& v = nodes_[static_cast<std::size_t>(id)];
    v.child[0] = child_id[0];
    v.child[1] = child_id[1];
    v.expanded = true;
}

void UniversalPredictor::consume(Bit b) {
    bits_.push_back(b);
    const std::size_t m = bits_.size();
    nodes_[0].occ += 1;
    path_.clear();
    int node = 0;
    for (std::size_t d = 0; d < m; ++d) {
        const int c = nodes_[static_cast<std::size_t>(node)].child[bits_[m - 1 - d]];
        if (c < 0) break;
        node = c;
        nodes_[static_cast<std::size_t>(node)].occ += 1;
        path_.push_back(node);
    }
    if (!nodes_[static_cast<std::size_t>(node)].expanded)
        nodes_[static_cast<std::size_t>(node)].ends.push_back(static_cast<std::uint32_t>(m));
}

double UniversalPredictor::emit() {
    if (pending_) throw std::logic_error("emit called twice without accept");
    std::size_t k0 = 0;
    int sel = 0;
    std::uint64_t prior_usage = nodes_[0].usage;  // usage of the length-(k-1) suffix
    for (std::size_t k = 1; k <= path_.size(); ++k) {
        const Node& v = nodes_[static_cast<std::size_t>(path_[k - 1])];
        if (v.occ < schedule_.threshold1(k)) break;  // longer suffixes occur no more often
        if (prior_usage >= schedule_.threshold2(k)) {
            k0 = k;
            sel = path_[k - 1];
        }
        prior_usage = v.usage;
    }
    const Node& s = nodes_[static_cast<std::size_t>(sel)];
    const double q = phi(kt_estimate(s.counts), s.usage);
    selected_ = sel;
    record_on_accept_ = !bits_.empty();
    last_ = SelectionInfo{k0, word_of(sel), q};
    pending_ = true;
    return q;
}

void UniversalPredictor::accept(Bit b) {
    if (!pending_) throw std::logic_error("accept called before emit");
    Node& s = nodes_[static_cast<std::size_t>(selected_)];
    s.en_e += b ? 1.0 - last_.q : last_.q;
    if (record_on_accept_) {
        s.usage += 1;
        s.counts.add(b);
        if (!s.expanded) expand(selected_);
    }
    consume(b);
    pending_ = false;
}

const SelectionInfo& UniversalPredictor::last_selection() const {
    if (!pending_) throw std::logic_error("no selection pending");
    return last_;
}

Word UniversalPredictor::word_of(int id) const {
    // walking up the trie reverses the recent-first path, which is exactly
    // the forward (oldest-first) word
    Word w;
    for (int v = id; v > 0; v = nodes_[static_cast<std::size_t>(v)].parent)
        w.bits.push_back(nodes_[static_cast<std::size_t>(v)].edge);
    return w;
}

TreeStats UniversalPredictor::tree_stats() const {
    TreeStats stats;
    // children precede nothing: nodes_ grows append-only, so a reverse scan
    // sees every child before its parent
    std::vector<unsigned char> used_below(nodes_.size(), 0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        const Node& v = nodes_[i];
        const bool used = v.usage > 0;
        if (used) {
            stats.total_contexts += 1;
            stats.max_depth = std::max(stats.max_depth, static_cast<std::size_t>(v.depth));
            if (used_below[i]) {
                stats.internal_nodes += 1;
                stats.max_internal_usage = std::max(stats.max_internal_usage, v.usage);
            }
        }
        if ((used || used_below[i]) && v.parent >= 0)
            used_below[static_cast<std::size_t>(v.parent)] = 1;
    }
    return stats;
}

RunReport UniversalPredictor::report() const {
    RunReport r;
    r.steps = bits_.size();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& v = nodes_[i];
        if (v.usage == 0 && v.en_e == 0.0) continue;
        StateStats& st = r.per_state[word_of(static_cast<int>(i))];
        st.counts = v.counts;
        st.expected_errors = v.en_e;
        r.expected_errors += v.en_e;
    }
    return r;
}

std::optional<UniversalPredictor::NodeView> UniversalPredictor::node_view(
    const Word& context) const {
    int node = 0;
    for (auto it = context.bits.rbegin(); it != context.bits.rend(); ++it) {
        node = nodes_[static_cast<std::size_t>(node)].child[*it];
        if (node < 0) return std::nullopt;
    }
    const Node& v = nodes_[static_cast<std::size_t>(node)];
    return NodeView{v.occ, v.usage, v.counts};
}

UniversalRunResult run_universal(const BinarySequence& x, const MSchedule& schedule,
                                 LossMode mode, std::uint64_t seed, bool keep_trace) {
    UniversalPredictor p(schedule);
    std::mt19937_64 rng(seed);
    std::uint64_t sampled = 0;
    UniversalRunResult result;
    if (keep_trace) result.trace.reserve(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double q = p.emit();
        const Bit next = x[t + 1];
        const double loss = next ? 1.0 - q : q;
        if (mode == LossMode::Sampled) {
            const Bit guess = u01(rng) < q ? 1 : 0;
            sampled += (guess != next);
        }
        if (keep_trace) {
            const SelectionInfo& sel = p.last_selection();
            result.trace.push_back(TraceRow{t, sel.k0, sel.context, q, next, loss});
        }
        p.accept(next);
    }
    result.report = p.report();
    if (mode == LossMode::Sampled) result.report.sampled_errors = sampled;
    result.stats = p.tree_stats();
    return result;
}

std::uint64_t optimal_M(std::size_t n, std::size_t s) {
    if (n < 1 || s < 1) throw std::domain_error("optimal_M: N and S must be >= 1");
    if (s > n) throw std::domain_error("optimal_M: S exceeds N");
    const double ratio = static_cast<double>(n) / static_cast<double>(s);
    const auto rounded = static_cast<std::uint64_t>(std::llround(std::pow(ratio, 2.0 / 3.0)));
    return std::max<std::uint64_t>(2, rounded);
}

}  // namespace ctxpredict
