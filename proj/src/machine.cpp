#include "ctxpredict/machine.hpp"

#include <stdexcept>

namespace ctxpredict {

ContextTreeSpec ContextTreeSpec::root_only(Bit output) {
    ContextTreeSpec t;
    t.nodes_.push_back(Node{{-1, -1}, 0});
    t.leaves_.emplace_back(Word{}, output);
    return t;
}

ContextTreeSpec ContextTreeSpec::from_leaves(std::vector<std::pair<Word, Bit>> leaves) {
    if (leaves.empty())
        throw std::invalid_argument("context tree needs at least one leaf");
    ContextTreeSpec t;
    t.leaves_ = std::move(leaves);
    t.nodes_.push_back(Node{});
    for (std::size_t i = 0; i < t.leaves_.size(); ++i) {
        const Word& w = t.leaves_[i].first;
        int node = 0;
        // walk most recent symbol first
        for (auto it = w.bits.rbegin(); it != w.bits.rend(); ++it) {
            if (t.nodes_[static_cast<std::size_t>(node)].leaf_id >= 0)
                throw std::invalid_argument("leaf '" + w.str() + "' extends another leaf");
            int& slot = t.nodes_[static_cast<std::size_t>(node)].child[*it];
            if (slot < 0) {
                slot = static_cast<int>(t.nodes_.size());
                t.nodes_.push_back(Node{});
            }
            node = t.nodes_[static_cast<std::size_t>(node)].child[*it];
        }
        Node& n = t.nodes_[static_cast<std::size_t>(node)];
        if (n.leaf_id >= 0 || n.child[0] >= 0 || n.child[1] >= 0)
            throw std::invalid_argument("leaf '" + w.str() + "' collides with the tree");
        n.leaf_id = static_cast<int>(i);
        t.max_depth_ = std::max(t.max_depth_, w.size());
    }
    for (const Node& n : t.nodes_) {
        const bool leaf = n.leaf_id >= 0;
        const bool both = n.child[0] >= 0 && n.child[1] >= 0;
        const bool none = n.child[0] < 0 && n.child[1] < 0;
        if (!(leaf ? none : both))
            throw std::invalid_argument("leaf set does not form a complete binary tree");
    }
    return t;
}

ResolvedContext ContextTreeSpec::resolve(const BinarySequence& x, std::size_t t) const {
    return resolve(x.bits(), t);
}

ResolvedContext ContextTreeSpec::resolve(const std::vector<Bit>& past, std::size_t t) const {
    if (t > past.size())
        throw std::out_of_range("resolve: t exceeds available past");
    int node = 0;
    std::size_t d = 0;
    while (nodes_[static_cast<std::size_t>(node)].leaf_id < 0) {
        if (d == t) {
            // consumed x_1 before reaching a leaf
            Word w;
            w.bits.assign(past.begin(), past.begin() + static_cast<std::ptrdiff_t>(t));
            return {std::move(w), true, -1};
        }
        node = nodes_[static_cast<std::size_t>(node)].child[past[t - 1 - d]];
        ++d;
    }
    const int leaf = nodes_[static_cast<std::size_t>(node)].leaf_id;
    return {leaves_[static_cast<std::size_t>(leaf)].first, false, leaf};
}

PrefixTreeSpec PrefixTreeSpec::from_outputs(std::map<Word, Bit> internal_outputs) {
    PrefixTreeSpec p;
    p.outputs_ = std::move(internal_outputs);
    if (p.outputs_.empty()) return p;
    if (!p.outputs_.count(Word{}))
        throw std::invalid_argument("nonempty prefix tree must contain the root");
    for (const auto& [w, out] : p.outputs_) {
        (void)out;
        if (w.empty()) continue;
        Word parent{std::vector<Bit>(w.bits.begin(), w.bits.end() - 1)};
        if (!p.outputs_.count(parent))
            throw std::invalid_argument("prefix tree node set is not prefix-closed");
    }
    return p;
}

PrefixTreeSpec PrefixTreeSpec::chain(const Word& path) {
    std::map<Word, Bit> outputs;
    for (std::size_t i = 0; i < path.size(); ++i) {
        Word node{std::vector<Bit>(path.bits.begin(),
                                   path.bits.begin() + static_cast<std::ptrdiff_t>(i))};
        outputs[std::move(node)] = path.bits[i];
    }
    return from_outputs(std::move(outputs));
}

namespace {

// Shared driver: either predicts a given sequence (counting errors) or
// feeds predictions back to generate one.
struct MachineCursor {
    const ReferenceMachine& m;
    std::vector<Bit> past;
    Word transient_state;
    bool in_transient;

    explicit MachineCursor(const ReferenceMachine& machine)
        : m(machine), in_transient(!machine.transient.empty()) {}

    // Prediction for the next symbol plus the state label it came from.
    std::pair<Bit, Word> predict() const {
        if (in_transient)
            return {m.transient.output(transient_state), transient_state};
        ResolvedContext rc = m.context_tree.resolve(past, past.size());
        Bit p = rc.truncated ? Bit{0} : m.context_tree.output(rc.leaf_id);
        return {p, std::move(rc.state)};
    }

    void advance(Bit observed) {
        if (in_transient) {
            Word child = transient_state;
            child.bits.push_back(observed);
            if (m.transient.contains(child))
                transient_state = std::move(child);
            else
                in_transient = false;  // one-way switch into context mode
        }
        past.push_back(observed);
    }
};

}  // namespace

RunReport run_reference_machine(const ReferenceMachine& m, const BinarySequence& x) {
    MachineCursor cur(m);
    RunReport report;
    report.steps = x.size();
    for (std::size_t t = 0; t < x.size(); ++t) {
        auto [prediction, state] = cur.predict();
        const Bit next = x[t + 1];
        const double err = prediction != next ? 1.0 : 0.0;
        report.expected_errors += err;
        StateStats& st = report.per_state[state];
        st.counts.add(next);
        st.expected_errors += err;
        cur.advance(next);
    }
    return report;
}

HindsightResult hindsight_error(const ContextTreeSpec& tree, const BinarySequence& x,
                                PairWindow window) {
    if (!window.empty() && (window.first < 1 || window.last > (x.size() ? x.size() - 1 : 0)))
        throw std::out_of_range("hindsight_error: window outside [1, N-1]");
    HindsightResult result;
    if (window.empty()) return result;
    for (std::size_t t = window.first; t <= window.last; ++t) {
        ResolvedContext rc = tree.resolve(x, t);
        if (rc.truncated) continue;
        result.per_leaf[rc.state].add(x[t + 1]);
    }
    for (const auto& [w, c] : result.per_leaf) {
        (void)w;
        result.errors += c.min01();
    }
    return result;
}

ReferenceMachine chain_machine(const Word& prefix, Bit tail_bit) {
    return ReferenceMachine{PrefixTreeSpec::chain(prefix),
                            ContextTreeSpec::root_only(tail_bit)};
}

BinarySequence self_generate(const ReferenceMachine& m, std::size_t n) {
    MachineCursor cur(m);
    for (std::size_t t = 0; t < n; ++t) cur.advance(cur.predict().first);
    return BinarySequence(std::move(cur.past));
}

}  // namespace ctxpredict
