#include "ctxpredict/oracle.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <thread>

namespace ctxpredict {

SuffixCountTree SuffixCountTree::build(const BinarySequence& x, std::size_t depth_cap,
                                       PairWindow window) {
    SuffixCountTree ct;
    ct.depth_cap_ = depth_cap;
    ct.nodes_.push_back(Node{});
    if (window.empty()) return ct;
    if (window.last > (x.size() ? x.size() - 1 : 0))
        throw std::out_of_range("count tree window exceeds [0, N-1]");

    using Bucket = std::pair<int, std::vector<std::uint32_t>>;
    std::vector<Bucket> level;
    {
        std::vector<std::uint32_t> all;
        all.reserve(window.last - window.first + 1);
        for (std::size_t t = window.first; t <= window.last; ++t) {
            ct.nodes_[0].counts.add(x[t + 1]);
            all.push_back(static_cast<std::uint32_t>(t));
        }
        level.emplace_back(0, std::move(all));
    }
    for (std::size_t d = 0; d < depth_cap && !level.empty(); ++d) {
        std::vector<Bucket> next;
        for (auto& [id, bucket] : level) {
            if (bucket.size() < 2) continue;
            ct.nodes_[static_cast<std::size_t>(id)].expanded = true;
            std::vector<std::uint32_t> part[2];
            for (std::uint32_t t : bucket) {
                if (t < d + 1) continue;  // past too short to extend
                part[x[t - d]].push_back(t);
            }
            for (Bit b : {Bit{0}, Bit{1}}) {
                if (part[b].empty()) continue;
                Node child;
                child.depth = static_cast<std::uint32_t>(d + 1);
                for (std::uint32_t t : part[b]) child.counts.add(x[t + 1]);
                const int cid = static_cast<int>(ct.nodes_.size());
                ct.nodes_[static_cast<std::size_t>(id)].child[b] = cid;
                ct.nodes_.push_back(std::move(child));
                next.emplace_back(cid, std::move(part[b]));
            }
        }
        level = std::move(next);
    }
    return ct;
}

int SuffixCountTree::find(const Word& context) const {
    int node = 0;
    for (auto it = context.bits.rbegin(); it != context.bits.rend(); ++it) {
        node = nodes_[static_cast<std::size_t>(node)].child[*it];
        if (node < 0) return -1;
    }
    return node;
}

void SuffixCountTree::remove_pair(const BinarySequence& x, std::size_t t) {
    const Bit next = x[t + 1];
    auto sub = [next](CountTriple& c) { (next ? c.n1 : c.n0) -= 1; };
    sub(nodes_[0].counts);
    int node = 0;
    const std::size_t max_d = std::min(depth_cap_, t);
    for (std::size_t d = 1; d <= max_d; ++d) {
        node = nodes_[static_cast<std::size_t>(node)].child[x[t - d + 1]];
        if (node < 0) break;
        sub(nodes_[static_cast<std::size_t>(node)].counts);
    }
}

namespace {

// Knapsack tables over the trie, stored in one arena.  Node ids are in
// creation (BFS) order, so a descending scan is a valid post-order.
struct DpWorkspace {
    std::vector<std::uint32_t> cap;   // useful budget per node
    std::vector<std::size_t> off;     // arena offset per node
    std::vector<std::int64_t> val;    // val[off[v] + b - 1] = cost at budget b
};

std::int64_t dp_run(const SuffixCountTree& ct, std::size_t leaf_budget,
                    std::size_t depth_cap, const std::vector<std::int64_t>* penalty,
                    DpWorkspace& ws) {
    const std::size_t n = ct.node_count();
    ws.cap.assign(n, 1);
    ws.off.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        const auto& v = ct.node(static_cast<int>(i));
        std::uint64_t structural = 1;
        if (v.depth < depth_cap) {
            const std::uint64_t u0 = v.child[0] >= 0 ? ws.cap[static_cast<std::size_t>(v.child[0])] : 1;
            const std::uint64_t u1 = v.child[1] >= 0 ? ws.cap[static_cast<std::size_t>(v.child[1])] : 1;
            structural = u0 + u1;
        }
        ws.cap[i] = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(leaf_budget, structural));
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ws.off[i] = total;
        total += ws.cap[i];
    }
    ws.val.assign(total, 0);

    for (std::size_t i = n; i-- > 0;) {
        const auto& v = ct.node(static_cast<int>(i));
        const auto leaf_cost = static_cast<std::int64_t>(v.counts.min01());
        const std::uint32_t cap = ws.cap[i];
        std::int64_t* row = ws.val.data() + ws.off[i];
        for (std::uint32_t b = 0; b < cap; ++b) row[b] = leaf_cost;
        if (cap < 2 || v.depth >= depth_cap) continue;

        const std::int64_t pen = penalty ? (*penalty)[i] : 0;
        const int c0 = v.child[0];
        const int c1 = v.child[1];
        const std::uint64_t cap0 = c0 >= 0 ? ws.cap[static_cast<std::size_t>(c0)] : 1;
        const std::uint64_t cap1 = c1 >= 0 ? ws.cap[static_cast<std::size_t>(c1)] : 1;
        const std::int64_t* row0 =
            c0 >= 0 ? ws.val.data() + ws.off[static_cast<std::size_t>(c0)] : nullptr;
        const std::int64_t* row1 =
            c1 >= 0 ? ws.val.data() + ws.off[static_cast<std::size_t>(c1)] : nullptr;
        auto child_cost = [](const std::int64_t* r, std::uint64_t capc,
                             std::uint64_t budget) -> std::int64_t {
            if (!r) return 0;
            return r[std::min(budget, capc) - 1];
        };
        for (std::uint32_t b = 2; b <= cap; ++b) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            const std::uint64_t lo = b > cap1 ? b - cap1 : 1;
            const std::uint64_t hi = std::min<std::uint64_t>(cap0, b - 1);
            for (std::uint64_t b1 = lo; b1 <= hi; ++b1) {
                const std::int64_t c = child_cost(row0, cap0, b1) +
                                       child_cost(row1, cap1, b - b1);
                best = std::min(best, c);
            }
            std::int64_t cost = std::min(leaf_cost, pen + best);
            cost = std::min(cost, row[b - 2]);  // keep rows nonincreasing
            row[b - 1] = cost;
        }
    }
    const std::uint32_t root_cap = ws.cap[0];
    const std::uint64_t b = std::min<std::uint64_t>(leaf_budget, root_cap);
    return ws.val[ws.off[0] + b - 1];
}

void dp_extract(const SuffixCountTree& ct, const DpWorkspace& ws, std::size_t depth_cap,
                const std::vector<std::int64_t>* penalty, int v, std::uint64_t budget,
                std::vector<Bit>& path, std::vector<std::pair<Word, Bit>>& out) {
    if (v < 0) {
        RecentFirstPath rf{path};
        out.emplace_back(forward(rf), Bit{0});  // untallied context, majority defaults to 0
        return;
    }
    const std::size_t vi = static_cast<std::size_t>(v);
    const auto& node = ct.node(v);
    const std::uint64_t b = std::min<std::uint64_t>(budget, ws.cap[vi]);
    const std::int64_t cost = ws.val[ws.off[vi] + b - 1];
    const auto leaf_cost = static_cast<std::int64_t>(node.counts.min01());
    if (b < 2 || node.depth >= depth_cap || leaf_cost <= cost) {
        RecentFirstPath rf{path};
        out.emplace_back(forward(rf), node.counts.n1 > node.counts.n0 ? Bit{1} : Bit{0});
        return;
    }
    const std::int64_t pen = penalty ? (*penalty)[vi] : 0;
    const int c0 = node.child[0];
    const int c1 = node.child[1];
    const std::uint64_t cap0 = c0 >= 0 ? ws.cap[static_cast<std::size_t>(c0)] : 1;
    const std::uint64_t cap1 = c1 >= 0 ? ws.cap[static_cast<std::size_t>(c1)] : 1;
    auto child_cost = [&](int c, std::uint64_t cb) -> std::int64_t {
        if (c < 0) return 0;
        const std::size_t ci = static_cast<std::size_t>(c);
        return ws.val[ws.off[ci] + std::min<std::uint64_t>(cb, ws.cap[ci]) - 1];
    };
    const std::uint64_t lo = b > cap1 ? b - cap1 : 1;
    const std::uint64_t hi = std::min<std::uint64_t>(cap0, b - 1);
    for (std::uint64_t b1 = lo; b1 <= hi; ++b1) {
        if (pen + child_cost(c0, b1) + child_cost(c1, b - b1) == cost) {
            path.push_back(0);
            dp_extract(ct, ws, depth_cap, penalty, c0, b1, path, out);
            path.back() = 1;
            dp_extract(ct, ws, depth_cap, penalty, c1, b - b1, path, out);
            path.pop_back();
            return;
        }
    }
    // a budget split must reproduce the table value
    throw std::logic_error("tree extraction failed to match the DP value");
}

}  // namespace

BestTreeResult best_tree_dp(const SuffixCountTree& ct, std::size_t leaf_budget) {
    if (leaf_budget < 1) throw std::domain_error("best_tree_dp: leaf budget must be >= 1");
    DpWorkspace ws;
    const std::int64_t value = dp_run(ct, leaf_budget, ct.depth_cap(), nullptr, ws);
    std::vector<std::pair<Word, Bit>> leaves;
    std::vector<Bit> path;
    dp_extract(ct, ws, ct.depth_cap(), nullptr, ct.root(), leaf_budget, path, leaves);
    return BestTreeResult{static_cast<std::uint64_t>(value),
                          ContextTreeSpec::from_leaves(std::move(leaves))};
}

namespace {

// Truncated context-mode steps predict 0 and cost an error exactly when the
// next symbol is 1.  Step t truncates when the whole-past node (x_t,...,x_1)
// is internal, so the penalty for making that node internal is [x_{t+1}=1].
struct BoundaryPenalties {
    std::vector<int> node_at_depth;   // trie node holding the whole past of length d
    std::vector<std::int64_t> flag;   // cost if that node is internal
};

BoundaryPenalties locate_boundary_nodes(const SuffixCountTree& ct, const BinarySequence& x) {
    BoundaryPenalties bp;
    const std::size_t n = x.size();
    const std::size_t max_d = std::min(ct.depth_cap(), n == 0 ? 0 : n - 1);
    bp.node_at_depth.assign(max_d + 1, -1);
    bp.flag.assign(max_d + 1, 0);
    for (std::size_t d = 0; d + 1 <= n && d <= max_d; ++d) {
        Word prefix;
        prefix.bits.assign(x.bits().begin(), x.bits().begin() + static_cast<std::ptrdiff_t>(d));
        bp.node_at_depth[d] = ct.find(prefix);
        bp.flag[d] = x[d + 1] == 1 ? 1 : 0;
    }
    return bp;
}

struct SweepBest {
    std::int64_t errors = std::numeric_limits<std::int64_t>::max();
    std::size_t t0 = 0;
};

// Pairs still predicted by the context tree once a length-t0 transient has
// absorbed the opening of the sequence.
PairWindow tail_window(std::size_t t0, std::size_t n) {
    if (n == 0 || t0 > n - 1) return PairWindow{1, 0};
    return PairWindow{t0, n - 1};
}

// Evaluate transient lengths [t0_begin, t0_end); the count tree starts on
// the window [t0_begin, N-1] and shrinks as t0 advances.
SweepBest sweep_chunk(const BinarySequence& x, std::size_t s, std::size_t build_cap,
                      std::size_t t0_begin, std::size_t t0_end) {
    const std::size_t n = x.size();
    SuffixCountTree ct = SuffixCountTree::build(x, build_cap, tail_window(t0_begin, n));
    BoundaryPenalties bp = locate_boundary_nodes(ct, x);

    std::vector<std::int64_t> penalty(ct.node_count(), 0);
    for (std::size_t d = t0_begin; d < bp.node_at_depth.size(); ++d)
        if (bp.node_at_depth[d] >= 0)
            penalty[static_cast<std::size_t>(bp.node_at_depth[d])] = bp.flag[d];

    SweepBest best;
    DpWorkspace ws;
    for (std::size_t t0 = t0_begin; t0 < t0_end; ++t0) {
        const std::size_t budget = s - t0;
        const std::size_t dp_cap = std::min(budget - 1, n == 0 ? 0 : n - 1);
        const std::int64_t errors = dp_run(ct, budget, dp_cap, &penalty, ws);
        if (errors < best.errors) best = SweepBest{errors, t0};
        if (t0 + 1 < t0_end) {
            if (t0 + 1 <= n) ct.remove_pair(x, t0);
            if (t0 < bp.node_at_depth.size() && bp.node_at_depth[t0] >= 0)
                penalty[static_cast<std::size_t>(bp.node_at_depth[t0])] = 0;
        }
    }
    return best;
}

}  // namespace

KappaBracket kappa_bracket(const BinarySequence& x, std::size_t s) {
    if (s < 1) throw std::domain_error("kappa_bracket: S must be >= 1");
    const std::size_t n = x.size();
    KappaBracket kb;
    kb.n = n;

    const std::size_t build_cap = n == 0 ? 0 : std::min(s - 1, n - 1);
    {
        SuffixCountTree full =
            SuffixCountTree::build(x, build_cap, PairWindow::all_predictions(n));
        DpWorkspace ws;
        const std::int64_t dp_full = dp_run(full, s, build_cap, nullptr, ws);
        kb.lower_errors =
            static_cast<std::uint64_t>(dp_full) > s ? static_cast<std::uint64_t>(dp_full) - s : 0;
    }

    const std::size_t t0_max = std::min(s - 1, n);  // inclusive
    const std::size_t tasks = t0_max + 1;
    std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks);
    if (tasks < 8) workers = 1;

    SweepBest best;
    if (workers <= 1) {
        best = sweep_chunk(x, s, build_cap, 0, tasks);
    } else {
        std::vector<std::future<SweepBest>> futures;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = tasks * w / workers;
            const std::size_t hi = tasks * (w + 1) / workers;
            futures.push_back(std::async(std::launch::async, sweep_chunk, std::cref(x), s,
                                         build_cap, lo, hi));
        }
        for (auto& f : futures) {
            const SweepBest b = f.get();
            if (b.errors < best.errors || (b.errors == best.errors && b.t0 < best.t0)) best = b;
        }
    }

    kb.upper_errors = static_cast<std::uint64_t>(best.errors);
    kb.transient_len = best.t0;

    // Reconstruct the winning machine's context tree.
    SuffixCountTree ct = SuffixCountTree::build(x, build_cap, tail_window(best.t0, n));
    BoundaryPenalties bp = locate_boundary_nodes(ct, x);
    std::vector<std::int64_t> penalty(ct.node_count(), 0);
    for (std::size_t d = best.t0; d < bp.node_at_depth.size(); ++d)
        if (bp.node_at_depth[d] >= 0)
            penalty[static_cast<std::size_t>(bp.node_at_depth[d])] = bp.flag[d];
    DpWorkspace ws;
    const std::size_t budget = s - best.t0;
    const std::size_t dp_cap = std::min(budget - 1, n == 0 ? 0 : n - 1);
    const std::int64_t check = dp_run(ct, budget, dp_cap, &penalty, ws);
    if (check != best.errors)
        throw std::logic_error("kappa upper bound re-evaluation mismatch");
    std::vector<std::pair<Word, Bit>> leaves;
    std::vector<Bit> path;
    dp_extract(ct, ws, dp_cap, &penalty, ct.root(), budget, path, leaves);
    kb.argmin_tree = ContextTreeSpec::from_leaves(std::move(leaves));
    kb.context_leaves = kb.argmin_tree.leaf_count();
    return kb;
}

namespace {

// Complete suffix-tree shapes as leaf lists (forward words); shapes[l] holds
// every shape with exactly l leaves.
std::vector<std::vector<std::vector<Word>>> enumerate_shapes(std::size_t max_leaves) {
    std::vector<std::vector<std::vector<Word>>> shapes(max_leaves + 1);
    if (max_leaves >= 1) shapes[1] = {{Word{}}};
    for (std::size_t l = 2; l <= max_leaves; ++l) {
        for (std::size_t l0 = 1; l0 < l; ++l0) {
            for (const auto& left : shapes[l0]) {
                for (const auto& right : shapes[l - l0]) {
                    std::vector<Word> combined;
                    combined.reserve(l);
                    for (const Word& w : left) {
                        Word ext = w;
                        ext.bits.push_back(0);  // most recent bit 0
                        combined.push_back(std::move(ext));
                    }
                    for (const Word& w : right) {
                        Word ext = w;
                        ext.bits.push_back(1);
                        combined.push_back(std::move(ext));
                    }
                    shapes[l].push_back(std::move(combined));
                }
            }
        }
    }
    return shapes;
}

}  // namespace

std::uint64_t brute_force_kappa(const BinarySequence& x, std::size_t s) {
    if (s < 1) throw std::domain_error("brute_force_kappa: S must be >= 1");
    if (x.size() > 16 || s > 5)
        throw SizeGuardError("brute force limited to N <= 16 and S <= 5");
    const std::size_t n = x.size();
    const auto shapes = enumerate_shapes(s);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    const std::size_t t0_max = std::min(s - 1, n);
    for (std::size_t t0 = 0; t0 <= t0_max; ++t0) {
        for (std::size_t l = 1; l + t0 <= s; ++l) {
            for (const auto& shape : shapes[l]) {
                std::vector<std::pair<Word, Bit>> leaves;
                leaves.reserve(shape.size());
                for (const Word& w : shape) leaves.emplace_back(w, Bit{0});
                const ContextTreeSpec tree = ContextTreeSpec::from_leaves(std::move(leaves));
                // hindsight outputs: tally the realized visits, then charge
                // each leaf its minority count; truncated steps predict 0
                std::map<int, CountTriple> tally;
                std::uint64_t errors = 0;
                for (std::size_t t = t0; t + 1 <= n; ++t) {
                    const ResolvedContext rc = tree.resolve(x, t);
                    if (rc.truncated)
                        errors += x[t + 1] == 1;
                    else
                        tally[rc.leaf_id].add(x[t + 1]);
                }
                for (const auto& [leaf, c] : tally) {
                    (void)leaf;
                    errors += c.min01();
                }
                best = std::min(best, errors);
            }
        }
    }
    return best;
}

}  // namespace ctxpredict
