#include "ctxpredict/report_io.hpp"

#include <cstdio>
#include <ostream>

namespace ctxpredict {

namespace {
constexpr const char* kCsvVersion = "#ctxpredict-v1";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j;
    j["steps"] = r.steps;
    j["expected_errors"] = r.expected_errors;
    if (r.sampled_errors) j["sampled_errors"] = *r.sampled_errors;
    nlohmann::json states = nlohmann::json::object();
    for (const auto& [w, st] : r.per_state) {
        states[w.str()] = {{"n", st.counts.n()},
                           {"n0", st.counts.n0},
                           {"n1", st.counts.n1},
                           {"expected_errors", st.expected_errors}};
    }
    j["per_state"] = std::move(states);
    return j;
}

nlohmann::json to_json(const TreeStats& s) {
    return {{"total_contexts", s.total_contexts},
            {"internal_nodes", s.internal_nodes},
            {"max_internal_usage", s.max_internal_usage},
            {"max_depth", s.max_depth}};
}

nlohmann::json to_json(const KappaBracket& kb) {
    nlohmann::json tree = nlohmann::json::array();
    for (const auto& [w, out] : kb.argmin_tree.leaves())
        tree.push_back({{"context", w.str()}, {"output", static_cast<int>(out)}});
    return {{"n", kb.n},
            {"lower_errors", kb.lower_errors},
            {"upper_errors", kb.upper_errors},
            {"lower", kb.lower()},
            {"upper", kb.upper()},
            {"split", {{"transient_len", kb.transient_len}, {"context_leaves", kb.context_leaves}}},
            {"argmin_tree", std::move(tree)}};
}

nlohmann::json to_json(const EnsembleReport& r) {
    return {{"samples", r.samples},
            {"mean_prefix_error_rate", r.mean_prefix_error_rate},
            {"kappa_zero_verified", r.kappa_zero_verified},
            {"kappa_checked", r.kappa_checked}};
}

nlohmann::json to_json(const BoundReport& r) {
    return {{"N", r.n},
            {"S", r.s},
            {"schedule", r.schedule},
            {"M", r.m},
            {"main_bound", r.main_bound},
            {"psi", r.psi_value},
            {"horizon_independent_bound", r.hi_bound}};
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << kCsvVersion << "\n";
    out << "t,k0,context,q,next,expected_loss\n";
    for (const TraceRow& row : trace) {
        out << row.t << ',' << row.k0 << ',' << row.context.str() << ','
            << format_double(row.q) << ',' << static_cast<int>(row.next) << ','
            << format_double(row.expected_loss) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kCsvVersion << "\n";
    out << "N,S,M,error_rate,kappa_lower,kappa_upper,redundancy,theory_bound\n";
    for (const SweepRow& r : rows) {
        out << r.n << ',' << r.s << ',' << r.m << ',' << format_double(r.error_rate) << ','
            << format_double(r.kappa_lower) << ',' << format_double(r.kappa_upper) << ','
            << format_double(r.redundancy) << ',' << format_double(r.theory_bound) << '\n';
    }
}

}  // namespace ctxpredict
