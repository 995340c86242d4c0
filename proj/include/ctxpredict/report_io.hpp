#ifndef CTXPREDICT_REPORT_IO_HPP
#define CTXPREDICT_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctxpredict/adversary.hpp"
#include "ctxpredict/bounds.hpp"
#include "ctxpredict/oracle.hpp"
#include "ctxpredict/predictor.hpp"
#include "ctxpredict/universal.hpp"

namespace ctxpredict {

/// Shortest exact decimal form ("%.17g"); reports round-trip bit for bit.
std::string format_double(double v);

nlohmann::json to_json(const RunReport& r);
nlohmann::json to_json(const TreeStats& s);
nlohmann::json to_json(const KappaBracket& kb);
nlohmann::json to_json(const EnsembleReport& r);
nlohmann::json to_json(const BoundReport& r);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

struct SweepRow {
    std::size_t n = 0;
    std::size_t s = 0;
    std::uint64_t m = 0;
    double error_rate = 0.0;
    double kappa_lower = 0.0;
    double kappa_upper = 0.0;
    double redundancy = 0.0;  // error_rate - kappa_lower
    double theory_bound = 0.0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ctxpredict

#endif
