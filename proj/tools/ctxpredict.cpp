// Command-line front end: batch experiments around the growing-context
// predictor, the predictability oracle, the adversarial ensemble and the
// closed-form bound evaluators.  All randomness is seeded; a config plus the
// code version determines every output byte.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ctxpredict/adversary.hpp"
#include "ctxpredict/bounds.hpp"
#include "ctxpredict/generators.hpp"
#include "ctxpredict/machine.hpp"
#include "ctxpredict/oracle.hpp"
#include "ctxpredict/predictor.hpp"
#include "ctxpredict/report_io.hpp"
#include "ctxpredict/rng.hpp"
#include "ctxpredict/universal.hpp"

namespace cp = ctxpredict;

namespace {

struct SourceOptions {
    std::string input_path;
    std::string format = "ascii";
    std::string generator;
    std::size_t n = 0;  // 0 = whole input file
    std::uint64_t seed = 0;
};

struct ModelOptions {
    std::size_t s = 0;  // 0 = use the law
    std::string s_law = "sqrt";
    std::string m = "auto";
    std::string m_schedule = "hd";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error(what + " expects an unsigned integer, got '" + s + "'");
    return std::stoull(s);
}

cp::BinarySequence resolve_sequence(const SourceOptions& src) {
    if (!src.generator.empty()) {
        if (src.n == 0) throw std::runtime_error("--gen requires --N");
        return cp::generate(src.generator, src.n, src.seed);
    }
    if (src.input_path.empty()) throw std::runtime_error("one of --input or --gen is required");
    cp::SequenceFormat fmt;
    if (src.format == "ascii")
        fmt = cp::SequenceFormat::Ascii;
    else if (src.format == "raw")
        fmt = cp::SequenceFormat::Raw;
    else
        throw std::runtime_error("--format must be ascii or raw");
    cp::BinarySequence x = cp::load_sequence(read_file(src.input_path), fmt);
    if (src.n == 0) return x;
    if (src.n > x.size())
        throw std::runtime_error("input provides only " + std::to_string(x.size()) + " bits");
    std::vector<cp::Bit> bits(x.bits().begin(),
                              x.bits().begin() + static_cast<std::ptrdiff_t>(src.n));
    return cp::BinarySequence(std::move(bits));
}

std::size_t resolve_states(const ModelOptions& mo, std::size_t n) {
    if (mo.s > 0) return mo.s;
    if (mo.s_law == "sqrt")
        return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (mo.s_law == "linear") return n;
    if (mo.s_law.rfind("pow:", 0) == 0) {
        const double beta = std::stod(mo.s_law.substr(4));
        if (!(beta > 0.0 && beta < 1.0)) throw std::runtime_error("pow law needs beta in (0,1)");
        return static_cast<std::size_t>(
            std::ceil(std::pow(static_cast<double>(n), beta)));
    }
    throw std::runtime_error("--S-law must be sqrt, linear or pow:<beta>");
}

cp::MSchedule resolve_schedule(const ModelOptions& mo, std::size_t n, std::size_t s) {
    if (mo.m_schedule == "hd") {
        std::uint64_t m;
        if (mo.m == "auto")
            m = cp::optimal_M(n, std::min(s, n));
        else
            m = parse_uint(mo.m, "--M");
        return cp::MSchedule::horizon_dependent(m);
    }
    if (mo.m_schedule == "pow2") return cp::MSchedule::hi_pow2();
    if (mo.m_schedule.rfind("const:", 0) == 0)
        return cp::MSchedule::hi_constant(parse_uint(mo.m_schedule.substr(6), "--M-schedule const"));
    throw std::runtime_error("--M-schedule must be hd, pow2 or const:<M0>");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

nlohmann::json config_json(const SourceOptions& src, const ModelOptions& mo, std::size_t n,
                           std::size_t s, const std::string& schedule_label,
                           const std::string& mode) {
    nlohmann::json j;
    if (!src.generator.empty())
        j["generator"] = src.generator;
    else
        j["input"] = src.input_path;
    j["format"] = src.format;
    j["N"] = n;
    j["S"] = s;
    j["schedule"] = schedule_label;
    j["mode"] = mode;
    j["seed"] = src.seed;
    return j;
}

void add_source_flags(CLI::App* cmd, SourceOptions& src, bool with_n = true) {
    cmd->add_option("--input", src.input_path, "sequence file");
    cmd->add_option("--format", src.format, "ascii|raw")->capture_default_str();
    cmd->add_option("--gen", src.generator, "generator spec (see README)");
    if (with_n) cmd->add_option("--N", src.n, "sequence length (truncates file input)");
    cmd->add_option("--seed", src.seed, "seed for generators and sampled mode")
        ->capture_default_str();
}

void add_model_flags(CLI::App* cmd, ModelOptions& mo) {
    cmd->add_option("--S", mo.s, "reference state budget (overrides --S-law)");
    cmd->add_option("--S-law", mo.s_law, "sqrt|linear|pow:<beta>")->capture_default_str();
    cmd->add_option("--M", mo.m, "threshold M_N, or auto")->capture_default_str();
    cmd->add_option("--M-schedule", mo.m_schedule, "hd|pow2|const:<M0>")
        ->capture_default_str();
}

int cmd_predict(const SourceOptions& src, const ModelOptions& mo, const std::string& mode,
                const std::string& baseline, const std::string& trace_path,
                const std::string& out_path) {
    const cp::BinarySequence x = resolve_sequence(src);
    const std::size_t n = x.size();
    const std::size_t s = resolve_states(mo, n);
    const cp::LossMode loss =
        mode == "sampled" ? cp::LossMode::Sampled : cp::LossMode::Expected;

    nlohmann::json j;
    if (baseline.empty()) {
        const cp::MSchedule schedule = resolve_schedule(mo, n, s);
        cp::UniversalRunResult run =
            cp::run_universal(x, schedule, loss, src.seed, !trace_path.empty());
        j["command"] = "predict";
        j["config"] = config_json(src, mo, n, s, schedule.label(), mode);
        j["report"] = cp::to_json(run.report);
        j["tree_stats"] = cp::to_json(run.stats);
        j["error_rate"] = n ? run.report.expected_errors / static_cast<double>(n) : 0.0;
        if (!trace_path.empty()) {
            std::ofstream tr(trace_path, std::ios::binary);
            if (!tr) throw std::runtime_error("cannot write '" + trace_path + "'");
            cp::write_trace_csv(tr, run.trace);
        }
    } else if (baseline.rfind("markov:", 0) == 0) {
        const auto order = static_cast<std::size_t>(parse_uint(baseline.substr(7), "--baseline markov"));
        cp::RunReport report =
            cp::run_phi_over_states(cp::markov_resolver(order), x, loss, src.seed);
        j["command"] = "predict";
        j["config"] = config_json(src, mo, n, s, "baseline:" + baseline, mode);
        j["report"] = cp::to_json(report);
        j["error_rate"] = n ? report.expected_errors / static_cast<double>(n) : 0.0;
    } else if (baseline.rfind("constant:", 0) == 0) {
        const int b = std::stoi(baseline.substr(9));
        if (b != 0 && b != 1) throw std::runtime_error("constant baseline bit must be 0 or 1");
        cp::RunReport report;
        report.steps = n;
        cp::StateStats& st = report.per_state[cp::Word{}];
        for (std::size_t t = 1; t <= n; ++t) {
            const double loss_t = x[t] == b ? 0.0 : 1.0;
            report.expected_errors += loss_t;
            st.expected_errors += loss_t;
            st.counts.add(x[t]);
        }
        j["command"] = "predict";
        j["config"] = config_json(src, mo, n, s, "baseline:" + baseline, mode);
        j["report"] = cp::to_json(report);
        j["error_rate"] = n ? report.expected_errors / static_cast<double>(n) : 0.0;
    } else {
        throw std::runtime_error("--baseline must be markov:<k> or constant:<bit>");
    }
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_kappa(const SourceOptions& src, std::size_t s, bool exact,
              const std::string& out_path) {
    if (s < 1) throw std::runtime_error("--S must be >= 1");
    const cp::BinarySequence x = resolve_sequence(src);
    const cp::KappaBracket kb = cp::kappa_bracket(x, s);
    nlohmann::json j;
    j["command"] = "kappa";
    j["S"] = s;
    j["kappa"] = cp::to_json(kb);
    if (exact) {
        const std::uint64_t brute = cp::brute_force_kappa(x, s);  // guarded; may refuse
        j["exact_errors"] = brute;
        j["exact_matches_upper"] = brute == kb.upper_errors;
    }
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const SourceOptions& src, const ModelOptions& mo,
              const std::vector<std::size_t>& ns, const std::string& out_path) {
    std::vector<cp::SweepRow> rows;
    for (const std::size_t n : ns) {
        SourceOptions per_row = src;
        per_row.n = n;
        const cp::BinarySequence x = resolve_sequence(per_row);
        const std::size_t s = resolve_states(mo, n);
        const cp::MSchedule schedule = resolve_schedule(mo, n, s);
        const cp::UniversalRunResult run = cp::run_universal(x, schedule);
        const cp::KappaBracket kb = cp::kappa_bracket(x, s);

        cp::SweepRow row;
        row.n = n;
        row.s = s;
        row.m = schedule.horizon_independent()
                    ? 0
                    : static_cast<std::uint64_t>(schedule.m_of(1));
        row.error_rate = n ? run.report.expected_errors / static_cast<double>(n) : 0.0;
        row.kappa_lower = kb.lower();
        row.kappa_upper = kb.upper();
        row.redundancy = row.error_rate - row.kappa_lower;
        row.theory_bound =
            schedule.horizon_independent()
                ? cp::horizon_independent_bound(n, s, schedule)
                : cp::main_redundancy_bound(static_cast<std::uint64_t>(schedule.m_of(1)), s, n);
        rows.push_back(row);
    }
    std::ostringstream csv;
    cp::write_sweep_csv(csv, rows);
    write_output(out_path, csv.str());
    return 0;
}

int cmd_adversary(const SourceOptions& src, const ModelOptions& mo, double a,
                  std::size_t samples, const std::string& out_path) {
    if (src.n == 0) throw std::runtime_error("--N is required");
    const std::size_t n = src.n;
    const std::size_t s = resolve_states(mo, n);
    const cp::MSchedule schedule = resolve_schedule(mo, n, s);
    const cp::PredictorFactory factory = [schedule]() {
        return std::make_unique<cp::UniversalPredictor>(schedule);
    };
    const cp::EnsembleReport report =
        cp::ensemble_experiment(a, n, samples, factory, src.seed);
    nlohmann::json j;
    j["command"] = "adversary";
    j["a"] = a;
    j["N"] = n;
    j["schedule"] = schedule.label();
    j["seed"] = src.seed;
    j["report"] = cp::to_json(report);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_bounds(const ModelOptions& mo, const std::vector<std::size_t>& ns,
               const std::string& out_path) {
    if (ns.empty()) throw std::runtime_error("--N is required");
    std::vector<cp::BoundReport> reports;
    for (const std::size_t n : ns) {
        const std::size_t s = resolve_states(mo, n);
        cp::MSchedule schedule = resolve_schedule(mo, n, s);
        reports.push_back(cp::evaluate_bounds(n, s, schedule));
    }
    if (reports.size() == 1) {
        write_output(out_path, cp::to_json(reports[0]).dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "#ctxpredict-v1\n";
    csv << "N,S,M,main_bound,psi,horizon_independent_bound\n";
    for (const cp::BoundReport& r : reports) {
        csv << r.n << ',' << r.s << ',' << cp::format_double(r.m) << ','
            << cp::format_double(r.main_bound) << ',' << cp::format_double(r.psi_value) << ','
            << cp::format_double(r.hi_bound) << '\n';
    }
    write_output(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"context-tree prediction of individual binary sequences"};
    app.require_subcommand(1);

    SourceOptions src;
    ModelOptions mo;
    std::string mode = "expected";
    std::string baseline;
    std::string trace_path;
    std::string out_path;
    std::vector<std::size_t> ns;
    double a = 0.5;
    std::size_t samples = 500;
    bool exact = false;

    CLI::App* predict = app.add_subcommand("predict", "run a predictor over one sequence");
    add_source_flags(predict, src);
    add_model_flags(predict, mo);
    predict->add_option("--mode", mode, "expected|sampled")->capture_default_str();
    predict->add_option("--baseline", baseline, "markov:<k> or constant:<bit>");
    predict->add_option("--trace", trace_path, "write a per-step CSV trace");
    predict->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* kappa = app.add_subcommand("kappa", "predictability bracket of one sequence");
    add_source_flags(kappa, src);
    std::size_t kappa_s = 0;
    kappa->add_option("--S", kappa_s, "state budget")->required();
    kappa->add_flag("--exact", exact, "cross-check with brute force (small inputs only)");
    kappa->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "redundancy sweep over sequence lengths");
    add_source_flags(sweep, src, /*with_n=*/false);
    add_model_flags(sweep, mo);
    sweep->add_option("--N", ns, "sequence lengths (comma separated)")->delimiter(',');
    sweep->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* adversary = app.add_subcommand("adversary", "chain-machine ensemble experiment");
    add_source_flags(adversary, src);
    add_model_flags(adversary, mo);
    adversary->add_option("--a", a, "prefix fraction (aN must be integer)")
        ->capture_default_str();
    adversary->add_option("--samples", samples, "sample count; 0 = exhaustive")
        ->capture_default_str();
    adversary->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate the closed-form bounds");
    add_model_flags(bounds, mo);
    bounds->add_option("--N", ns, "sequence lengths (comma separated)")->delimiter(',');
    bounds->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed())
            return cmd_predict(src, mo, mode, baseline, trace_path, out_path);
        if (kappa->parsed()) return cmd_kappa(src, kappa_s, exact, out_path);
        if (sweep->parsed()) return cmd_sweep(src, mo, ns, out_path);
        if (adversary->parsed()) return cmd_adversary(src, mo, a, samples, out_path);
        if (bounds->parsed()) return cmd_bounds(mo, ns, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
