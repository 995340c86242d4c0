#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctxpredict/generators.hpp"
#include "ctxpredict/oracle.hpp"
#include "ctxpredict/predictor.hpp"
#include "ctxpredict/universal.hpp"

using namespace ctxpredict;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ctxpredict_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string("\"") + CTXPREDICT_CLI_PATH + "\" " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("predict learns an alternating source with auto thresholds") {
    const CmdResult r = run_cli("predict --gen alternating --N 4096 --M auto");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["error_rate"].get<double>() < 0.05);
    CHECK(j["tree_stats"]["total_contexts"].get<std::size_t>() >= 1);
}

TEST_CASE("markov baseline dispatches to the fixed-state predictor") {
    const CmdResult r =
        run_cli("predict --gen bernoulli:0.5 --N 512 --seed 5 --baseline markov:2");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const BinarySequence x = generate("bernoulli:0.5", 512, 5);
    const RunReport expected = run_phi_over_states(markov_resolver(2), x);
    CHECK(j["report"]["expected_errors"].get<double>() ==
          doctest::Approx(expected.expected_errors).epsilon(1e-12));
    CHECK(j["report"]["per_state"].contains("\xce\xb5"));  // empty word key
}

TEST_CASE("constant baseline counts plain mismatches") {
    const CmdResult r = run_cli("predict --gen ones --N 10 --baseline constant:0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["expected_errors"].get<double>() == 10.0);
}

TEST_CASE("kappa subcommand mirrors the library bracket") {
    const CmdResult r = run_cli("kappa --gen periodic:0011 --N 12 --S 4");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const KappaBracket kb = kappa_bracket(generate("periodic:0011", 12, 0), 4);
    CHECK(j["kappa"]["lower_errors"].get<std::uint64_t>() == kb.lower_errors);
    CHECK(j["kappa"]["upper_errors"].get<std::uint64_t>() == kb.upper_errors);
}

TEST_CASE("kappa --exact refuses oversized requests with a nonzero exit") {
    const CmdResult r = run_cli("kappa --gen bernoulli:0.5 --N 20 --S 2 --exact");
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(r.err.find('\n') == r.err.size() - 1);  // single line
}

TEST_CASE("unreadable input and parse errors exit nonzero with one line") {
    const CmdResult a = run_cli("predict --input /nonexistent/file --S 2");
    CHECK(a.exit_code == 1);
    CHECK(a.err.rfind("error: ", 0) == 0);

    const fs::path bad = scratch_dir() / "bad.bits";
    std::ofstream(bad) << "01x1";
    const CmdResult b = run_cli("predict --input " + bad.string());
    CHECK(b.exit_code == 1);
    CHECK(b.err.find("offset 2") != std::string::npos);
}

TEST_CASE("raw format unpacks bytes most significant bit first") {
    const fs::path raw = scratch_dir() / "raw.bin";
    {
        std::ofstream out(raw, std::ios::binary);
        out.put(static_cast<char>(0xA0));
    }
    const CmdResult r =
        run_cli("predict --input " + raw.string() + " --format raw --baseline constant:0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["expected_errors"].get<double>() == 2.0);  // bits 10100000
}

TEST_CASE("trace CSV has the versioned header and one row per step") {
    const fs::path trace = scratch_dir() / "trace.csv";
    const CmdResult r = run_cli("predict --gen alternating --N 32 --M 4 --trace " +
                                trace.string() + " --out /dev/null");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(slurp(trace));
    std::string line;
    std::getline(in, line);
    CHECK(line == "#ctxpredict-v1");
    std::getline(in, line);
    CHECK(line == "t,k0,context,q,next,expected_loss");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 32);
}

TEST_CASE("sweep output is byte-identical across reruns and self-consistent") {
    const fs::path f1 = scratch_dir() / "sweep1.csv";
    const fs::path f2 = scratch_dir() / "sweep2.csv";
    const std::string args = "sweep --gen bernoulli:0.6 --N 256,512,1024 --seed 9 --out ";
    REQUIRE(run_cli(args + f1.string()).exit_code == 0);
    REQUIRE(run_cli(args + f2.string()).exit_code == 0);
    const std::string c1 = slurp(f1);
    CHECK(c1 == slurp(f2));
    CHECK(c1.rfind("#ctxpredict-v1\n", 0) == 0);

    std::istringstream in(c1);
    std::string line;
    std::getline(in, line);  // version
    std::getline(in, line);  // header
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        const double rate = std::stod(cells[3]);
        const double lower = std::stod(cells[4]);
        const double upper = std::stod(cells[5]);
        const double redundancy = std::stod(cells[6]);
        CHECK(redundancy == doctest::Approx(rate - lower).epsilon(1e-12));
        CHECK(lower <= upper + 1e-15);
    }
    CHECK(rows == 3);
}

TEST_CASE("sweep with no lengths emits the header only") {
    const CmdResult r = run_cli("sweep --gen zeros");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "#ctxpredict-v1\nN,S,M,error_rate,kappa_lower,kappa_upper,redundancy,theory_bound\n");
}

TEST_CASE("bounds subcommand prints the report") {
    const CmdResult r = run_cli("bounds --N 1024 --S 4 --M 8");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["main_bound"].get<double>() == doctest::Approx(1.2267).epsilon(1e-4));

    const CmdResult csv = run_cli("bounds --N 1024,2048 --S 4 --M 8");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("#ctxpredict-v1\n", 0) == 0);
}

TEST_CASE("adversary subcommand: exhaustive ensemble at N=16") {
    const CmdResult r = run_cli("adversary --a 0.5 --N 16 --samples 0 --seed 1");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["samples"].get<std::size_t>() == 256);
    CHECK(j["report"]["mean_prefix_error_rate"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["report"]["kappa_zero_verified"].get<std::size_t>() == 256);
}

TEST_CASE("seven-length sweep: redundancy shrinks with N") {
    const fs::path out = scratch_dir() / "sweep7.csv";
    const CmdResult r = run_cli(
        "sweep --gen bernoulli:0.5 --N 1024,2048,4096,8192,16384,32768,65536 --seed 4242 "
        "--out " +
        out.string());
    REQUIRE(r.exit_code == 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::vector<double> redundancy, lower, upper;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        lower.push_back(std::stod(cells[4]));
        upper.push_back(std::stod(cells[5]));
        redundancy.push_back(std::stod(cells[6]));
    }
    REQUIRE(redundancy.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(lower[i] <= upper[i] + 1e-15);
    for (std::size_t i = 1; i < 7; ++i) CHECK(redundancy[i] <= redundancy[i - 1] * 1.05);
}

TEST_CASE("linear-law adversary sweep keeps redundancy near a/2") {
    const fs::path out = scratch_dir() / "sweepadv.csv";
    const CmdResult r = run_cli(
        "sweep --gen adversarial:1 --N 256,512,1024 --S-law linear --seed 5 --out " +
        out.string());
    REQUIRE(r.exit_code == 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        const double n = std::stod(cells[0]);
        const double kappa_lower = std::stod(cells[4]);
        const double redundancy = std::stod(cells[6]);
        CHECK(kappa_lower == 0.0);  // the chain family predicts its own output
        CHECK(redundancy >= 0.5 - 3.0 * std::sqrt(1.0 / (4.0 * n)));
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("predict JSON reports are reproducible byte for byte") {
    const fs::path f1 = scratch_dir() / "p1.json";
    const fs::path f2 = scratch_dir() / "p2.json";
    const std::string args =
        "predict --gen markov:2 --N 2000 --seed 77 --mode sampled --M 8 --out ";
    REQUIRE(run_cli(args + f1.string()).exit_code == 0);
    REQUIRE(run_cli(args + f2.string()).exit_code == 0);
    CHECK(slurp(f1) == slurp(f2));
}
