#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "revcap/cli.hpp"

using namespace revcap;
using namespace revcap::cli;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return RunResult{code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("info: generic and closed agree at the pinned point") {
    const RunResult r = run_cli({"info", "--channel", "ad", "--eta", "0.8", "--p", "0.5",
                                 "--measure", "ci", "--method", "both"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    double generic = 0, closed = 0, diff = 1;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string measure, method;
        double value;
        fields >> measure >> method >> value;
        CHECK(measure == "ci");
        if (method == "generic") generic = value;
        if (method == "closed") closed = value;
        if (method == "difference") diff = value;
    }
    CHECK(generic == doctest::Approx(0.501955).epsilon(1e-6));
    CHECK(closed == doctest::Approx(0.501955).epsilon(1e-6));
    CHECK(diff <= 1e-9);
}

TEST_CASE("info: json format emits objects keyed by the column names") {
    const RunResult r = run_cli({"info", "--channel", "erasure", "--epsilon", "0.3", "--p", "0.5",
                                 "--measure", "rci", "--method", "both", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 3);
    CHECK(doc[0]["measure"] == "rci");
    CHECK(doc[0].contains("value"));
    CHECK(std::abs(doc[0]["value"].get<double>() - (-0.181291)) <= 1e-6);
}

TEST_CASE("curve: header, row count, line endings, significant digits") {
    const std::string path = temp_path("fig4.csv");
    const RunResult r = run_cli({"curve", "--channel", "ad", "--eta-from", "0", "--eta-to", "1",
                                 "--steps", "100", "--measure", "both", "--out", path});
    REQUIRE(r.code == 0);
    const std::string text = slurp(path);
    CHECK(text.find("\r") == std::string::npos);
    CHECK(text.back() == '\n');
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 102);  // header + 101 grid rows
    CHECK(rows[0] == std::vector<std::string>{"eta", "value_ci", "p_ci", "value_rci", "p_rci"});
    CHECK(rows[1][0] == "0");
    CHECK(rows.back()[0] == "1");
    // 12 significant digits on a non-terminating value.
    bool long_value = false;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i][3].size() >= 12) long_value = true;
    CHECK(long_value);
    std::remove(path.c_str());
}

TEST_CASE("curve: byte-identical output across runs and job counts") {
    const std::string a = temp_path("curve_a.csv");
    const std::string b = temp_path("curve_b.csv");
    REQUIRE(run_cli({"curve", "--channel", "gad", "--alpha", "0.25", "--eta-from", "0.2", "--eta-to",
                     "0.8", "--steps", "12", "--out", a, "--jobs", "1"})
                .code == 0);
    REQUIRE(run_cli({"curve", "--channel", "gad", "--alpha", "0.25", "--eta-from", "0.2", "--eta-to",
                     "0.8", "--steps", "12", "--out", b, "--jobs", "4"})
                .code == 0);
    CHECK(slurp(a) == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("scan-theta: csv shape and extremum lines") {
    const std::string path = temp_path("scan.csv");
    const RunResult r =
        run_cli({"scan-theta", "--channel", "gad", "--eta", "0.62", "--alpha", "0.5", "--measure",
                 "ci", "--p", "0.25", "--p", "0.5", "--grid", "128", "--extrema", "--out", path});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(path));
    REQUIRE(rows.size() == 1 + 2 * 129);
    CHECK(rows[0] == std::vector<std::string>{"p", "theta", "value"});
    CHECK(r.out.find("extremum p=0.25") != std::string::npos);
    CHECK(r.out.find("kind=min") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("noise-threshold: long-format rows") {
    const RunResult r = run_cli({"noise-threshold", "--eta-from", "0.3", "--eta-to", "0.7",
                                 "--steps", "4", "--measure", "both", "--jobs", "2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 2 * 5);
    CHECK(rows[0] == std::vector<std::string>{"measure", "eta", "alpha_star"});
    CHECK(rows[1][0] == "ci");
    CHECK(rows[6][0] == "rci");
    // ci threshold vanishes below eta = 1/2, the reverse threshold does not.
    CHECK(rows[1][2] == "0");
    CHECK(std::stod(rows[6][2]) > 0.0);
}

TEST_CASE("figure presets resolve the documented parameters") {
    const CommandRequest fig4 = figure_presets("fig4");
    CHECK(fig4.subcommand == "curve");
    CHECK(fig4.channel.family == Family::ad);
    CHECK(fig4.eta_from == 0.0);
    CHECK(fig4.eta_to == 1.0);

    const CommandRequest fig6 = figure_presets("fig6");
    CHECK(fig6.subcommand == "noise-threshold");
    REQUIRE(fig6.threshold_jobs.size() == 2);
    CHECK(fig6.threshold_jobs[0].measure == Measure::ci);
    CHECK(fig6.threshold_jobs[0].eta_from == 0.5);
    CHECK(fig6.threshold_jobs[1].measure == Measure::rci);
    CHECK(fig6.threshold_jobs[1].eta_from == 0.0);

    const CommandRequest fig7 = figure_presets("fig7");
    CHECK(fig7.subcommand == "scan-theta");
    CHECK(fig7.channel.eta == 0.62);
    CHECK(fig7.channel.alpha == 0.5);
    CHECK(fig7.measures == std::vector<Measure>{Measure::ci});
    CHECK(fig7.p_values == std::vector<double>{0.25, 0.5});

    const CommandRequest fig8 = figure_presets("fig8");
    CHECK(fig8.channel.eta == 0.75);
    CHECK(fig8.channel.alpha == 0.4);
    CHECK(fig8.measures == std::vector<Measure>{Measure::rci});

    CHECK_THROWS(figure_presets("fig9"));
}

TEST_CASE("usage errors exit with code 2 and name the violated precondition") {
    const RunResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.code == 2);

    const RunResult missing_alpha =
        run_cli({"info", "--channel", "gad", "--eta", "0.5", "--p", "0.5"});
    CHECK(missing_alpha.code == 2);
    CHECK(missing_alpha.err.find("alpha required for gad") != std::string::npos);

    const RunResult stray_alpha =
        run_cli({"info", "--channel", "ad", "--eta", "0.5", "--alpha", "0.2", "--p", "0.5"});
    CHECK(stray_alpha.code == 2);
    CHECK(stray_alpha.err.find("alpha not accepted for ad") != std::string::npos);

    const RunResult bad_range = run_cli({"info", "--channel", "ad", "--eta", "1.5", "--p", "0.5"});
    CHECK(bad_range.code == 2);

    const RunResult bad_flag = run_cli({"capacity", "--channel", "ad", "--eta", "0.5", "--frob"});
    CHECK(bad_flag.code == 2);

    const RunResult bad_suite = run_cli({"verify", "--suite", "nonsense"});
    CHECK(bad_suite.code == 2);
}

TEST_CASE("verify: fast suites pass, corrupted tolerance fails with exit 1") {
    const RunResult ok = run_cli({"verify", "--suite", "phase", "--suite", "degradability"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("suite phase: cases=51 failures=0") != std::string::npos);
    CHECK(ok.out.find("total: suites=2") != std::string::npos);

    const RunResult corrupted =
        run_cli({"verify", "--suite", "phase", "--tolerance-scale", "1e-9"});
    CHECK(corrupted.code == 1);
    CHECK(corrupted.out.find("failures=0") == std::string::npos);
}

TEST_CASE("verify: errata report is written as json") {
    const std::string path = temp_path("errata.json");
    const RunResult r = run_cli({"verify", "--suite", "mixture", "--errata-out", path});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(path));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["id"] == "gad-mixture-coefficient");
    CHECK(doc[0]["status"] == "deviation_reported");
    CHECK(doc[0]["max_abs_deviation_reconciled"].get<double>() <= 1e-10);
    std::remove(path.c_str());
}

TEST_CASE("errata report is byte-identical across job counts") {
    const std::string a = temp_path("errata_a.json");
    const std::string b = temp_path("errata_b.json");
    REQUIRE(run_cli({"verify", "--suite", "derivative", "--jobs", "1", "--errata-out", a}).code == 0);
    REQUIRE(run_cli({"verify", "--suite", "derivative", "--jobs", "4", "--errata-out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("json rows round-trip the csv header names") {
    const RunResult r = run_cli({"curve", "--channel", "ad", "--eta-from", "0.5", "--eta-to", "1",
                                 "--steps", "4", "--measure", "ci", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 5);
    for (const auto& row : doc) {
        CHECK(row.contains("eta"));
        CHECK(row.contains("value_ci"));
        CHECK(row.contains("p_ci"));
        CHECK(!row.contains("value_rci"));
    }
}

TEST_CASE("info: random family is seeded and deterministic") {
    const std::vector<std::string> args{"info", "--channel", "random", "--seed", "42",
                                        "--p",  "0.4",       "--measure", "ci",  "--method",
                                        "generic"};
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const RunResult missing = run_cli({"info", "--channel", "random", "--p", "0.4"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("seed required for random") != std::string::npos);

    const RunResult stray =
        run_cli({"info", "--channel", "ad", "--eta", "0.5", "--seed", "7", "--p", "0.4"});
    CHECK(stray.code == 2);
}

TEST_CASE("REVCAP_JOBS is the fallback for --jobs") {
    const std::string a = temp_path("jobs_env.csv");
    const std::string b = temp_path("jobs_flag.csv");
    setenv("REVCAP_JOBS", "3", 1);
    REQUIRE(run_cli({"curve", "--channel", "ad", "--eta-from", "0.4", "--eta-to", "0.9", "--steps",
                     "8", "--out", a})
                .code == 0);
    unsetenv("REVCAP_JOBS");
    REQUIRE(run_cli({"curve", "--channel", "ad", "--eta-from", "0.4", "--eta-to", "0.9", "--steps",
                     "8", "--out", b, "--jobs", "1"})
                .code == 0);
    CHECK(slurp(a) == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("help exits zero") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({}).code == 2);
}
