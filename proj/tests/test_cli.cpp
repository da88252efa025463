#include <catch2/catch_amalgamated.hpp>
#include <sstream>
#include <string>

#include "qtiling/cli.hpp"

using namespace qtiling;

namespace {

RunConfig parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_run_config(in);
}

struct RunResult {
    int code = -1;
    std::string report;
    std::string diag;
};

RunResult run_config(const RunConfig& cfg) {
    std::ostringstream report, diag;
    RunResult res;
    res.code = run(cfg, report, diag);
    res.report = report.str();
    res.diag = diag.str();
    return res;
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig cfg = parse_str(
        "# a full run\n"
        "command: certify\n"
        "d: 2\n"
        "N: 1\n"
        "moduli: 5, 25\n"
        "seed: 7   # trailing comment\n"
        "out: /tmp/report.txt\n"
        "format: svg\n"
        "samples: 250\n");
    CHECK(cfg.command == "certify");
    CHECK(cfg.d == 2);
    CHECK(cfg.N == 1);
    CHECK(cfg.moduli == std::vector<Coord>{5, 25});
    CHECK(cfg.seed == 7);
    CHECK(cfg.out == "/tmp/report.txt");
    CHECK(cfg.format == "svg");
    CHECK(cfg.samples == 250);
    CHECK_FALSE(cfg.r.has_value());

    CHECK_THROWS_AS(parse_str("command certify\n"), ConfigError);       // no colon
    CHECK_THROWS_AS(parse_str("commandd: certify\n"), ConfigError);     // unknown key
    CHECK_THROWS_AS(parse_str("d: two\n"), ConfigError);                // bad integer
    CHECK_THROWS_AS(parse_str("d: 1x\n"), ConfigError);                 // trailing junk
    CHECK_THROWS_AS(parse_str("moduli:\n"), ConfigError);               // empty value
    CHECK_THROWS_AS(parse_config_file("/nonexistent/qtiling.cfg"), ConfigError);

    // blank lines and pure comments are fine
    CHECK(parse_str("\n   \n# nothing\n").command.empty());
}

TEST_CASE("parameter routing") {
    RunConfig cfg;
    cfg.r = 1;
    cfg.D = 1;
    cfg.E = 2;
    CHECK(detail::tiling_params_of(cfg).E == 2);

    RunConfig via_l;
    via_l.r = 2;
    via_l.L = 6;
    const TilingParams p = detail::tiling_params_of(via_l);
    CHECK(p.D == 4);
    CHECK(p.E == 8);

    RunConfig half;
    half.r = 1;
    half.D = 1;
    CHECK_THROWS_AS(detail::tiling_params_of(half), ConfigError);  // E missing
    CHECK_THROWS_AS(detail::tiling_params_of(RunConfig{}), ConfigError);

    RunConfig defaults;
    defaults.N = 2;
    const GreedyParams g = detail::greedy_params_of(defaults, 1, true);
    CHECK(g.r == 3);
    CHECK(g.L == 9);

    RunConfig l_only;
    l_only.L = 9;
    CHECK_THROWS_AS(detail::greedy_params_of(l_only, 1, false), ConfigError);

    RunConfig r_only;
    r_only.r = 2;
    CHECK(detail::greedy_params_of(r_only, 1, false).L == 6);

    CHECK_THROWS_AS(detail::greedy_params_of(RunConfig{}, 1, false), ConfigError);
}

TEST_CASE("verify-shift-lemma command") {
    RunConfig cfg;
    cfg.command = "verify-shift-lemma";
    cfg.d = 1;
    cfg.r = 1;
    cfg.D = 1;
    cfg.E = 2;
    cfg.window = 5;
    const RunResult ok = run_config(cfg);
    CHECK(ok.code == 0);
    CHECK(ok.report.find("report: verify-shift-lemma\n") == 0);
    CHECK(ok.report.find("all_covered: true\n") != std::string::npos);
    CHECK(ok.report.find("tilings_checked: 0\n") == std::string::npos);
    CHECK(ok.diag.empty());

    RunConfig bad = cfg;
    bad.E = 3;  // E <= 2D fails
    const RunResult rejected = run_config(bad);
    CHECK(rejected.code == 2);
    CHECK(rejected.report.empty());
    CHECK(rejected.diag.find("error: ") == 0);

    RunConfig tiny = cfg;
    tiny.budget = 10;
    const RunResult starved = run_config(tiny);
    CHECK(starved.code == 2);
    CHECK(starved.diag.find("error: ") == 0);

    RunConfig flat = cfg;
    flat.d = 2;
    CHECK(run_config(flat).code == 0);

    RunConfig deep = cfg;
    deep.d = 3;
    CHECK(run_config(deep).code == 2);
}

TEST_CASE("certify command") {
    RunConfig cfg;
    cfg.command = "certify";
    cfg.d = 1;
    cfg.N = 2;
    cfg.moduli = {37};
    const RunResult ok = run_config(cfg);
    CHECK(ok.code == 0);
    CHECK(ok.report.find("report: certify\n") == 0);
    CHECK(ok.report.find("chain_bound: 13\n") != std::string::npos);
    CHECK(ok.report.find("pass: true\n") != std::string::npos);

    RunConfig small;
    small.command = "certify";
    small.d = 1;
    small.N = 2;
    small.r = 3;
    small.L = 9;
    small.moduli = {5};
    const RunResult rejected = run_config(small);
    CHECK(rejected.code == 2);
    CHECK(rejected.diag.find("requires modulus >= 37") != std::string::npos);

    RunConfig no_n;
    no_n.command = "certify";
    no_n.d = 1;
    no_n.r = 3;
    no_n.L = 9;
    no_n.moduli = {37};
    CHECK(run_config(no_n).code == 2);  // N >= 1 required here

    RunConfig ext = cfg;
    ext.fiber_alphabet = 2;
    ext.samples = 40;
    ext.seed = 5;
    const RunResult lifted = run_config(ext);
    CHECK(lifted.code == 0);
    CHECK(lifted.report.find("fiber_alphabet: 2\n") != std::string::npos);
    CHECK(lifted.report.find("exhaustive: false\n") != std::string::npos);
    CHECK(lifted.report == run_config(ext).report);
}

TEST_CASE("certify command, two-dimensional") {
    RunConfig cfg;
    cfg.command = "certify";
    cfg.d = 2;
    cfg.N = 1;
    cfg.moduli = {25};
    const RunResult ok = run_config(cfg);
    CHECK(ok.code == 0);
    CHECK(ok.report.find("chain_bound: 81\n") != std::string::npos);
    CHECK(ok.report.find("pass: true\n") != std::string::npos);
}

TEST_CASE("render command, ascii fixture") {
    RunConfig cfg;
    cfg.command = "render";
    cfg.d = 1;
    cfg.r = 1;
    cfg.L = 3;
    cfg.moduli = {13};
    cfg.point = {0};
    cfg.window = 20;
    const RunResult res = run_config(cfg);
    REQUIRE(res.code == 0);
    CHECK(res.report.find("report: render\n") == 0);
    CHECK(res.report.find("point: (0)\n") != std::string::npos);
    CHECK(res.report.find("cover: 21111000002222111100000222211110000022221\n") != std::string::npos);
    CHECK(res.report.find("tiles: .....==^==........==^==........==^==.....\n") != std::string::npos);
    CHECK(res.report.find("ecube: ................~~~~0~~~~................\n") != std::string::npos);

    // identical bytes on a second run
    CHECK(res.report == run_config(cfg).report);

    RunConfig deep = cfg;
    deep.d = 3;
    CHECK(run_config(deep).code == 2);

    RunConfig odd = cfg;
    odd.format = "png";
    CHECK(run_config(odd).code == 2);

    RunConfig short_point = cfg;
    short_point.d = 1;
    short_point.point = {0, 0};
    CHECK(run_config(short_point).code == 2);
}

TEST_CASE("render command, svg") {
    RunConfig cfg;
    cfg.command = "render";
    cfg.d = 2;
    cfg.N = 1;
    cfg.moduli = {25};
    cfg.format = "svg";
    cfg.window = 8;
    const RunResult res = run_config(cfg);
    REQUIRE(res.code == 0);
    CHECK(res.report.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") == 0);
    CHECK(res.report.find("stroke-dasharray=\"4,4\"") != std::string::npos);
    for (int i = 0; i < 9; ++i) {
        CHECK(res.report.find("omega_" + std::to_string(i)) != std::string::npos);
        CHECK(res.report.find(cover_palette()[static_cast<std::size_t>(i)]) != std::string::npos);
    }
    CHECK(res.report == run_config(cfg).report);
}

TEST_CASE("dispatch and exit contract") {
    RunConfig none;
    const RunResult missing = run_config(none);
    CHECK(missing.code == 2);
    CHECK(missing.diag.find("command is required") != std::string::npos);

    RunConfig unknown;
    unknown.command = "explain";
    CHECK(run_config(unknown).code == 2);

    RunConfig no_d;
    no_d.command = "certify";
    CHECK(run_config(no_d).code == 2);

    RunConfig no_moduli;
    no_moduli.command = "certify";
    no_moduli.d = 1;
    no_moduli.N = 2;
    CHECK(run_config(no_moduli).code == 2);
}

TEST_CASE("report file output") {
    RunConfig cfg;
    cfg.command = "verify-shift-lemma";
    cfg.d = 1;
    cfg.r = 1;
    cfg.D = 1;
    cfg.E = 2;
    cfg.out = "cli_report_out.txt";
    std::ostringstream report, diag;
    REQUIRE(run(cfg, report, diag) == 0);
    CHECK(report.str().empty());  // went to the file instead
    std::ifstream in(cfg.out, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("report: verify-shift-lemma\n") == 0);

    RunConfig bad_out = cfg;
    bad_out.out = "/nonexistent-dir/report.txt";
    CHECK(run_config(bad_out).code == 2);
}
