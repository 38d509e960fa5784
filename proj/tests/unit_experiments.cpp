#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>

#include "oracles.hpp"
#include "starsec/experiments.hpp"
#include "starsec/validation.hpp"

using namespace starsec;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() /
                       ("starsec_units_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Data rows of a CSV: '#' metadata stripped, first remaining row is the header.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const fs::path& p) {
    Csv csv;
    std::istringstream in(slurp(p));
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            csv.header = cells;
            have_header = true;
            continue;
        }
        std::vector<double> vals;
        for (const std::string& c : cells) vals.push_back(std::stod(c));
        csv.rows.push_back(vals);
    }
    return csv;
}

int column_of(const Csv& csv, const std::string& name) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
        if (csv.header[i] == name) return static_cast<int>(i);
    return -1;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CLI_BIN) + " " + args;
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

SweepSpec small_sweep() {
    SweepSpec spec;
    spec.variable = SweepVariable::PsDbm;
    spec.values = {10.0, 25.0};
    spec.outputs = {"wssr", "r_sec_sum"};
    return spec;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("sweep CSVs carry metadata, a header, and one row per value") {
    const fs::path dir = temp_dir("basic");
    const ScenarioConfig cfg = oracle::make_baseline();
    const auto paths = run_sweep(cfg, small_sweep(), false, dir);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].filename().string() == "sweep_ps_dbm.csv");

    const std::string text = slurp(paths[0]);
    CHECK(text.rfind("# starsec 0.1.0\n", 0) == 0);
    CHECK(text.find("# [nodes]") != std::string::npos);
    CHECK(text.find("# [power]") != std::string::npos);

    const Csv csv = parse_csv(paths[0]);
    REQUIRE(csv.header.size() == 3);
    CHECK(csv.header[0] == "ps_dbm");
    CHECK(csv.header[1] == "wssr");
    CHECK(csv.header[2] == "r_sec_sum");
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][0] == 10.0);
    CHECK(csv.rows[1][0] == 25.0);

    // The rows restate the analytic reports at 9 significant digits.
    ScenarioConfig point = cfg;
    point.power.ps_dbm = 25.0;
    const SecrecyReport rep = mean_secrecy_report(point, point.uav, point.power.zeta);
    CHECK(csv.rows[1][1] == doctest::Approx(rep.wssr).epsilon(1e-8));
    CHECK(csv.rows[1][2] == doctest::Approx(rep.r_sec_sum).epsilon(1e-8));
}

TEST_CASE("sweep output is byte-stable across runs") {
    const fs::path a = temp_dir("stable_a");
    const fs::path b = temp_dir("stable_b");
    ScenarioConfig cfg = oracle::make_baseline();
    cfg.mc.trials = 2000;  // keep the MC columns cheap
    SweepSpec spec = small_sweep();
    spec.outputs = {"wssr"};
    const auto pa = run_sweep(cfg, spec, true, a);
    const auto pb = run_sweep(cfg, spec, true, b);
    REQUIRE(pa.size() == 1);
    REQUIRE(pb.size() == 1);
    CHECK(slurp(pa[0]) == slurp(pb[0]));

    const Csv csv = parse_csv(pa[0]);
    REQUIRE(csv.header.size() == 4);
    CHECK(csv.header[2] == "mc_wssr_mean");
    CHECK(csv.header[3] == "mc_wssr_se");
    for (const auto& row : csv.rows) {
        CHECK(row[3] > 0.0);                      // a real standard error
        CHECK(std::abs(row[1] - row[2]) < 0.8);   // same quantity, coarse agreement
    }
}

TEST_CASE("family lists fan out into one CSV each") {
    const fs::path dir = temp_dir("family");
    const ScenarioConfig cfg = oracle::make_baseline();
    SweepSpec spec = small_sweep();
    spec.kappas = {10.0, 15.0, 20.0};
    const auto paths = run_sweep(cfg, spec, false, dir);
    REQUIRE(paths.size() == 3);
    CHECK(paths[0].filename().string() == "sweep_ps_dbm_kappa10.csv");
    CHECK(paths[1].filename().string() == "sweep_ps_dbm_kappa15.csv");
    CHECK(paths[2].filename().string() == "sweep_ps_dbm_kappa20.csv");
    for (const auto& p : paths) CHECK(fs::exists(p));

    // Tighter phase alignment means a better secrecy sum, pointwise.
    const Csv k10 = parse_csv(paths[0]);
    const Csv k20 = parse_csv(paths[2]);
    const int col = column_of(k10, "r_sec_sum");
    REQUIRE(col >= 0);
    for (std::size_t i = 0; i < k10.rows.size(); ++i)
        CHECK(k20.rows[i][col] >= k10.rows[i][col] - 1e-9);

    // A family that matches the swept variable is ignored, not duplicated.
    SweepSpec zeta_spec;
    zeta_spec.variable = SweepVariable::Zeta;
    zeta_spec.values = {0.2, 0.4};
    zeta_spec.outputs = {"wssr"};
    zeta_spec.powers_dbm = {10.0, 15.0};
    const auto zp = run_sweep(cfg, zeta_spec, false, dir);
    REQUIRE(zp.size() == 2);
    CHECK(zp[0].filename().string() == "sweep_zeta_ps10.csv");
    CHECK(zp[1].filename().string() == "sweep_zeta_ps15.csv");
}

TEST_CASE("the reference power sweep emits eleven rows") {
    const fs::path dir = temp_dir("reference");
    const ScenarioConfig cfg = load_config(SCENARIO_DIR "/baseline.cfg");
    REQUIRE(cfg.sweep.has_value());
    SweepSpec spec = *cfg.sweep;
    spec.kappas.clear();  // one file is enough here
    const auto paths = run_sweep(cfg, spec, false, dir);
    REQUIRE(paths.size() == 1);
    const Csv csv = parse_csv(paths[0]);
    CHECK(csv.header.size() == 9);  // variable + 8 outputs
    CHECK(csv.rows.size() == 11);
    // Reflect-side secrecy keeps rising with power; transmit-side saturates.
    const int rr = column_of(csv, "r_sec_r");
    REQUIRE(rr >= 0);
    for (std::size_t i = 1; i < csv.rows.size(); ++i)
        CHECK(csv.rows[i][rr] >= csv.rows[i - 1][rr] - 1e-9);
}

TEST_CASE("a zeta sweep exposes the interior optimum") {
    const fs::path dir = temp_dir("zeta");
    const ScenarioConfig cfg = oracle::make_baseline();
    SweepSpec spec;
    spec.variable = SweepVariable::Zeta;
    for (int i = 0; i <= 20; ++i) spec.values.push_back(0.05 * i);
    spec.outputs = {"wssr"};
    const auto paths = run_sweep(cfg, spec, false, dir);
    const Csv csv = parse_csv(paths[0]);
    REQUIRE(csv.rows.size() == 21);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < csv.rows.size(); ++i)
        if (csv.rows[i][1] > csv.rows[arg][1]) arg = i;
    CHECK(arg > 0);
    CHECK(arg < csv.rows.size() - 1);
    CHECK(csv.rows[arg][0] > 0.25);
    CHECK(csv.rows[arg][0] < 0.5);
    CHECK(csv.rows[arg][1] > 3.1);
}

TEST_CASE("element sweeps are monotone per power family") {
    const fs::path dir = temp_dir("elements");
    const ScenarioConfig cfg = oracle::make_baseline();
    SweepSpec spec;
    spec.variable = SweepVariable::M;
    for (int m = 10; m <= 100; m += 10) spec.values.push_back(m);
    spec.outputs = {"r_sec_sum"};
    spec.powers_dbm = {10.0, 15.0};
    const auto paths = run_sweep(cfg, spec, false, dir);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].filename().string() == "sweep_elements_ps10.csv");
    for (const auto& p : paths) {
        const Csv csv = parse_csv(p);
        REQUIRE(csv.rows.size() == 10);
        for (std::size_t i = 1; i < csv.rows.size(); ++i)
            CHECK(csv.rows[i][1] >= csv.rows[i - 1][1] - 1e-9);
    }
}

TEST_CASE("optimize artifacts restate the optimizer result") {
    const fs::path dir = temp_dir("optimize");
    const ScenarioConfig cfg = oracle::make_baseline();
    SearchBox box;
    box.x_min = box.x_max = 0.5;
    box.y_min = box.y_max = 0.5;
    box.z_min = box.z_max = 10.0;
    box.step = 1.0;
    OptimizerSettings settings;  // defaults carry the reference weights

    const OptimizeArtifacts art = run_optimize(cfg, box, settings, dir);
    CHECK(art.trace_csv.filename().string() == "optimize_trace.csv");
    CHECK(art.summary_csv.filename().string() == "optimize_summary.csv");

    const Csv trace = parse_csv(art.trace_csv);
    REQUIRE(trace.header.size() == 2);
    CHECK(trace.header[0] == "round");
    CHECK(trace.header[1] == "wssr");
    REQUIRE(trace.rows.size() == art.result.trace.size());
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
        CHECK(trace.rows[i][1] >= trace.rows[i - 1][1]);

    const Csv summary = parse_csv(art.summary_csv);
    REQUIRE(summary.rows.size() == 1);
    const auto& row = summary.rows[0];
    CHECK(row[0] == 0.5);
    CHECK(row[1] == 0.5);
    CHECK(row[2] == 10.0);
    CHECK(row[3] == doctest::Approx(art.result.zeta_star).epsilon(1e-8));
    CHECK(row[4] == doctest::Approx(art.result.wssr_star).epsilon(1e-8));
    CHECK(row[5] == art.result.iterations);

    // The reported optimum recomputes from the public objective.
    CHECK(art.result.wssr_star ==
          doctest::Approx(wssr_objective(cfg, art.result.uav_star,
                                         art.result.zeta_star, settings.w1,
                                         settings.w2))
              .epsilon(1e-12));
}

TEST_CASE("a corrupted distribution fit is caught by the fit check") {
    ScenarioConfig cfg = oracle::make_baseline();
    ValidationHooks honest;
    ValidationHooks corrupted;
    corrupted.omega_scale = 2.0;

    const ValidationReport good = run_validate_criterion(cfg, 3, honest);
    const ValidationReport bad = run_validate_criterion(cfg, 3, corrupted);
    REQUIRE(good.checks.size() == bad.checks.size());
    REQUIRE(!good.checks.empty());

    // Honest configuration: the large-M fit passes.
    bool large_m_pass = false;
    for (const auto& c : good.checks)
        if (c.name.find("64") != std::string::npos && c.pass) large_m_pass = true;
    CHECK(large_m_pass);

    // Doubling the fitted spread must break every fit comparison.
    for (const auto& c : bad.checks) CHECK(!c.pass);
    CHECK(!bad.all_pass());
}

TEST_CASE("criterion selection is bounds-checked") {
    const ScenarioConfig cfg = oracle::make_baseline();
    CHECK_THROWS_AS(run_validate_criterion(cfg, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_validate_criterion(cfg, 10, {}), std::invalid_argument);
}

TEST_CASE("command line: version, config echo, and error codes") {
    const fs::path dir = temp_dir("cli");

    CHECK(run_cli("--version > /dev/null 2>&1") == 0);
    CHECK(run_cli("--bogus-flag > /dev/null 2>&1") == 2);
    CHECK(run_cli("> /dev/null 2>&1") == 2);  // a subcommand is required

    const fs::path echo = dir / "resolved.cfg";
    CHECK(run_cli("show-config --config " SCENARIO_DIR "/baseline.cfg > " +
                  echo.string() + " 2>/dev/null") == 0);
    const std::string text = slurp(echo);
    CHECK(text.rfind("[nodes]", 0) == 0);
    CHECK(text.find("seed = 20260818") != std::string::npos);
    // The echoed form parses back to the same canonical text.
    const ScenarioConfig back = load_config_text(text, "echo");
    CHECK(serialize_config(back) == text);

    CHECK(run_cli("show-config --config /nonexistent.cfg > /dev/null 2>&1") == 3);

    // A config whose zeta is out of range dies with the config exit code.
    const fs::path broken = dir / "broken.cfg";
    {
        std::ofstream out(broken);
        out << "[nodes]\nbs = [0, 0, 5]\n";
    }
    CHECK(run_cli("show-config --config " + broken.string() + " > /dev/null 2>&1") == 2);
}

TEST_CASE("command line: sweep and optimize round trips") {
    const fs::path dir = temp_dir("cli_run");
    ScenarioConfig cfg = oracle::make_baseline();
    cfg.mc.trials = 2000;

    SweepSpec spec = small_sweep();
    spec.outputs = {"wssr"};
    cfg.sweep = spec;

    OptimizeSpec opt;
    opt.box.x_min = opt.box.x_max = 0.5;
    opt.box.y_min = opt.box.y_max = 0.5;
    opt.box.z_min = opt.box.z_max = 10.0;
    opt.box.step = 1.0;
    cfg.optimize = opt;

    const fs::path cfg_path = dir / "scenario.cfg";
    {
        std::ofstream out(cfg_path);
        out << serialize_config(cfg);
    }

    const fs::path out_a = dir / "a";
    CHECK(run_cli("sweep --config " + cfg_path.string() + " --out " + out_a.string() +
                  " > /dev/null 2>&1") == 0);
    CHECK(fs::exists(out_a / "sweep_ps_dbm.csv"));

    const fs::path out_b = dir / "b";
    CHECK(run_cli("optimize --config " + cfg_path.string() + " --out " +
                  out_b.string() + " > /dev/null 2>&1") == 0);
    CHECK(fs::exists(out_b / "optimize_trace.csv"));
    CHECK(fs::exists(out_b / "optimize_summary.csv"));

    // A sweep verb without a [sweep] section is a config error.
    ScenarioConfig bare = oracle::make_baseline();
    const fs::path bare_path = dir / "bare.cfg";
    {
        std::ofstream out(bare_path);
        out << serialize_config(bare);
    }
    CHECK(run_cli("sweep --config " + bare_path.string() + " --out " + out_a.string() +
                  " > /dev/null 2>&1") == 2);
    CHECK(run_cli("optimize --config " + bare_path.string() + " --out " +
                  out_a.string() + " > /dev/null 2>&1") == 2);
}

}  // TEST_SUITE
