#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "starsec/experiments.hpp"
#include "starsec/scenario.hpp"
#include "starsec/validation.hpp"
#include "starsec/version.hpp"

namespace fs = std::filesystem;
using namespace starsec;

namespace {

// Exit codes: 0 success, 1 validation check failure, 2 configuration or usage
// error, 3 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string eve_model;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_overrides) {
    cmd->add_option("--config", args.config_path, "scenario file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: out)");
    if (with_overrides) {
        cmd->add_option("--seed", args.seed, "override mc seed");
        cmd->add_option("--trials", args.trials, "override mc trial count");
        cmd->add_option("--eve-model", args.eve_model,
                        "override eve phase model: exact or approx");
    }
}

ScenarioConfig load_with_overrides(const CommonArgs& args) {
    ScenarioConfig cfg = load_config(args.config_path);
    if (args.seed) cfg.mc.seed = *args.seed;
    if (args.trials) {
        if (*args.trials < 1) throw ConfigError("--trials must be >= 1");
        cfg.mc.trials = *args.trials;
    }
    if (!args.eve_model.empty()) {
        if (args.eve_model == "exact")
            cfg.mc.eve_phase_model = EvePhaseModel::ExactUniform;
        else if (args.eve_model == "approx")
            cfg.mc.eve_phase_model = EvePhaseModel::WrappedNormalApprox;
        else
            throw ConfigError("--eve-model must be 'exact' or 'approx', got '" +
                              args.eve_model + "'");
    }
    return cfg;
}

int cmd_sweep(const CommonArgs& args, bool with_mc) {
    const ScenarioConfig cfg = load_with_overrides(args);
    if (!cfg.sweep)
        throw ConfigError(args.config_path + ": sweep needs a [sweep] section");
    const auto files = run_sweep(cfg, *cfg.sweep, with_mc, args.out_dir);
    for (const fs::path& f : files) std::cout << f.string() << "\n";
    return kExitOk;
}

int cmd_optimize(const CommonArgs& args) {
    const ScenarioConfig cfg = load_with_overrides(args);
    if (!cfg.optimize)
        throw ConfigError(args.config_path + ": optimize needs an [optimize] section");
    const OptimizeArtifacts art =
        run_optimize(cfg, cfg.optimize->box, cfg.optimize->settings, args.out_dir);
    std::cout << "uav_star = (" << art.result.uav_star.x << ", "
              << art.result.uav_star.y << ", " << art.result.uav_star.z << ")\n"
              << "zeta_star = " << art.result.zeta_star << "\n"
              << "wssr_star = " << art.result.wssr_star << "\n"
              << "rounds = " << art.result.iterations << "\n"
              << art.trace_csv.string() << "\n"
              << art.summary_csv.string() << "\n";
    return kExitOk;
}

int cmd_validate(const CommonArgs& args) {
    const ScenarioConfig cfg = load_with_overrides(args);
    const ValidationReport report = run_validate(cfg);
    const std::string text = format_report(report);
    std::cout << text;
    int passed = 0;
    for (const CheckResult& c : report.checks) passed += c.pass ? 1 : 0;
    std::cout << passed << " of " << report.checks.size() << " checks passed\n";

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + args.out_dir);
    const fs::path report_path = fs::path(args.out_dir) / "validate_report.txt";
    std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + report_path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + report_path.string());

    return report.all_pass() ? kExitOk : kExitValidationFailed;
}

int cmd_show_config(const CommonArgs& args) {
    const ScenarioConfig cfg = load_with_overrides(args);
    std::cout << serialize_config(cfg);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy-rate analysis for a UAV-mounted dual-sided "
                 "reconfigurable surface downlink"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    CommonArgs sweep_args, optimize_args, validate_args, show_args;
    bool with_mc = false;

    CLI::App* sweep = app.add_subcommand("sweep", "run the configured sweep, one csv "
                                                  "per family value");
    add_common(sweep, sweep_args, true);
    sweep->add_flag("--with-mc", with_mc, "append monte carlo mean/se columns");

    CLI::App* optimize =
        app.add_subcommand("optimize", "alternate position and power-split search");
    add_common(optimize, optimize_args, false);

    CLI::App* validate =
        app.add_subcommand("validate", "run every acceptance check and write a report");
    add_common(validate, validate_args, true);

    CLI::App* show = app.add_subcommand("show-config", "print the resolved config");
    show->add_option("--config", show_args.config_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(sweep_args, with_mc);
        if (optimize->parsed()) return cmd_optimize(optimize_args);
        if (validate->parsed()) return cmd_validate(validate_args);
        if (show->parsed()) return cmd_show_config(show_args);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
