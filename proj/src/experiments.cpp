#include "starsec/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "starsec/closed_form.hpp"
#include "starsec/monte_carlo.hpp"
#include "starsec/version.hpp"

namespace starsec {

namespace fs = std::filesystem;

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// %g with enough digits to tell family values apart in filenames.
std::string fmt_tag(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string metadata(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "# " << kToolName << " " << kVersion << "\n";
    std::istringstream lines(serialize_config(cfg));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty())
            out << "#\n";
        else
            out << "# " << line << "\n";
    }
    return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

ScenarioConfig with_variable(ScenarioConfig cfg, SweepVariable var, double v) {
    switch (var) {
        case SweepVariable::PsDbm: cfg.power.ps_dbm = v; break;
        case SweepVariable::M: cfg.elements = static_cast<int>(v); break;
        case SweepVariable::Kappa: cfg.phase.kappa = v; break;
        case SweepVariable::Zeta: cfg.power.zeta = v; break;
    }
    return cfg;
}

double report_metric(const SecrecyReport& rep, const std::string& name) {
    if (name == "c_user_r") return rep.c_user_r;
    if (name == "c_eve_r") return rep.c_eve_r;
    if (name == "c_user_t") return rep.c_user_t;
    if (name == "c_eve_t") return rep.c_eve_t;
    if (name == "r_sec_r") return rep.r_sec_r;
    if (name == "r_sec_t") return rep.r_sec_t;
    if (name == "r_sec_sum") return rep.r_sec_sum;
    if (name == "wssr") return rep.wssr;
    throw ConfigError("unknown output '" + name + "'");
}

Estimate mc_metric(const RateEstimates& est, const std::string& name, double w1,
                   double w2) {
    if (name == "c_user_r") return est.c_user_r;
    if (name == "c_eve_r") return est.c_eve_r;
    if (name == "c_user_t") return est.c_user_t;
    if (name == "c_eve_t") return est.c_eve_t;
    if (name == "r_sec_r") return est.r_sec_r;
    if (name == "r_sec_t") return est.r_sec_t;
    if (name == "r_sec_sum")
        return {est.r_sec_r.mean + est.r_sec_t.mean,
                std::hypot(est.r_sec_r.se, est.r_sec_t.se)};
    if (name == "wssr")
        return {w1 * est.r_sec_t.mean + w2 * est.r_sec_r.mean,
                std::hypot(w1 * est.r_sec_t.se, w2 * est.r_sec_r.se)};
    throw ConfigError("unknown output '" + name + "'");
}

fs::path sweep_csv(const ScenarioConfig& cfg, const SweepSpec& spec, bool with_mc,
                   const fs::path& out_dir, const std::string& suffix) {
    std::ostringstream body;
    body << metadata(cfg);
    body << to_string(spec.variable);
    for (const std::string& name : spec.outputs) body << "," << name;
    if (with_mc)
        for (const std::string& name : spec.outputs)
            body << ",mc_" << name << "_mean,mc_" << name << "_se";
    body << "\n";

    for (double v : spec.values) {
        const ScenarioConfig point = with_variable(cfg, spec.variable, v);
        const SecrecyReport rep =
            mean_secrecy_report(point, point.uav, point.power.zeta);
        body << fmt9(v);
        for (const std::string& name : spec.outputs)
            body << "," << fmt9(report_metric(rep, name));
        if (with_mc) {
            const RateEstimates est =
                simulate_rates(point, point.uav, point.power.zeta, point.mc);
            for (const std::string& name : spec.outputs) {
                const Estimate e = mc_metric(est, name, point.w1, point.w2);
                body << "," << fmt9(e.mean) << "," << fmt9(e.se);
            }
        }
        body << "\n";
    }

    const fs::path path =
        out_dir / ("sweep_" + std::string(to_string(spec.variable)) + suffix + ".csv");
    write_file(path, body.str());
    return path;
}

}  // namespace

std::vector<fs::path> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                                bool with_mc, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    // Family lists fan out into one CSV each; a family that coincides with the
    // swept variable is ignored.
    std::vector<std::optional<double>> kappas{std::nullopt};
    if (spec.variable != SweepVariable::Kappa && !spec.kappas.empty()) {
        kappas.clear();
        for (double k : spec.kappas) kappas.emplace_back(k);
    }
    std::vector<std::optional<double>> powers{std::nullopt};
    if (spec.variable != SweepVariable::PsDbm && !spec.powers_dbm.empty()) {
        powers.clear();
        for (double p : spec.powers_dbm) powers.emplace_back(p);
    }

    std::vector<fs::path> written;
    for (const auto& kappa : kappas) {
        for (const auto& power : powers) {
            ScenarioConfig family = cfg;
            std::string suffix;
            if (kappa) {
                family.phase.kappa = *kappa;
                suffix += "_kappa" + fmt_tag(*kappa);
            }
            if (power) {
                family.power.ps_dbm = *power;
                suffix += "_ps" + fmt_tag(*power);
            }
            written.push_back(sweep_csv(family, spec, with_mc, out_dir, suffix));
        }
    }
    return written;
}

OptimizeArtifacts run_optimize(const ScenarioConfig& cfg, const SearchBox& box,
                               const OptimizerSettings& settings,
                               const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    OptimizeArtifacts art;
    art.result = alternating_optimize(cfg, box, settings);

    std::ostringstream trace;
    trace << metadata(cfg);
    trace << "round,wssr\n";
    for (const auto& [round, wssr] : art.result.trace)
        trace << round << "," << fmt9(wssr) << "\n";
    art.trace_csv = out_dir / "optimize_trace.csv";
    write_file(art.trace_csv, trace.str());

    std::ostringstream summary;
    summary << metadata(cfg);
    summary << "x,y,z,zeta_star,wssr_star,rounds\n";
    summary << fmt9(art.result.uav_star.x) << "," << fmt9(art.result.uav_star.y) << ","
            << fmt9(art.result.uav_star.z) << "," << fmt9(art.result.zeta_star) << ","
            << fmt9(art.result.wssr_star) << "," << art.result.iterations << "\n";
    art.summary_csv = out_dir / "optimize_summary.csv";
    write_file(art.summary_csv, summary.str());
    return art;
}

}  // namespace starsec
