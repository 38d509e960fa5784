#include "starsec/validation.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/SpecialFunctions>

#include "starsec/closed_form.hpp"
#include "starsec/experiments.hpp"
#include "starsec/monte_carlo.hpp"
#include "starsec/optimizer.hpp"
#include "starsec/quadrature.hpp"
#include "starsec/rng.hpp"

namespace starsec {

namespace fs = std::filesystem;

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CheckResult make_check(int criterion, std::string name, double measured,
                       double tolerance, bool pass, std::string detail) {
    CheckResult c;
    c.criterion = criterion;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.pass = pass;
    c.detail = std::move(detail);
    return c;
}

OptimizerSettings effective_settings(const ScenarioConfig& cfg) {
    OptimizerSettings s = cfg.optimize ? cfg.optimize->settings : OptimizerSettings{};
    s.w1 = cfg.w1;
    s.w2 = cfg.w2;
    return s;
}

SearchBox effective_box(const ScenarioConfig& cfg) {
    return cfg.optimize ? cfg.optimize->box : SearchBox{};
}

// ---- criterion 1: closed-form user capacities against the raw-model MC ----

void check_user_capacity_agreement(const ScenarioConfig& cfg,
                                   std::vector<CheckResult>& out) {
    for (double ps : {10.0, 20.0, 30.0}) {
        ScenarioConfig point = cfg;
        point.power.ps_dbm = ps;
        const SecrecyReport rep =
            mean_secrecy_report(point, point.uav, point.power.zeta);
        const RateEstimates est =
            simulate_rates(point, point.uav, point.power.zeta, point.mc);
        const struct {
            const char* name;
            double cf;
            Estimate mc;
        } rows[] = {{"reflect user capacity", rep.c_user_r, est.c_user_r},
                    {"transmit user capacity", rep.c_user_t, est.c_user_t}};
        for (const auto& row : rows) {
            const double denom = std::abs(row.mc.mean);
            const double rel = std::abs(row.cf - row.mc.mean) / denom;
            const double tol = std::max(0.02, 3.0 * row.mc.se / denom);
            out.push_back(make_check(
                1, std::string(row.name) + " vs mc (ps=" + fmt6(ps) + " dBm)", rel,
                tol, rel <= tol,
                "closed-form " + fmt6(row.cf) + " vs mc " + fmt6(row.mc.mean) +
                    " +- " + fmt6(row.mc.se)));
        }
    }
}

// ---- criterion 2: the eavesdropper capacity approximation ----

void check_eve_capacity_agreement(const ScenarioConfig& cfg,
                                  std::vector<CheckResult>& out) {
    for (double kappa : {10.0, 20.0}) {
        ScenarioConfig point = cfg;
        point.phase.kappa = kappa;
        point.mc.eve_phase_model = EvePhaseModel::ExactUniform;
        const SecrecyReport rep =
            mean_secrecy_report(point, point.uav, point.power.zeta);
        const RateEstimates est =
            simulate_rates(point, point.uav, point.power.zeta, point.mc);
        const struct {
            const char* name;
            double cf;
            Estimate mc;
        } rows[] = {{"reflect eve capacity", rep.c_eve_r, est.c_eve_r},
                    {"transmit eve capacity", rep.c_eve_t, est.c_eve_t}};
        for (const auto& row : rows) {
            const double rel =
                std::abs(row.cf - row.mc.mean) / std::abs(row.mc.mean);
            out.push_back(make_check(
                2, std::string(row.name) + " vs mc (kappa=" + fmt6(kappa) + ")", rel,
                0.10, rel <= 0.10,
                "closed-form " + fmt6(row.cf) + " vs mc " + fmt6(row.mc.mean) +
                    " +- " + fmt6(row.mc.se)));
        }
    }
}

// ---- criterion 3: gamma fit of the cascaded user channel power ----

double ks_distance_gamma(std::vector<double> samples, double shape, double scale) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = Eigen::numext::igamma(shape, samples[i] / scale);
        const double hi = (static_cast<double>(i) + 1.0) / n;
        const double lo = static_cast<double>(i) / n;
        ks = std::max({ks, std::abs(f - hi), std::abs(f - lo)});
    }
    return ks;
}

void check_gamma_fit(const ScenarioConfig& cfg, const ValidationHooks& hooks,
                     std::vector<CheckResult>& out) {
    for (int m_elems : {16, 64}) {
        GammaChannelParams params = user_gamma_params(m_elems, cfg.fading.m_bv,
                                                      cfg.fading.m_vu_r, cfg.phase);
        const double spread = params.spread * hooks.omega_scale;
        const std::vector<double> samples =
            sample_cascade_power(m_elems, cfg.fading.m_bv, cfg.fading.m_vu_r,
                                 cfg.phase, cfg.mc.trials, cfg.mc.seed);
        const double ks =
            ks_distance_gamma(samples, params.shape, spread / params.shape);
        out.push_back(make_check(
            3, "cascade power gamma fit KS (M=" + std::to_string(m_elems) + ")", ks,
            0.02, ks < 0.02,
            "shape " + fmt6(params.shape) + ", mean " + fmt6(spread) + ", " +
                std::to_string(samples.size()) + " samples"));
    }
}

// ---- criterion 4: quadrature reference value and order stability ----

void check_quadrature(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    (void)cfg;
    // exp(1) * E1(1) / ln 2: the unit-mean exponential channel at unit SNR.
    const double reference = 0.86034738227088595;
    GammaChannelParams unit;
    unit.shape = 1.0;
    unit.spread = 1.0;
    const double got = mgf_capacity(unit, 1.0, 0.0, shared_rule(64));
    const double err = std::abs(got - reference);
    out.push_back(make_check(4, "exponential channel capacity reference", err, 1e-6,
                             err < 1e-6, "computed " + fmt6(got)));

    // Random sweep over the operating envelope: shape in [0.01, 30], mean/shape
    // ratio in [0.1, 10], k*t in [1e-4, 0.2], every other point with an
    // interference constant between 5% and 50% of the signal constant.
    const QuadRule& coarse = shared_rule(50);
    const QuadRule& fine = shared_rule(100);
    Xoshiro256pp rng(424242);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double shape = std::exp(rng.uniform(std::log(0.01), std::log(30.0)));
        const double t = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
        const double kt = std::exp(rng.uniform(std::log(1e-4), std::log(0.2)));
        const double k_sig = kt / t;
        const double k_int = (i % 2 == 1) ? rng.uniform(0.05, 0.5) * k_sig : 0.0;
        GammaChannelParams p;
        p.shape = shape;
        p.spread = shape * t;
        const double diff = std::abs(mgf_capacity(p, k_sig, k_int, coarse) -
                                     mgf_capacity(p, k_sig, k_int, fine));
        worst = std::max(worst, diff);
    }
    out.push_back(make_check(4, "quadrature order stability (N=50 vs N=100)", worst,
                             1e-6, worst < 1e-6, "worst of 100 random points"));
}

// ---- criterion 5: response-curve shapes ----

std::vector<SecrecyReport> ps_curve(const ScenarioConfig& cfg, double lo, double hi,
                                    double step) {
    std::vector<SecrecyReport> curve;
    for (double ps = lo; ps <= hi + step * 1e-9; ps += step) {
        ScenarioConfig point = cfg;
        point.power.ps_dbm = ps;
        curve.push_back(mean_secrecy_report(point, point.uav, point.power.zeta));
    }
    return curve;
}

void check_curve_shapes(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    const std::vector<SecrecyReport> curve = ps_curve(cfg, 0.0, 50.0, 5.0);

    double max_drop = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        max_drop = std::max(max_drop, curve[i - 1].r_sec_r - curve[i].r_sec_r);
    out.push_back(make_check(5, "reflect secrecy nondecreasing in ps", max_drop, 1e-9,
                             max_drop <= 1e-9, "largest drop along 0..50 dBm"));

    std::size_t argmax = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].r_sec_t > curve[argmax].r_sec_t) argmax = i;
    const double decline = curve[argmax].r_sec_t - curve.back().r_sec_t;
    const bool interior = argmax != 0 && argmax != curve.size() - 1;
    out.push_back(make_check(
        5, "transmit secrecy peaks then declines over ps", decline, 0.0,
        interior && decline > 0.0,
        "peak at index " + std::to_string(argmax) + " of " +
            std::to_string(curve.size() - 1) + ", decline " + fmt6(decline)));

    double kappa_violation = 0.0;
    std::vector<std::vector<SecrecyReport>> kappa_curves;
    for (double kappa : {10.0, 15.0, 20.0}) {
        ScenarioConfig point = cfg;
        point.phase.kappa = kappa;
        kappa_curves.push_back(ps_curve(point, 0.0, 25.0, 5.0));
    }
    for (std::size_t k = 1; k < kappa_curves.size(); ++k)
        for (std::size_t i = 0; i < kappa_curves[k].size(); ++i)
            kappa_violation =
                std::max(kappa_violation, kappa_curves[k - 1][i].r_sec_sum -
                                              kappa_curves[k][i].r_sec_sum);
    out.push_back(make_check(
        5, "total secrecy nondecreasing in kappa (ps <= 25 dBm)", kappa_violation,
        1e-9, kappa_violation <= 1e-9, "kappa in {10, 15, 20}"));

    double m_violation = 0.0;
    for (double ps : {10.0, 15.0}) {
        double prev = -1.0;
        for (int m_elems = 10; m_elems <= 100; m_elems += 10) {
            ScenarioConfig point = cfg;
            point.power.ps_dbm = ps;
            point.elements = m_elems;
            const double sum =
                mean_secrecy_report(point, point.uav, point.power.zeta).r_sec_sum;
            if (prev >= 0.0) m_violation = std::max(m_violation, prev - sum);
            prev = sum;
        }
    }
    out.push_back(make_check(5, "total secrecy nondecreasing in elements (ps=10,15)",
                             m_violation, 1e-9, m_violation <= 1e-9,
                             "M from 10 to 100 step 10"));
}

// ---- criterion 6: the power-split line search ----

void check_zeta_search(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    const OptimizerSettings settings = effective_settings(cfg);
    const auto objective = [&](double zeta) {
        return wssr_objective(cfg, cfg.uav, zeta, cfg.w1, cfg.w2);
    };

    std::vector<double> values;
    values.reserve(1001);
    for (int i = 0; i <= 1000; ++i) values.push_back(objective(i * 1e-3));
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[argmax]) argmax = i;
    const double zeta_grid = static_cast<double>(argmax) * 1e-3;

    const double zeta_gss = gss_zeta(objective, settings);
    const double gap = std::abs(zeta_gss - zeta_grid);
    out.push_back(make_check(
        6, "golden-section zeta matches fine-grid maximizer", gap, 1e-2, gap <= 1e-2,
        "gss " + fmt6(zeta_gss) + " vs grid " + fmt6(zeta_grid)));

    int peaks = 0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) ++peaks;
    const bool interior = zeta_grid > 0.0 && zeta_grid < 0.5;
    out.push_back(make_check(
        6, "wssr vs zeta has one interior peak below 0.5", zeta_grid, 0.5,
        peaks == 1 && interior,
        std::to_string(peaks) + " local maxima, peak at zeta=" + fmt6(zeta_grid)));
}

// ---- criterion 7: the position search and the alternating loop ----

void check_position_search(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    const SearchBox box = effective_box(cfg);
    const OptimizerSettings settings = effective_settings(cfg);
    const double zeta = cfg.power.zeta;
    const auto objective = [&](const Position3D& p) {
        return wssr_objective(cfg, p, zeta, cfg.w1, cfg.w2);
    };

    Position3D exhaustive{box.x_min, box.y_min, box.z_min};
    double exhaustive_best = objective(exhaustive);
    for (double z = box.z_min; z <= box.z_max + box.step * 1e-9; z += box.step)
        for (double x = box.x_min; x <= box.x_max + box.step * 1e-9; x += box.step)
            for (double y = box.y_min; y <= box.y_max + box.step * 1e-9; y += box.step) {
                const Position3D p{x, y, z};
                const double v = objective(p);
                if (v > exhaustive_best) {
                    exhaustive_best = v;
                    exhaustive = p;
                }
            }

    const Position3D found = grid_search_uav(cfg, zeta, box, settings);
    const double found_val = objective(found);
    const double gap =
        std::max(std::abs(found_val - exhaustive_best), distance(found, exhaustive));
    out.push_back(make_check(
        7, "coordinate search matches exhaustive grid", gap, 1e-9, gap <= 1e-9,
        "found (" + fmt6(found.x) + ", " + fmt6(found.y) + ", " + fmt6(found.z) +
            ") value " + fmt6(found_val)));

    const OptResult res = alternating_optimize(cfg, box, settings);
    double max_drop = 0.0;
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        max_drop = std::max(max_drop, res.trace[i - 1].second - res.trace[i].second);
    out.push_back(make_check(7, "alternating optimize trace nondecreasing", max_drop,
                             0.0, max_drop <= 0.0,
                             std::to_string(res.trace.size()) + " trace points"));

    double last_gain = res.wssr_star;
    if (res.trace.size() >= 2)
        last_gain = res.trace.back().second - res.trace[res.trace.size() - 2].second;
    out.push_back(make_check(
        7, "alternating optimize converged before round cap", last_gain,
        settings.eps_position, last_gain < settings.eps_position,
        std::to_string(res.iterations) + " rounds of at most " +
            std::to_string(settings.k_max)));
}

// ---- criterion 8: weight-configuration comparison ----

void check_weight_ordering(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    const std::vector<SecrecyReport> curve = ps_curve(cfg, 0.0, 50.0, 5.0);
    int nonfinite = 0;
    int order_violations = 0;
    double identity_residual = 0.0;
    std::string table;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const SecrecyReport& rep = curve[i];
        const double biased = cfg.w1 * rep.r_sec_t + cfg.w2 * rep.r_sec_r;
        const double equal = 0.5 * rep.r_sec_t + 0.5 * rep.r_sec_r;
        if (!std::isfinite(biased) || !std::isfinite(equal)) ++nonfinite;
        const double predicted =
            (cfg.w1 - 0.5) * rep.r_sec_t + (cfg.w2 - 0.5) * rep.r_sec_r;
        identity_residual =
            std::max(identity_residual, std::abs((biased - equal) - predicted));
        if (rep.r_sec_r > rep.r_sec_t && !(biased > equal)) ++order_violations;
        if (i) table += " ";
        table += fmt6(biased) + "/" + fmt6(equal);
    }
    out.push_back(make_check(8, "weighted secrecy curves finite (biased and equal)",
                             nonfinite, 0.0, nonfinite == 0,
                             "biased/equal per ps step: " + table));
    out.push_back(make_check(
        8, "weight bias orders wssr by region gap", order_violations, 0.0,
        order_violations == 0 && identity_residual <= 1e-12,
        "identity residual " + fmt6(identity_residual)));
}

// ---- criterion 9: determinism ----

void check_determinism(const ScenarioConfig& cfg, std::vector<CheckResult>& out) {
    ScenarioConfig small = cfg;
    small.mc.trials = 2000;
    SweepSpec spec;
    spec.variable = SweepVariable::PsDbm;
    spec.values = {10.0, 25.0};
    spec.outputs = {"c_user_r", "c_eve_r", "c_user_t", "c_eve_t",
                    "r_sec_r",  "r_sec_t", "r_sec_sum", "wssr"};

    const fs::path base =
        fs::temp_directory_path() / ("starsec_validate_" + std::to_string(getpid()));
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    int mismatches = 0;
    std::string detail;
    try {
        const auto files_a = run_sweep(small, spec, true, dir_a);
        const auto files_b = run_sweep(small, spec, true, dir_b);
        if (files_a.size() != files_b.size()) {
            mismatches = 1;
            detail = "different file counts";
        }
        for (std::size_t i = 0; i < files_a.size() && i < files_b.size(); ++i) {
            std::ifstream a(files_a[i], std::ios::binary);
            std::ifstream b(files_b[i], std::ios::binary);
            std::stringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            if (sa.str() != sb.str()) ++mismatches;
        }
        if (detail.empty())
            detail = std::to_string(files_a.size()) + " csv files compared byte-wise";
    } catch (const std::exception& e) {
        mismatches = 1;
        detail = e.what();
    }
    std::error_code ec;
    fs::remove_all(base, ec);
    out.push_back(make_check(9, "repeated sweep emits identical csv bytes", mismatches,
                             0.0, mismatches == 0, detail));

    ScenarioConfig mid = cfg;
    mid.mc.trials = 20000;
    McSettings serial = mid.mc;
    serial.threads = 1;
    McSettings parallel = mid.mc;
    parallel.threads = 0;
    const RateEstimates a = simulate_rates(mid, mid.uav, mid.power.zeta, serial);
    const RateEstimates b = simulate_rates(mid, mid.uav, mid.power.zeta, parallel);
    const double diffs[] = {
        std::abs(a.c_user_r.mean - b.c_user_r.mean),
        std::abs(a.c_eve_r.mean - b.c_eve_r.mean),
        std::abs(a.c_user_t.mean - b.c_user_t.mean),
        std::abs(a.c_eve_t.mean - b.c_eve_t.mean),
        std::abs(a.r_sec_r.mean - b.r_sec_r.mean),
        std::abs(a.r_sec_t.mean - b.r_sec_t.mean),
        std::abs(a.r_sec_r_inst - b.r_sec_r_inst),
        std::abs(a.r_sec_t_inst - b.r_sec_t_inst)};
    const double worst = *std::max_element(std::begin(diffs), std::end(diffs));
    out.push_back(make_check(9, "serial and parallel mc agree", worst, 1e-10,
                             worst <= 1e-10, "20000 trials, all estimates compared"));
}

}  // namespace

ValidationReport run_validate_criterion(const ScenarioConfig& cfg, int criterion,
                                        const ValidationHooks& hooks) {
    ValidationReport report;
    switch (criterion) {
        case 1: check_user_capacity_agreement(cfg, report.checks); break;
        case 2: check_eve_capacity_agreement(cfg, report.checks); break;
        case 3: check_gamma_fit(cfg, hooks, report.checks); break;
        case 4: check_quadrature(cfg, report.checks); break;
        case 5: check_curve_shapes(cfg, report.checks); break;
        case 6: check_zeta_search(cfg, report.checks); break;
        case 7: check_position_search(cfg, report.checks); break;
        case 8: check_weight_ordering(cfg, report.checks); break;
        case 9: check_determinism(cfg, report.checks); break;
        default:
            throw std::invalid_argument("run_validate_criterion: criterion must be 1..9");
    }
    return report;
}

ValidationReport run_validate(const ScenarioConfig& cfg, const ValidationHooks& hooks) {
    ValidationReport report;
    for (int criterion = 1; criterion <= 9; ++criterion) {
        ValidationReport part = run_validate_criterion(cfg, criterion, hooks);
        report.checks.insert(report.checks.end(), part.checks.begin(),
                             part.checks.end());
    }
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream out;
    for (const CheckResult& c : report.checks) {
        out << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.criterion << ": "
            << c.name << " | measured " << fmt6(c.measured) << ", tolerance "
            << fmt6(c.tolerance);
        if (!c.detail.empty()) out << " | " << c.detail;
        out << "\n";
    }
    return out.str();
}

}  // namespace starsec
