#include "starsec/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "starsec/closed_form.hpp"
#include "starsec/scenario.hpp"

namespace starsec {

namespace {

// lo:step:hi with a hair of slack so hi survives accumulated rounding.
std::vector<double> axis_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    const double limit = hi + step * 1e-9;
    for (double v = lo; v <= limit; v += step) grid.push_back(v);
    return grid;
}

void check_box(const SearchBox& box) {
    if (!(box.step > 0.0))
        throw std::invalid_argument("optimizer: box step must be > 0");
    if (box.x_min > box.x_max || box.y_min > box.y_max || box.z_min > box.z_max)
        throw std::invalid_argument("optimizer: box min exceeds max");
}

void check_settings(const OptimizerSettings& s) {
    if (!(s.eps_position > 0.0) || !(s.eps_zeta > 0.0))
        throw std::invalid_argument("optimizer: tolerances must be > 0");
    if (s.k_max < 1 || s.n_max_gss < 1)
        throw std::invalid_argument("optimizer: iteration caps must be >= 1");
    if (!(s.w1 < s.w2))
        throw std::invalid_argument("optimizer: w1 must be < w2");
    if (std::abs(s.w1 + s.w2 - 1.0) > 1e-12)
        throw std::invalid_argument("optimizer: w1 + w2 must equal 1");
}

}  // namespace

Position3D grid_search_uav(const ScenarioConfig& cfg, double zeta, const SearchBox& box,
                           const OptimizerSettings& settings,
                           const PositionObjective& objective) {
    check_box(box);
    check_settings(settings);
    const PositionObjective f = objective
        ? objective
        : PositionObjective([&cfg, &settings, zeta](const Position3D& p) {
              return wssr_objective(cfg, p, zeta, settings.w1, settings.w2);
          });

    const std::vector<double> xs = axis_grid(box.x_min, box.x_max, box.step);
    const std::vector<double> ys = axis_grid(box.y_min, box.y_max, box.step);
    const std::vector<double> zs = axis_grid(box.z_min, box.z_max, box.step);

    Position3D pos{xs.front(), ys.front(), zs.front()};
    double best = f(pos);

    // One coordinate at a time, taking the argmax over the whole axis grid.
    // Strict comparison keeps the first maximizer, so exact ties resolve to
    // the smallest coordinate and the walk is deterministic.
    auto sweep_axis = [&](const std::vector<double>& grid, double Position3D::*coord) {
        Position3D probe = pos;
        double axis_best = -std::numeric_limits<double>::infinity();
        double axis_arg = grid.front();
        for (double v : grid) {
            probe.*coord = v;
            const double val = f(probe);
            if (val > axis_best) {
                axis_best = val;
                axis_arg = v;
            }
        }
        pos.*coord = axis_arg;
        best = axis_best;
    };

    for (int k = 0; k < settings.k_max; ++k) {
        const Position3D before = pos;
        sweep_axis(zs, &Position3D::z);
        sweep_axis(xs, &Position3D::x);
        sweep_axis(ys, &Position3D::y);
        if (distance(before, pos) < settings.eps_position) break;
    }
    return pos;
}

double gss_zeta(const ScalarObjective& objective, const OptimizerSettings& settings) {
    check_settings(settings);
    if (!objective) throw std::invalid_argument("gss_zeta: objective must be callable");
    constexpr double phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double a = 0.0, b = 1.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int n = 0; n < settings.n_max_gss && (b - a) > settings.eps_zeta; ++n) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        }
    }
    return 0.5 * (a + b);
}

OptResult alternating_optimize(const ScenarioConfig& cfg, const SearchBox& box,
                               const OptimizerSettings& settings) {
    check_box(box);
    check_settings(settings);
    const auto value = [&](const Position3D& p, double z) {
        return wssr_objective(cfg, p, z, settings.w1, settings.w2);
    };

    OptResult res;
    res.uav_star = Position3D{box.x_min, box.y_min, box.z_min};
    res.zeta_star = cfg.power.zeta;
    res.wssr_star = value(res.uav_star, res.zeta_star);
    res.trace.emplace_back(0, res.wssr_star);

    for (int k = 1; k <= settings.k_max; ++k) {
        const double prev = res.wssr_star;

        // Sub-steps are accepted only on strict improvement, so the trace is
        // nondecreasing by construction.
        const Position3D pos = grid_search_uav(cfg, res.zeta_star, box, settings);
        const double pos_val = value(pos, res.zeta_star);
        if (pos_val > res.wssr_star) {
            res.uav_star = pos;
            res.wssr_star = pos_val;
        }

        const double zeta = gss_zeta(
            [&](double z) { return value(res.uav_star, z); }, settings);
        const double zeta_val = value(res.uav_star, zeta);
        if (zeta_val > res.wssr_star) {
            res.zeta_star = zeta;
            res.wssr_star = zeta_val;
        }

        res.iterations = k;
        res.trace.emplace_back(k, res.wssr_star);
        if (res.wssr_star - prev < settings.eps_position) break;
    }
    return res;
}

}  // namespace starsec
