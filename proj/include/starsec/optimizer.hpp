#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "starsec/geometry.hpp"

namespace starsec {

struct ScenarioConfig;

// Axis-aligned UAV search region with a uniform grid step. min == max
// collapses an axis to a single grid point.
struct SearchBox {
    double x_min = -2.0, x_max = 2.0;
    double y_min = -2.0, y_max = 2.0;
    double z_min = 8.0, z_max = 12.0;
    double step = 1.0;
};

struct OptimizerSettings {
    double eps_position = 1e-3;  // position-change and WSSR-improvement threshold
    int k_max = 50;              // sweep / outer-round cap
    double eps_zeta = 1e-4;      // golden-section interval tolerance
    int n_max_gss = 100;
    double w1 = 0.45;  // transmit-region weight; must satisfy w1 + w2 = 1, w1 < w2
    double w2 = 0.55;
};

struct OptResult {
    Position3D uav_star;
    double zeta_star = 0.0;
    double wssr_star = 0.0;
    int iterations = 0;
    std::vector<std::pair<int, double>> trace;  // (round, best WSSR); nondecreasing
};

using PositionObjective = std::function<double(const Position3D&)>;
using ScalarObjective = std::function<double(double)>;

// Coordinate descent over the grid, axes cycled z then x then y, starting at
// the minimum corner. Each axis sweep takes the argmax over the whole axis
// grid, ties resolved to the smallest coordinate. Stops when a full cycle
// moves the position by less than eps_position, or after k_max cycles.
// An empty objective defaults to the mean WSSR at the given zeta.
Position3D grid_search_uav(const ScenarioConfig& cfg, double zeta,
                           const SearchBox& box, const OptimizerSettings& settings,
                           const PositionObjective& objective = {});

// Golden-section search on [0, 1]: c = b - phi(b-a), d = a + phi(b-a) with
// phi = (sqrt(5)-1)/2. Runs until the bracket width is at most eps_zeta or
// n_max_gss shrink steps, then returns the bracket midpoint.
double gss_zeta(const ScalarObjective& objective, const OptimizerSettings& settings);

// Alternates the position grid search and the zeta golden-section search,
// accepting a sub-step only if it improves the WSSR (ties keep the
// incumbent). Stops when a round improves by less than eps_position or after
// k_max rounds. trace[0] is the WSSR at the initial point.
OptResult alternating_optimize(const ScenarioConfig& cfg, const SearchBox& box,
                               const OptimizerSettings& settings);

}  // namespace starsec
