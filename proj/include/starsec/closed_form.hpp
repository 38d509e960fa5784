#pragma once

#include <cstddef>

#include "starsec/geometry.hpp"
#include "starsec/quadrature.hpp"
#include "starsec/rf_stats.hpp"

namespace starsec {

struct ScenarioConfig;

struct PowerConfig {
    double ps_dbm = 20.0;
    double n0_dbm = -100.0;
    double rho = 0.3;       // NOMA power fraction routed to the reflect user
    double zeta = 0.2;      // STAR-RIS reflect energy fraction; transmit side gets 1 - zeta
    double alpha_pl = 2.0;  // path-loss exponent
};

// Deterministic SNR scale factors. k1/k2 use the user distances, k1p/k2p the
// eavesdropper distances. The interference constants are k1 evaluated at the
// transmit-side receiver's own distance: both NOMA components traverse one
// cascaded channel per receiver.
struct SnrConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double k1p = 0.0;
    double k2p = 0.0;
    double k_int_user_t = 0.0;
    double k_int_eve_t = 0.0;
};

struct SecrecyReport {
    double c_user_r = 0.0;
    double c_eve_r = 0.0;
    double c_user_t = 0.0;
    double c_eve_t = 0.0;
    double r_sec_r = 0.0;   // [c_user_r - c_eve_r]+
    double r_sec_t = 0.0;   // [c_user_t - c_eve_t]+
    double r_sec_sum = 0.0;
    double wssr = 0.0;      // w1 * r_sec_t + w2 * r_sec_r
};

SnrConstants snr_constants(const PowerConfig& power, const LinkDistances& dists);

double capacity_reflect(const GammaChannelParams& params, double k_sig,
                        const QuadRule& rule);

double capacity_transmit(const GammaChannelParams& params, double k_sig,
                         double k_int, const QuadRule& rule);

// Clamps each region's secrecy rate before weighting.
SecrecyReport assemble_report(double c_user_r, double c_eve_r, double c_user_t,
                              double c_eve_t, double w1, double w2);

// Full analytic report for one NOMA pair at the given UAV position and
// reflect fraction; zeta overrides the config value for this evaluation.
SecrecyReport secrecy_report(const ScenarioConfig& cfg, const Position3D& uav,
                             double zeta, std::size_t pair = 0);

// Per-pair means of every report field. Clamps and weights apply per pair
// before averaging, so the aggregate wssr is the mean of per-pair wssr values.
SecrecyReport mean_secrecy_report(const ScenarioConfig& cfg, const Position3D& uav,
                                  double zeta);

// Mean per-pair WSSR under explicit weights; the optimizer objective.
double wssr_objective(const ScenarioConfig& cfg, const Position3D& uav,
                      double zeta, double w1, double w2);

}  // namespace starsec
