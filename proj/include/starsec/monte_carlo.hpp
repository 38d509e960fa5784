#pragma once

#include <cstdint>
#include <vector>

#include "starsec/geometry.hpp"
#include "starsec/rf_stats.hpp"
#include "starsec/rng.hpp"

namespace starsec {

struct ScenarioConfig;

// ExactUniform draws the eavesdropper's per-element phase as an independent
// uniform channel mismatch plus the von Mises error (the raw signal model);
// WrappedNormalApprox replaces it with a zero-mean normal of the effective
// phase variance.
enum class EvePhaseModel { WrappedNormalApprox, ExactUniform };

struct McSettings {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    EvePhaseModel eve_phase_model = EvePhaseModel::ExactUniform;
    unsigned threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0;
};

// Ergodic secrecy is the clamped difference of ergodic means,
// [E(R_user) - E(R_eve)]+, with the SE combined from both links. The _inst
// fields are the per-trial-clamped alternative E[(R_user - R_eve)+], exposed
// as a diagnostic only.
struct RateEstimates {
    Estimate c_user_r;
    Estimate c_eve_r;
    Estimate c_user_t;
    Estimate c_eve_t;
    Estimate r_sec_r;
    Estimate r_sec_t;
    double r_sec_r_inst = 0.0;
    double r_sec_t_inst = 0.0;
};

// Envelope of a Nakagami-m fade with E[sample^2] = omega, via the square root
// of a Gamma(m, omega/m) variate. Throws for m < 0.5 or omega <= 0.
double sample_nakagami(double m, double omega, Xoshiro256pp& rng);

// Best-Fisher acceptance-rejection; kappa below 1e-8 short-circuits to a
// uniform draw on (-pi, pi]. Throws for negative kappa.
double sample_vonmises(double kappa, Xoshiro256pp& rng);

// n samples of the cascaded user channel power X = |sum_i |h_i||g_i| e^{j phi_i}|^2
// with per-trial RNG substreams. Backs the distribution-fit checks.
std::vector<double> sample_cascade_power(int M, double m_bv, double m_vu,
                                         const PhaseErrorModel& model,
                                         std::size_t n, std::uint64_t seed);

// Brute-force oracle over the raw signal model. Per trial and per configured
// pair it draws M envelope pairs and M phase errors per link, forms the four
// cascaded powers, and averages the instantaneous rates over pairs; estimates
// are means over trials. Trials are processed in fixed 1024-trial blocks with
// a serial final reduction, so serial and parallel runs agree bit for bit.
RateEstimates simulate_rates(const ScenarioConfig& cfg, const Position3D& uav,
                             double zeta, const McSettings& mc);

}  // namespace starsec
