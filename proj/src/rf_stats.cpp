#include "starsec/rf_stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starsec {

namespace {

constexpr double kSeriesSwitch = 30.0;  // power series below, asymptotic above
constexpr double kCoherenceFloor = 1e-12;

// I_p(x) by the ascending series. Largest magnitude at x = 30 is I_0(30),
// around 8e11, so no scaling is needed on this branch.
double bessel_i_series(int p, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= p; ++k) term *= half / static_cast<double>(k);
    double sum = term;
    const double q = half * half;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + p));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Asymptotic series of I_p(x) with the shared e^x / sqrt(2 pi x) factor
// dropped; only the ratio to the p = 0 series is ever used. Truncated at the
// smallest term, which sits below 1e-13 for x > 30 and p <= 4.
double bessel_asym_poly(int p, double x) {
    const double mu = 4.0 * static_cast<double>(p) * static_cast<double>(p);
    double term = 1.0;
    double sum = 1.0;
    double prev_mag = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * x * static_cast<double>(k));
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // divergent tail reached
        sum += term;
        prev_mag = mag;
        if (mag < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double bessel_i_ratio(int p, double x) {
    if (p < 0) throw std::invalid_argument("bessel_i_ratio: order must be nonnegative");
    if (x < 0.0) throw std::invalid_argument("bessel_i_ratio: argument must be nonnegative");
    if (p == 0) return 1.0;
    if (x == 0.0) return 0.0;
    if (x <= kSeriesSwitch) return bessel_i_series(p, x) / bessel_i_series(0, x);
    return bessel_asym_poly(p, x) / bessel_asym_poly(0, x);
}

double vonmises_trig_moment(int p, double kappa) {
    if (p < 0) throw std::invalid_argument("vonmises_trig_moment: p must be nonnegative");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("vonmises_trig_moment: kappa must be nonnegative");
    if (p == 0) return 1.0;
    return bessel_i_ratio(p, kappa);
}

double nakagami_abs_mean(double m) {
    if (!(m >= 0.5)) throw std::invalid_argument("nakagami_abs_mean: m must be >= 0.5");
    return std::exp(std::lgamma(m + 0.5) - std::lgamma(m)) / std::sqrt(m);
}

double eff_phase_variance(const PhaseErrorModel& model) {
    const double phi1 = vonmises_trig_moment(1, model.kappa);
    const double cap = -2.0 * std::log(kCoherenceFloor);
    constexpr double uniform_pair = 2.0 * std::numbers::pi * std::numbers::pi / 3.0;
    if (phi1 <= 0.0) return cap;
    return std::min(uniform_pair - 2.0 * std::log(phi1), cap);
}

GammaChannelParams gamma_params_from_moments(int M, double alpha2, double coherence,
                                             double phi2) {
    if (M < 1) throw std::invalid_argument("gamma_params_from_moments: M must be >= 1");
    const double c = std::max(coherence, kCoherenceFloor);
    const double mu = static_cast<double>(M) * alpha2 * c;
    const double var_u =
        0.5 * static_cast<double>(M) * (1.0 + phi2 - 2.0 * alpha2 * alpha2 * c * c);
    if (!(var_u > 0.0))
        throw std::invalid_argument("gamma_params_from_moments: nonpositive variance");
    GammaChannelParams out;
    out.shape = mu * mu / (4.0 * var_u);
    out.spread = mu * mu;
    out.alpha2 = alpha2;
    out.phi1 = c;
    out.phi2 = phi2;
    out.Phi = 1.0;
    return out;
}

GammaChannelParams user_gamma_params(int M, double m_bv, double m_vu,
                                     const PhaseErrorModel& model) {
    const double alpha2 = nakagami_abs_mean(m_bv) * nakagami_abs_mean(m_vu);
    const double phi1 = vonmises_trig_moment(1, model.kappa);
    const double phi2 = vonmises_trig_moment(2, model.kappa);
    return gamma_params_from_moments(M, alpha2, phi1, phi2);
}

GammaChannelParams eve_gamma_params(int M, double m_bv, double m_ve,
                                    const PhaseErrorModel& model) {
    const double alpha2 = nakagami_abs_mean(m_bv) * nakagami_abs_mean(m_ve);
    const double phi2 = vonmises_trig_moment(2, model.kappa);
    const double Phi =
        std::max(std::exp(-0.5 * eff_phase_variance(model)), kCoherenceFloor);
    GammaChannelParams out = gamma_params_from_moments(M, alpha2, Phi, phi2);
    out.phi1 = vonmises_trig_moment(1, model.kappa);
    out.Phi = Phi;
    return out;
}

}  // namespace starsec
