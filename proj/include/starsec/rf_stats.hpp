#pragma once

namespace starsec {

struct PhaseErrorModel {
    double kappa = 0.0;  // von Mises concentration; 0 means uniform phase error
};

// Nakagami shape per link; spread is fixed at 1 (path loss is tracked separately).
struct FadingParams {
    double m_bv = 1.0;
    double m_vu_r = 1.0;
    double m_vu_t = 1.0;
    double m_ve_r = 1.0;
    double m_ve_t = 1.0;
};

// Equivalent Gamma law of the cascaded channel power X: shape together with
// spread = E(U)^2, i.e. the Gamma scale is spread/shape. The cached moments
// let shape = mu^2 / (4 sigma_U^2) be re-verified from the struct alone.
// For eavesdropper variants the coherence slot is Phi (phi1 stays the user
// trig moment); for user variants Phi is 1.
struct GammaChannelParams {
    double shape = 1.0;
    double spread = 1.0;
    double alpha2 = 1.0;  // E|h| * E|g| per element
    double phi1 = 1.0;    // first trig moment of the phase error (floored at 1e-12)
    double phi2 = 1.0;    // second trig moment
    double Phi = 1.0;     // eavesdropper coherence e^{-Var/2}, floored at 1e-12
};

// I_p(x) / I_0(x): ascending power series for x <= 30, asymptotic expansion
// above, relative error target 1e-12 on both branches.
double bessel_i_ratio(int p, double x);

// phi_p = I_p(kappa) / I_0(kappa) in [0, 1]. Throws on negative kappa or p < 0.
double vonmises_trig_moment(int p, double kappa);

// E|h| for a unit-spread Nakagami-m envelope. Throws for m < 0.5.
double nakagami_abs_mean(double m);

// Variance of the eavesdropper's effective phase: two independent uniform
// channel phases plus the von Mises error, its circular variance matched as
// -2 ln phi1. Capped so the coherence floor e^{-Var/2} stays at 1e-12.
double eff_phase_variance(const PhaseErrorModel& model);

// Moment-matching core shared by user and eve parameter fits. coherence is
// phi1 for users and Phi for eavesdroppers.
GammaChannelParams gamma_params_from_moments(int M, double alpha2,
                                             double coherence, double phi2);

GammaChannelParams user_gamma_params(int M, double m_bv, double m_vu,
                                     const PhaseErrorModel& model);

GammaChannelParams eve_gamma_params(int M, double m_bv, double m_ve,
                                    const PhaseErrorModel& model);

}  // namespace starsec
