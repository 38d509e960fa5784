#include "starsec/closed_form.hpp"

#include <cmath>
#include <stdexcept>

#include "starsec/scenario.hpp"

namespace starsec {

namespace {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

struct PairCapacities {
    double c_user_r, c_eve_r, c_user_t, c_eve_t;
};

PairCapacities pair_capacities(const ScenarioConfig& cfg, const Position3D& uav,
                               double zeta, std::size_t pair) {
    PowerConfig power = cfg.power;
    power.zeta = zeta;
    const LinkDistances dists = link_distances(cfg.layout, uav, pair);
    const SnrConstants k = snr_constants(power, dists);
    const QuadRule& rule = shared_rule(cfg.quad_order);

    const GammaChannelParams user_r =
        user_gamma_params(cfg.elements, cfg.fading.m_bv, cfg.fading.m_vu_r, cfg.phase);
    const GammaChannelParams user_t =
        user_gamma_params(cfg.elements, cfg.fading.m_bv, cfg.fading.m_vu_t, cfg.phase);
    const GammaChannelParams eve_r =
        eve_gamma_params(cfg.elements, cfg.fading.m_bv, cfg.fading.m_ve_r, cfg.phase);
    const GammaChannelParams eve_t =
        eve_gamma_params(cfg.elements, cfg.fading.m_bv, cfg.fading.m_ve_t, cfg.phase);

    return {capacity_reflect(user_r, k.k1, rule), capacity_reflect(eve_r, k.k1p, rule),
            capacity_transmit(user_t, k.k2, k.k_int_user_t, rule),
            capacity_transmit(eve_t, k.k2p, k.k_int_eve_t, rule)};
}

}  // namespace

SnrConstants snr_constants(const PowerConfig& power, const LinkDistances& dists) {
    const double snr = dbm_to_mw(power.ps_dbm) / dbm_to_mw(power.n0_dbm);
    const double a = power.alpha_pl;
    const double bv = std::pow(dists.d_bv, a);
    const double reflect_gain = power.rho * power.zeta * snr;
    const double transmit_gain = (1.0 - power.rho) * (1.0 - power.zeta) * snr;

    SnrConstants k;
    k.k1 = reflect_gain / (bv * std::pow(dists.d_vu_r, a));
    k.k2 = transmit_gain / (bv * std::pow(dists.d_vu_t, a));
    k.k1p = reflect_gain / (bv * std::pow(dists.d_ve_r, a));
    k.k2p = transmit_gain / (bv * std::pow(dists.d_ve_t, a));
    k.k_int_user_t = reflect_gain / (bv * std::pow(dists.d_vu_t, a));
    k.k_int_eve_t = reflect_gain / (bv * std::pow(dists.d_ve_t, a));
    return k;
}

double capacity_reflect(const GammaChannelParams& params, double k_sig,
                        const QuadRule& rule) {
    return mgf_capacity(params, k_sig, 0.0, rule);
}

double capacity_transmit(const GammaChannelParams& params, double k_sig, double k_int,
                         const QuadRule& rule) {
    return mgf_capacity(params, k_sig, k_int, rule);
}

SecrecyReport assemble_report(double c_user_r, double c_eve_r, double c_user_t,
                              double c_eve_t, double w1, double w2) {
    SecrecyReport r;
    r.c_user_r = c_user_r;
    r.c_eve_r = c_eve_r;
    r.c_user_t = c_user_t;
    r.c_eve_t = c_eve_t;
    r.r_sec_r = std::max(c_user_r - c_eve_r, 0.0);
    r.r_sec_t = std::max(c_user_t - c_eve_t, 0.0);
    r.r_sec_sum = r.r_sec_r + r.r_sec_t;
    r.wssr = w1 * r.r_sec_t + w2 * r.r_sec_r;
    return r;
}

SecrecyReport secrecy_report(const ScenarioConfig& cfg, const Position3D& uav,
                             double zeta, std::size_t pair) {
    const PairCapacities c = pair_capacities(cfg, uav, zeta, pair);
    return assemble_report(c.c_user_r, c.c_eve_r, c.c_user_t, c.c_eve_t, cfg.w1, cfg.w2);
}

SecrecyReport mean_secrecy_report(const ScenarioConfig& cfg, const Position3D& uav,
                                  double zeta) {
    if (cfg.layout.pairing.empty())
        throw std::invalid_argument("mean_secrecy_report: empty pairing list");
    SecrecyReport mean;
    for (std::size_t p = 0; p < cfg.layout.pairing.size(); ++p) {
        const SecrecyReport r = secrecy_report(cfg, uav, zeta, p);
        mean.c_user_r += r.c_user_r;
        mean.c_eve_r += r.c_eve_r;
        mean.c_user_t += r.c_user_t;
        mean.c_eve_t += r.c_eve_t;
        mean.r_sec_r += r.r_sec_r;
        mean.r_sec_t += r.r_sec_t;
        mean.r_sec_sum += r.r_sec_sum;
        mean.wssr += r.wssr;
    }
    const double n = static_cast<double>(cfg.layout.pairing.size());
    mean.c_user_r /= n;
    mean.c_eve_r /= n;
    mean.c_user_t /= n;
    mean.c_eve_t /= n;
    mean.r_sec_r /= n;
    mean.r_sec_t /= n;
    mean.r_sec_sum /= n;
    mean.wssr /= n;
    return mean;
}

double wssr_objective(const ScenarioConfig& cfg, const Position3D& uav, double zeta,
                      double w1, double w2) {
    if (cfg.layout.pairing.empty())
        throw std::invalid_argument("wssr_objective: empty pairing list");
    double sum = 0.0;
    for (std::size_t p = 0; p < cfg.layout.pairing.size(); ++p) {
        const PairCapacities c = pair_capacities(cfg, uav, zeta, p);
        sum += assemble_report(c.c_user_r, c.c_eve_r, c.c_user_t, c.c_eve_t, w1, w2).wssr;
    }
    return sum / static_cast<double>(cfg.layout.pairing.size());
}

}  // namespace starsec
