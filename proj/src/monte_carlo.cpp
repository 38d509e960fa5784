#include "starsec/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "starsec/closed_form.hpp"
#include "starsec/scenario.hpp"

namespace starsec {

namespace {

constexpr std::uint64_t kBlock = 1024;  // fixed reduction granularity

// Marsaglia-Tsang; exact for a >= 1, boosted for a < 1.
double sample_gamma(double a, Xoshiro256pp& rng) {
    if (a < 1.0) {
        const double u = rng.uniform01_open();
        return sample_gamma(a + 1.0, rng) * std::pow(u, 1.0 / a);
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

struct PairConstants {
    SnrConstants k;
};

enum class ThetaMode { UserVonMises, EveUniformPlusVonMises, EveWrappedNormal };

struct LinkSpec {
    double m_g = 1.0;  // UAV-to-node Nakagami shape; BS-UAV shape is shared
    ThetaMode theta = ThetaMode::UserVonMises;
};

double draw_theta(ThetaMode mode, double kappa, double sigma_eff, Xoshiro256pp& rng) {
    switch (mode) {
        case ThetaMode::UserVonMises:
            return sample_vonmises(kappa, rng);
        case ThetaMode::EveUniformPlusVonMises:
            // The difference of the two uniform channel phases is itself
            // uniform, so a single uniform draw plus the von Mises error
            // reproduces the raw model's effective phase.
            return rng.uniform(-std::numbers::pi, std::numbers::pi) +
                   sample_vonmises(kappa, rng);
        case ThetaMode::EveWrappedNormal:
            // Wrapping is irrelevant under cos/sin; a plain normal suffices.
            return rng.normal() * sigma_eff;
    }
    return 0.0;
}

double cascade_power(int M, double m_bv, const LinkSpec& link, double kappa,
                     double sigma_eff, Xoshiro256pp& rng) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < M; ++i) {
        const double h = sample_nakagami(m_bv, 1.0, rng);
        const double g = sample_nakagami(link.m_g, 1.0, rng);
        const double theta = draw_theta(link.theta, kappa, sigma_eff, rng);
        re += h * g * std::cos(theta);
        im += h * g * std::sin(theta);
    }
    return re * re + im * im;
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// Per-quantity running sums within one block: 6 quantities, sum and sum of
// squares each. Order: c_user_r, c_eve_r, c_user_t, c_eve_t, sec_r+, sec_t+.
using BlockSums = std::array<double, 12>;

}  // namespace

double sample_nakagami(double m, double omega, Xoshiro256pp& rng) {
    if (!(m >= 0.5)) throw std::invalid_argument("sample_nakagami: m must be >= 0.5");
    if (!(omega > 0.0)) throw std::invalid_argument("sample_nakagami: omega must be > 0");
    return std::sqrt(sample_gamma(m, rng) * (omega / m));
}

double sample_vonmises(double kappa, Xoshiro256pp& rng) {
    if (!(kappa >= 0.0))
        throw std::invalid_argument("sample_vonmises: kappa must be nonnegative");
    constexpr double pi = std::numbers::pi;
    if (kappa < 1e-8) return rng.uniform(-pi, pi);

    double s;
    if (kappa < 1e-5) {
        s = 1.0 / kappa + kappa;  // small-kappa limit of the envelope constant
    } else {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }
    double w;
    for (;;) {
        const double z = std::cos(pi * rng.uniform01());
        w = (1.0 + s * z) / (s + z);
        const double y = kappa * (s - w);
        const double v = rng.uniform01_open();
        if (y * (2.0 - y) - v >= 0.0) break;
        if (std::log(y / v) + 1.0 - y >= 0.0) break;
    }
    const double side = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    return side * std::acos(std::clamp(w, -1.0, 1.0));
}

std::vector<double> sample_cascade_power(int M, double m_bv, double m_vu,
                                         const PhaseErrorModel& model, std::size_t n,
                                         std::uint64_t seed) {
    if (M < 1) throw std::invalid_argument("sample_cascade_power: M must be >= 1");
    std::vector<double> out(n);
    const LinkSpec link{m_vu, ThetaMode::UserVonMises};
    for (std::size_t t = 0; t < n; ++t) {
        Xoshiro256pp rng(seed, t);
        out[t] = cascade_power(M, m_bv, link, model.kappa, 0.0, rng);
    }
    return out;
}

RateEstimates simulate_rates(const ScenarioConfig& cfg, const Position3D& uav,
                             double zeta, const McSettings& mc) {
    if (mc.trials < 1) throw std::invalid_argument("simulate_rates: trials must be >= 1");
    const std::size_t npairs = cfg.layout.pairing.size();
    if (npairs == 0) throw std::invalid_argument("simulate_rates: empty pairing list");

    std::vector<SnrConstants> constants(npairs);
    for (std::size_t p = 0; p < npairs; ++p) {
        PowerConfig power = cfg.power;
        power.zeta = zeta;
        constants[p] = snr_constants(power, link_distances(cfg.layout, uav, p));
    }
    const double kappa = cfg.phase.kappa;
    const double sigma_eff = std::sqrt(eff_phase_variance(cfg.phase));
    const ThetaMode eve_mode = mc.eve_phase_model == EvePhaseModel::ExactUniform
                                   ? ThetaMode::EveUniformPlusVonMises
                                   : ThetaMode::EveWrappedNormal;
    const LinkSpec user_r{cfg.fading.m_vu_r, ThetaMode::UserVonMises};
    const LinkSpec user_t{cfg.fading.m_vu_t, ThetaMode::UserVonMises};
    const LinkSpec eve_r{cfg.fading.m_ve_r, eve_mode};
    const LinkSpec eve_t{cfg.fading.m_ve_t, eve_mode};
    const int M = cfg.elements;
    const double m_bv = cfg.fading.m_bv;
    const double inv_pairs = 1.0 / static_cast<double>(npairs);

    const std::uint64_t nblocks = (mc.trials + kBlock - 1) / kBlock;
    std::vector<BlockSums> partials(nblocks);

    auto run_block = [&](std::uint64_t b) {
        BlockSums sums{};
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(lo + kBlock, mc.trials);
        for (std::uint64_t t = lo; t < hi; ++t) {
            Xoshiro256pp rng(mc.seed, t);
            double rate[4] = {0.0, 0.0, 0.0, 0.0};
            double sec_r = 0.0, sec_t = 0.0;
            for (std::size_t p = 0; p < npairs; ++p) {
                const SnrConstants& k = constants[p];
                const double x_ur = cascade_power(M, m_bv, user_r, kappa, sigma_eff, rng);
                const double x_ut = cascade_power(M, m_bv, user_t, kappa, sigma_eff, rng);
                const double x_er = cascade_power(M, m_bv, eve_r, kappa, sigma_eff, rng);
                const double x_et = cascade_power(M, m_bv, eve_t, kappa, sigma_eff, rng);
                const double r_ur = log2_1p(k.k1 * x_ur);
                const double r_ut = log2_1p(k.k2 * x_ut / (k.k_int_user_t * x_ut + 1.0));
                const double r_er = log2_1p(k.k1p * x_er);
                const double r_et = log2_1p(k.k2p * x_et / (k.k_int_eve_t * x_et + 1.0));
                rate[0] += r_ur;
                rate[1] += r_er;
                rate[2] += r_ut;
                rate[3] += r_et;
                sec_r += std::max(r_ur - r_er, 0.0);
                sec_t += std::max(r_ut - r_et, 0.0);
            }
            const double q[6] = {rate[0] * inv_pairs, rate[1] * inv_pairs,
                                 rate[2] * inv_pairs, rate[3] * inv_pairs,
                                 sec_r * inv_pairs, sec_t * inv_pairs};
            for (int i = 0; i < 6; ++i) {
                sums[2 * i] += q[i];
                sums[2 * i + 1] += q[i] * q[i];
            }
        }
        partials[b] = sums;
    };

    unsigned nthreads = mc.threads != 0 ? mc.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(
                                                             std::min<std::uint64_t>(nblocks, 64))));
    if (nthreads == 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next_block{0};
        std::vector<std::thread> workers;
        workers.reserve(nthreads);
        for (unsigned w = 0; w < nthreads; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::uint64_t b = next_block.fetch_add(1);
                    if (b >= nblocks) break;
                    run_block(b);
                }
            });
        }
        for (auto& w : workers) w.join();
    }

    // Serial fold in block order keeps the result identical for any thread count.
    BlockSums total{};
    for (const BlockSums& sums : partials)
        for (int i = 0; i < 12; ++i) total[i] += sums[i];

    const double n = static_cast<double>(mc.trials);
    auto estimate = [&](int i) {
        Estimate e;
        e.mean = total[2 * i] / n;
        if (mc.trials > 1) {
            const double var =
                std::max(total[2 * i + 1] - n * e.mean * e.mean, 0.0) / (n - 1.0);
            e.se = std::sqrt(var / n);
        }
        return e;
    };

    RateEstimates out;
    out.c_user_r = estimate(0);
    out.c_eve_r = estimate(1);
    out.c_user_t = estimate(2);
    out.c_eve_t = estimate(3);
    out.r_sec_r.mean = std::max(out.c_user_r.mean - out.c_eve_r.mean, 0.0);
    out.r_sec_r.se = std::hypot(out.c_user_r.se, out.c_eve_r.se);
    out.r_sec_t.mean = std::max(out.c_user_t.mean - out.c_eve_t.mean, 0.0);
    out.r_sec_t.se = std::hypot(out.c_user_t.se, out.c_eve_t.se);
    out.r_sec_r_inst = total[8] / n;
    out.r_sec_t_inst = total[10] / n;
    return out;
}

}  // namespace starsec
