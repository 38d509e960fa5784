#pragma once

#include <Eigen/Core>

#include "starsec/rf_stats.hpp"

namespace starsec {

// Gauss-Laguerre rule: nodes strictly increasing and positive, weights
// positive and summing to 1 (the weight function e^{-x} has unit mass).
struct QuadRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
    int order = 0;
};

// Golub-Welsch on the Laguerre Jacobi matrix. Valid for 1 <= n <= 200.
QuadRule laguerre_rule(int n);

// Process-wide cache of rules keyed by order; safe for concurrent use.
const QuadRule& shared_rule(int n);

// Ergodic capacity in bits from the Gamma MGF M(s) = (1 + s*spread/shape)^{-shape}:
//   (1/ln 2) * sum_i w_i/z_i * [M(k_int z_i) - M((k_int + k_sig) z_i)].
// k_int = 0 reduces to (1/ln 2) * sum w_i/z_i * [1 - M(k_sig z_i)].
double mgf_capacity(const GammaChannelParams& params, double k_sig, double k_int,
                    const QuadRule& rule);

}  // namespace starsec
