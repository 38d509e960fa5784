#include "starsec/quadrature.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace starsec {

QuadRule laguerre_rule(int n) {
    if (n < 1 || n > 200)
        throw std::invalid_argument("laguerre_rule: order must be in [1, 200]");
    // Jacobi matrix of the Laguerre recurrence: diagonal 2i+1, off-diagonal i.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        jacobi(i, i) = 2.0 * i + 1.0;
        if (i + 1 < n) {
            jacobi(i, i + 1) = static_cast<double>(i + 1);
            jacobi(i + 1, i) = static_cast<double>(i + 1);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("laguerre_rule: eigensolver failed");
    QuadRule rule;
    rule.nodes = solver.eigenvalues().array();  // ascending
    // Weight i is the squared first component of eigenvector i; the first
    // moment of e^{-x} is 1, so the weights sum to 1 without rescaling.
    rule.weights = solver.eigenvectors().row(0).array().square();
    rule.order = n;
    return rule;
}

const QuadRule& shared_rule(int n) {
    static std::mutex mutex;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, laguerre_rule(n)).first;
    return it->second;
}

double mgf_capacity(const GammaChannelParams& params, double k_sig, double k_int,
                    const QuadRule& rule) {
    if (!(k_sig >= 0.0) || !(k_int >= 0.0))
        throw std::invalid_argument("mgf_capacity: SNR constants must be nonnegative");
    if (k_sig == 0.0) return 0.0;
    const double scale = params.spread / params.shape;  // Gamma scale of X
    const Eigen::ArrayXd& z = rule.nodes;
    const Eigen::ArrayXd tail =
        (-params.shape * (z * (scale * (k_int + k_sig))).log1p()).exp();
    double sum;
    if (k_int > 0.0) {
        const Eigen::ArrayXd head = (-params.shape * (z * (scale * k_int)).log1p()).exp();
        sum = ((rule.weights / z) * (head - tail)).sum();
    } else {
        sum = ((rule.weights / z) * (1.0 - tail)).sum();
    }
    // Roundoff can land a hair below zero when k_sig is vanishingly small.
    return std::max(sum, 0.0) / std::numbers::ln2;
}

}  // namespace starsec
