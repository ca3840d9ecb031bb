#include "sege/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace sege {

Estimator::Estimator(Eigen::Index dim, double lambda)
    : lambda_(lambda),
      v_(SymmetricMatrix::identity(dim, lambda)),
      v_inv_(SymmetricMatrix::identity(dim, 1.0 / lambda)),
      xy_sum_(Vector::Zero(dim)),
      theta_hat_(Vector::Zero(dim)),
      lambda_min_(lambda) {
    if (dim < 1) throw std::invalid_argument("Estimator: dimension must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("Estimator: lambda must be positive");
}

void Estimator::update(const Vector& x, double y) {
    if (x.size() != dim()) throw std::invalid_argument("Estimator::update: dimension mismatch");
    ++count_;
    v_.add_outer(x);
    xy_sum_ += y * x;

    // (V + x x^T)^{-1} = V^{-1} - (V^{-1} x)(V^{-1} x)^T / (1 + x^T V^{-1} x)
    const Vector u = v_inv_.matrix() * x;
    v_inv_.add_outer(u, -1.0 / (1.0 + x.dot(u)));

    if (count_ % kRefreshInterval == 0) refresh_inverse();

    theta_hat_.noalias() = v_inv_.matrix() * xy_sum_;
    lambda_min_ = min_eigenvalue(v_);
}

void Estimator::refresh_inverse() {
    v_inv_ = spd_inverse(v_);
    if (inverse_residual() > 1e-6) {
        throw std::runtime_error("Estimator: V * V^{-1} deviates from identity after refresh");
    }
}

double Estimator::inverse_residual() const {
    const auto d = dim();
    return (v_.matrix() * v_inv_.matrix() - Matrix::Identity(d, d)).norm();
}

double Estimator::lcb(const Vector& x, double radius) const {
    return x.dot(theta_hat_) - radius * weighted_norm(x, v_inv_);
}

double Estimator::ucb(const Vector& x, double radius) const {
    return x.dot(theta_hat_) + radius * weighted_norm(x, v_inv_);
}

double confidence_radius(std::int64_t t, double delta, Eigen::Index dim, double lambda, double theta_bound,
                         double noise_sd, double max_arm_norm) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("confidence_radius: delta must lie in (0, 1)");
    if (t < 1) throw std::invalid_argument("confidence_radius: t must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("confidence_radius: lambda must be positive");
    const double td = static_cast<double>(t);
    const double log_term = std::log((1.0 + td * max_arm_norm * max_arm_norm / lambda) / delta);
    return noise_sd * std::sqrt(static_cast<double>(dim) * log_term) + std::sqrt(lambda) * theta_bound;
}

}  // namespace sege
