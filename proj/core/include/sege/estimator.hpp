#pragma once

#include <cstdint>

#include "sege/geometry.hpp"

namespace sege {

/// l2-regularized least squares with an incrementally maintained inverse of
/// the information matrix V = lambda I + sum x x^T.
///
/// The inverse is updated by Sherman-Morrison on every observation and
/// rebuilt from V by a Cholesky solve every kRefreshInterval updates, at
/// which point V * V^{-1} = I is re-checked.
class Estimator {
public:
    static constexpr std::int64_t kRefreshInterval = 512;

    Estimator(Eigen::Index dim, double lambda);

    void update(const Vector& x, double y);

    [[nodiscard]] Eigen::Index dim() const noexcept { return xy_sum_.size(); }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] std::int64_t count() const noexcept { return count_; }
    [[nodiscard]] const SymmetricMatrix& information() const noexcept { return v_; }
    [[nodiscard]] const SymmetricMatrix& information_inverse() const noexcept { return v_inv_; }
    [[nodiscard]] const Vector& xy_sum() const noexcept { return xy_sum_; }

    /// theta_hat = V^{-1} sum x y (cached after every update).
    [[nodiscard]] const Vector& estimate() const noexcept { return theta_hat_; }

    /// lambda_min(V), recomputed by a full eigensolve after every update.
    [[nodiscard]] double min_information_eigenvalue() const noexcept { return lambda_min_; }

    /// <x, theta_hat> - r ||x||_{V^{-1}}
    [[nodiscard]] double lcb(const Vector& x, double radius) const;

    /// <x, theta_hat> + r ||x||_{V^{-1}}
    [[nodiscard]] double ucb(const Vector& x, double radius) const;

    /// ||V V^{-1} - I||_F
    [[nodiscard]] double inverse_residual() const;

private:
    void refresh_inverse();

    double lambda_;
    std::int64_t count_ = 0;
    SymmetricMatrix v_;
    SymmetricMatrix v_inv_;
    Vector xy_sum_;
    Vector theta_hat_;
    double lambda_min_;
};

/// Confidence radius r_t(delta) = sigma sqrt(d log((1 + t L^2 / lambda) / delta)) + sqrt(lambda) S.
/// Throws std::invalid_argument unless delta is in (0, 1) and t >= 1.
[[nodiscard]] double confidence_radius(std::int64_t t, double delta, Eigen::Index dim, double lambda,
                                       double theta_bound, double noise_sd, double max_arm_norm);

}  // namespace sege
