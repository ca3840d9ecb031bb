#pragma once

#include <functional>

#include "sege/geometry.hpp"
#include "sege/random.hpp"

namespace sege {

/// Draws one zero-mean noise sample. The default is Normal(0, sigma^2).
using NoiseGenerator = std::function<double(Rng&)>;

struct EnvironmentSpec {
    Vector theta_star;
    double theta_bound = 1.0;  // S, with ||theta*|| <= S
    double noise_sd = 0.0;     // sigma_eta
    EllipsoidArmSet arm_set;
    Vector baseline_arm;        // X0
    double baseline_bound = 0;  // b0 <= <X0, theta*>
    double threshold = 0;       // b < b0
};

/// The part of a bandit instance a learner is allowed to see: everything
/// except theta*.
struct ProblemInstance {
    EllipsoidArmSet arm_set;
    Vector baseline_arm;
    double baseline_bound;
    double threshold;
    double theta_bound;
    double noise_sd;
    double max_arm_norm;  // L
};

/// Stochastic linear reward generator Y = <x, theta*> + eta.
class Environment {
public:
    /// Validates ||theta*|| <= S, X0 in the arm set, <X0, theta*> >= b0 and
    /// b < b0; throws std::invalid_argument naming the violated condition.
    explicit Environment(EnvironmentSpec spec, NoiseGenerator noise = {});

    [[nodiscard]] const EnvironmentSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return spec_.theta_star.size(); }

    [[nodiscard]] double expected_reward(const Vector& x) const;

    /// Throws std::invalid_argument for an arm outside the feasible set.
    [[nodiscard]] double sample_reward(const Vector& x, Rng& noise_stream) const;

    [[nodiscard]] const Vector& optimal_arm() const noexcept { return optimal_arm_; }
    [[nodiscard]] double optimal_reward() const noexcept { return optimal_reward_; }

    [[nodiscard]] ProblemInstance public_view() const;

private:
    EnvironmentSpec spec_;
    NoiseGenerator noise_;
    Vector optimal_arm_;
    double optimal_reward_ = 0.0;
};

/// min over ||theta|| <= S of <x, theta> = -S ||x||.
[[nodiscard]] double worst_case_baseline_bound(const Vector& x, double theta_bound);

// Slack used when checking that an arm lies in the feasible set.
inline constexpr double kFeasibilityTolerance = 1e-9;

}  // namespace sege
