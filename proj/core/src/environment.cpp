#include "sege/environment.hpp"

#include <stdexcept>
#include <string>

namespace sege {

Environment::Environment(EnvironmentSpec spec, NoiseGenerator noise)
    : spec_(std::move(spec)), noise_(std::move(noise)) {
    const auto d = spec_.arm_set.dim();
    if (spec_.theta_star.size() != d || spec_.baseline_arm.size() != d) {
        throw std::invalid_argument("environment: dimension mismatch between theta*, X0 and the arm set");
    }
    if (!(spec_.theta_bound > 0.0)) throw std::invalid_argument("environment: S must be positive");
    if (!(spec_.noise_sd >= 0.0)) throw std::invalid_argument("environment: noise_sd must be nonnegative");
    if (spec_.theta_star.norm() > spec_.theta_bound) {
        throw std::invalid_argument("environment: ||theta*|| > S");
    }
    if (!spec_.arm_set.contains(spec_.baseline_arm, kFeasibilityTolerance)) {
        throw std::invalid_argument("environment: baseline arm X0 lies outside the arm set");
    }
    if (spec_.baseline_arm.dot(spec_.theta_star) < spec_.baseline_bound) {
        throw std::invalid_argument("environment: <X0, theta*> < b0");
    }
    if (!(spec_.threshold < spec_.baseline_bound)) {
        throw std::invalid_argument("environment: b >= b0");
    }
    if (!noise_) {
        const double sd = spec_.noise_sd;
        noise_ = [sd](Rng& rng) {
            if (sd == 0.0) return 0.0;
            return std::normal_distribution<double>(0.0, sd)(rng);
        };
    }
    if (spec_.theta_star.norm() > kMinDirectionNorm) {
        optimal_arm_ = spec_.arm_set.support(spec_.theta_star);
    } else {
        optimal_arm_ = spec_.arm_set.center();
    }
    optimal_reward_ = optimal_arm_.dot(spec_.theta_star);
}

double Environment::expected_reward(const Vector& x) const {
    if (x.size() != dim()) throw std::invalid_argument("expected_reward: dimension mismatch");
    return x.dot(spec_.theta_star);
}

double Environment::sample_reward(const Vector& x, Rng& noise_stream) const {
    if (x.size() != dim()) throw std::invalid_argument("sample_reward: dimension mismatch");
    if (!spec_.arm_set.contains(x, kFeasibilityTolerance)) {
        throw std::invalid_argument("sample_reward: arm lies outside the feasible set");
    }
    return x.dot(spec_.theta_star) + noise_(noise_stream);
}

ProblemInstance Environment::public_view() const {
    return ProblemInstance{spec_.arm_set,    spec_.baseline_arm, spec_.baseline_bound,
                           spec_.threshold,  spec_.theta_bound,  spec_.noise_sd,
                           spec_.arm_set.max_norm()};
}

double worst_case_baseline_bound(const Vector& x, double theta_bound) {
    if (!(theta_bound > 0.0)) throw std::invalid_argument("worst_case_baseline_bound: S must be positive");
    return -theta_bound * x.norm();
}

}  // namespace sege
