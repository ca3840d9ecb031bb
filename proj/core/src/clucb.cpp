#include "sege/clucb.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sege {

std::vector<Vector> discretize_boundary(const EllipsoidArmSet& arm_set, int count) {
    if (count < 3) throw std::invalid_argument("discretize_boundary: need at least 3 points");
    if (arm_set.dim() != 2) throw std::invalid_argument("discretize_boundary: only planar arm sets are supported");
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / count;
        Vector u(2);
        u << std::cos(phi), std::sin(phi);
        out.push_back(arm_set.boundary_point(u));
    }
    return out;
}

double discretization_gap_bound(const EllipsoidArmSet& arm_set, double theta_bound, int count) {
    if (count < 3) throw std::invalid_argument("discretization_gap_bound: need at least 3 points");
    return theta_bound * std::sqrt(arm_set.max_shape_eigenvalue()) * (1.0 - std::cos(std::numbers::pi / count));
}

ScoredArm ucb_arm(const Estimator& est, std::span<const Vector> arms, double radius) {
    if (arms.empty()) throw std::invalid_argument("ucb_arm: empty arm list");
    ScoredArm best{0, est.ucb(arms[0], radius)};
    for (std::size_t i = 1; i < arms.size(); ++i) {
        const double v = est.ucb(arms[i], radius);
        if (v > best.value) best = {i, v};
    }
    return best;
}

ClucbPolicy::ClucbPolicy(ClucbConfig cfg, ProblemInstance problem)
    : cfg_(cfg),
      problem_(std::move(problem)),
      est_(problem_.arm_set.dim(), cfg_.lambda),
      arms_(discretize_boundary(problem_.arm_set, cfg_.discretization)),
      counts_(arms_.size(), 0) {
    if (!(cfg_.alpha > 0.0 && cfg_.alpha < 1.0)) throw std::invalid_argument("ClucbConfig: alpha must lie in (0, 1)");
    if (!(cfg_.delta > 0.0 && cfg_.delta < 1.0)) throw std::invalid_argument("ClucbConfig: delta must lie in (0, 1)");
}

bool ClucbPolicy::budget_check(const Vector& candidate, double radius) const {
    double lower = static_cast<double>(baseline_plays_) * problem_.baseline_bound + est_.lcb(candidate, radius);
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        if (counts_[i] != 0) lower += static_cast<double>(counts_[i]) * est_.lcb(arms_[i], radius);
    }
    const double t = static_cast<double>(stage());
    return lower >= (1.0 - cfg_.alpha) * t * problem_.baseline_bound;
}

ClucbDecision ClucbPolicy::decide() {
    const std::int64_t t = stage();
    const double td = static_cast<double>(t);
    ClucbDecision out;
    out.delta = 6.0 * cfg_.delta / (std::numbers::pi * std::numbers::pi * td * td);
    out.radius = confidence_radius(t, out.delta, est_.dim(), cfg_.lambda, problem_.theta_bound, problem_.noise_sd,
                                   problem_.max_arm_norm);
    out.lambda_min = est_.min_information_eigenvalue();

    const ScoredArm best = ucb_arm(est_, arms_, out.radius);
    out.candidate = best.index;
    const Vector& candidate = arms_[best.index];
    if (candidate == problem_.baseline_arm || !budget_check(candidate, out.radius)) {
        out.arm = problem_.baseline_arm;
        out.played_baseline = true;
    } else {
        out.arm = candidate;
    }
    return out;
}

void ClucbPolicy::observe(const ClucbDecision& decision, double reward) {
    est_.update(decision.arm, reward);
    if (decision.played_baseline) {
        ++baseline_plays_;
    } else {
        ++counts_[decision.candidate];
        ++non_baseline_plays_;
    }
}

}  // namespace sege
