#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sege/environment.hpp"
#include "sege/estimator.hpp"
#include "sege/geometry.hpp"

namespace sege {

/// Conservative linear UCB on a finite discretization of the arm-set
/// boundary. Plays the optimistic arm only when a lower confidence bound on
/// the cumulative reward, including that arm, stays above (1 - alpha) t b0.
struct ClucbConfig {
    double alpha = 0.2;         // fraction of the cumulative baseline reward that may be forgone
    double delta = 0.1;         // overall confidence, split as 6 delta / (pi^2 t^2)
    int discretization = 256;   // K points on the boundary
    double lambda = 0.1;
};

/// center + H^{1/2} (cos phi_k, sin phi_k), phi_k = 2 pi k / K. Planar sets only.
[[nodiscard]] std::vector<Vector> discretize_boundary(const EllipsoidArmSet& arm_set, int count);

/// Upper bound S sqrt(lambda_max(H)) (1 - cos(pi / K)) on the optimal-reward
/// loss from restricting a planar arm set to K boundary points.
[[nodiscard]] double discretization_gap_bound(const EllipsoidArmSet& arm_set, double theta_bound, int count);

struct ScoredArm {
    std::size_t index = 0;
    double value = 0.0;
};

/// argmax over arms of <x, theta_hat> + r ||x||_{V^{-1}}; ties go to the lowest index.
[[nodiscard]] ScoredArm ucb_arm(const Estimator& est, std::span<const Vector> arms, double radius);

struct ClucbDecision {
    Vector arm;
    std::size_t candidate = 0;  // index of the optimistic arm
    bool played_baseline = false;
    double delta = 0.0;
    double radius = 0.0;
    double lambda_min = 0.0;   // lambda_min(V_{t-1})
};

class ClucbPolicy {
public:
    ClucbPolicy(ClucbConfig cfg, ProblemInstance problem);

    [[nodiscard]] ClucbDecision decide();
    void observe(const ClucbDecision& decision, double reward);

    /// sum_{history} LCB(x) + baseline_plays b0 + LCB(candidate) >= (1 - alpha) t b0,
    /// with t the stage the candidate would be played at.
    [[nodiscard]] bool budget_check(const Vector& candidate, double radius) const;

    [[nodiscard]] std::int64_t stage() const noexcept { return est_.count() + 1; }
    [[nodiscard]] std::int64_t baseline_plays() const noexcept { return baseline_plays_; }
    [[nodiscard]] std::int64_t non_baseline_plays() const noexcept { return non_baseline_plays_; }
    /// Non-baseline history, stored as play counts per discretized arm.
    [[nodiscard]] const std::vector<std::int64_t>& arm_counts() const noexcept { return counts_; }
    [[nodiscard]] const std::vector<Vector>& arms() const noexcept { return arms_; }
    [[nodiscard]] const Estimator& estimator() const noexcept { return est_; }
    [[nodiscard]] const ClucbConfig& config() const noexcept { return cfg_; }

private:
    ClucbConfig cfg_;
    ProblemInstance problem_;
    Estimator est_;
    std::vector<Vector> arms_;
    std::vector<std::int64_t> counts_;
    std::int64_t baseline_plays_ = 0;
    std::int64_t non_baseline_plays_ = 0;
};

}  // namespace sege
