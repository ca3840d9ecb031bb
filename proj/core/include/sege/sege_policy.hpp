#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sege/environment.hpp"
#include "sege/estimator.hpp"
#include "sege/geometry.hpp"
#include "sege/lcb_optimizer.hpp"
#include "sege/random.hpp"

namespace sege {

/// Per-stage allowable risk delta_t.
struct RiskSchedule {
    enum class Form {
        SummableQuadratic,  // 6 delta_bar / (pi^2 t^2); sums to delta_bar
        FloorExponential,   // delta_bar exp(-K sqrt(t))
        Constant,           // delta_bar
    };

    Form form = Form::SummableQuadratic;
    double delta_bar = 0.1;
    double decay = 0.0;  // K, only used by FloorExponential

    /// Value at stage t >= 1, clamped to (0, 1].
    [[nodiscard]] double level(std::int64_t t) const;
};

[[nodiscard]] std::string_view to_string(RiskSchedule::Form form);
[[nodiscard]] std::optional<RiskSchedule::Form> parse_risk_form(std::string_view text);

[[nodiscard]] inline double risk_level(const RiskSchedule& schedule, std::int64_t t) { return schedule.level(t); }

struct SegeConfig {
    double rho = 0.0;       // exploration mixing weight, 0 < rho <= rho_bar
    double gate_c = 0.5;    // information gate lambda_min(V) >= c sqrt(t)
    double lambda = 0.1;    // regularization
    RiskSchedule risk;
};

enum class DecisionTag { Greedy, ExploreFromLcb, ExploreFromBaseline };

[[nodiscard]] std::string_view to_string(DecisionTag tag);

struct SegeDecision {
    Vector arm;
    DecisionTag tag = DecisionTag::ExploreFromBaseline;
    double delta = 0.0;           // delta_t
    double radius = 0.0;          // r_t(delta_t)
    double lcb_of_greedy = 0.0;   // -inf when the greedy arm is undefined
    double lcb_arm_value = 0.0;   // NaN when the LCB arm was not needed
    double lambda_min = 0.0;      // lambda_min(V_{t-1})
    bool information_gate = false;
};

/// rho_bar = min{1, (b0 - b) / (2 S sqrt(lambda_max(H)))}.
[[nodiscard]] double rho_bar(double baseline_bound, double threshold, double theta_bound, double lambda_max_shape);

/// Uniform draw from the unit sphere in R^d (normalized Gaussian vector).
[[nodiscard]] Vector sample_exploration_direction(Eigen::Index dim, Rng& rng);

/// (1 - rho) safe_arm + rho (center + H^{1/2} zeta).
[[nodiscard]] Vector safe_exploration_arm(const Vector& safe_arm, double rho, const EllipsoidArmSet& arm_set,
                                          const Vector& zeta);

/// The LCB arm when its lower confidence bound reaches b0, otherwise X0.
[[nodiscard]] inline const Vector& select_safe_arm(const Vector& lcb_arm, double lcb_value, double baseline_bound,
                                                   const Vector& baseline_arm) {
    return lcb_value >= baseline_bound ? lcb_arm : baseline_arm;
}

/// Certainty-equivalent arm for the estimate; nullopt when the estimate is too
/// close to zero for the support direction to be defined.
[[nodiscard]] std::optional<Vector> greedy_arm(const Vector& theta_hat, const EllipsoidArmSet& arm_set);

/// One decision of the safe-exploration / greedy-exploitation rule at stage t,
/// given an estimator holding the t - 1 earlier observations.
[[nodiscard]] SegeDecision sege_step(const Estimator& est, const SegeConfig& cfg, const ProblemInstance& problem,
                                     std::int64_t t, Rng& exploration_stream,
                                     const LcbSolverOptions& solver = {});

/// Stateful wrapper: owns the estimator and the stage counter.
class SegePolicy {
public:
    SegePolicy(SegeConfig cfg, ProblemInstance problem);

    /// Decision for the next stage.
    [[nodiscard]] SegeDecision decide(Rng& exploration_stream);
    void observe(const Vector& arm, double reward);

    [[nodiscard]] std::int64_t stage() const noexcept { return est_.count() + 1; }
    [[nodiscard]] const Estimator& estimator() const noexcept { return est_; }
    [[nodiscard]] const SegeConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const ProblemInstance& problem() const noexcept { return problem_; }

private:
    SegeConfig cfg_;
    ProblemInstance problem_;
    Estimator est_;
};

}  // namespace sege
