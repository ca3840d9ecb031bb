#include "sege/sege_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sege {

double RiskSchedule::level(std::int64_t t) const {
    if (t < 1) throw std::invalid_argument("RiskSchedule::level: t must be >= 1");
    const double td = static_cast<double>(t);
    double value = delta_bar;
    switch (form) {
        case Form::SummableQuadratic:
            value = 6.0 * delta_bar / (std::numbers::pi * std::numbers::pi * td * td);
            break;
        case Form::FloorExponential:
            value = delta_bar * std::exp(-decay * std::sqrt(td));
            break;
        case Form::Constant:
            break;
    }
    return std::clamp(value, std::numeric_limits<double>::min(), 1.0);
}

std::string_view to_string(RiskSchedule::Form form) {
    switch (form) {
        case RiskSchedule::Form::SummableQuadratic: return "summable-quadratic";
        case RiskSchedule::Form::FloorExponential: return "floor-exponential";
        case RiskSchedule::Form::Constant: return "constant";
    }
    return "?";
}

std::optional<RiskSchedule::Form> parse_risk_form(std::string_view text) {
    if (text == "summable-quadratic") return RiskSchedule::Form::SummableQuadratic;
    if (text == "floor-exponential") return RiskSchedule::Form::FloorExponential;
    if (text == "constant") return RiskSchedule::Form::Constant;
    return std::nullopt;
}

std::string_view to_string(DecisionTag tag) {
    switch (tag) {
        case DecisionTag::Greedy: return "GREEDY";
        case DecisionTag::ExploreFromLcb: return "EXPLORE_FROM_LCB";
        case DecisionTag::ExploreFromBaseline: return "EXPLORE_FROM_BASELINE";
    }
    return "?";
}

double rho_bar(double baseline_bound, double threshold, double theta_bound, double lambda_max_shape) {
    if (!(threshold < baseline_bound)) throw std::invalid_argument("rho_bar: b >= b0 leaves no exploration budget");
    if (!(theta_bound > 0.0) || !(lambda_max_shape > 0.0)) {
        throw std::invalid_argument("rho_bar: S and lambda_max(H) must be positive");
    }
    return std::min(1.0, (baseline_bound - threshold) / (2.0 * theta_bound * std::sqrt(lambda_max_shape)));
}

Vector sample_exploration_direction(Eigen::Index dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_exploration_direction: dimension must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(dim);
    double n = 0.0;
    do {
        for (Eigen::Index i = 0; i < dim; ++i) z(i) = normal(rng);
        n = z.norm();
    } while (n < 1e-12);
    return z / n;
}

Vector safe_exploration_arm(const Vector& safe_arm, double rho, const EllipsoidArmSet& arm_set, const Vector& zeta) {
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("safe_exploration_arm: rho must lie in [0, 1)");
    if (!arm_set.contains(safe_arm, kFeasibilityTolerance)) {
        throw std::invalid_argument("safe_exploration_arm: safe arm lies outside the arm set");
    }
    return (1.0 - rho) * safe_arm + rho * arm_set.boundary_point(zeta);
}

std::optional<Vector> greedy_arm(const Vector& theta_hat, const EllipsoidArmSet& arm_set) {
    if (theta_hat.norm() <= kMinDirectionNorm) return std::nullopt;
    return arm_set.support(theta_hat);
}

SegeDecision sege_step(const Estimator& est, const SegeConfig& cfg, const ProblemInstance& problem, std::int64_t t,
                       Rng& exploration_stream, const LcbSolverOptions& solver) {
    if (t < 1) throw std::invalid_argument("sege_step: t must be >= 1");

    SegeDecision out;
    out.delta = cfg.risk.level(t);
    out.radius = confidence_radius(t, std::min(out.delta, std::nextafter(1.0, 0.0)), est.dim(), est.lambda(),
                                   problem.theta_bound, problem.noise_sd, problem.max_arm_norm);
    out.lambda_min = est.min_information_eigenvalue();
    out.information_gate = out.lambda_min >= cfg.gate_c * std::sqrt(static_cast<double>(t));
    out.lcb_arm_value = std::numeric_limits<double>::quiet_NaN();

    const auto greedy = greedy_arm(est.estimate(), problem.arm_set);
    out.lcb_of_greedy = greedy ? est.lcb(*greedy, out.radius) : -std::numeric_limits<double>::infinity();

    if (greedy && out.lcb_of_greedy >= problem.threshold && out.information_gate) {
        out.arm = *greedy;
        out.tag = DecisionTag::Greedy;
        return out;
    }

    const LcbMaximizer best = lcb_arm(est, problem.arm_set, out.radius, solver);
    out.lcb_arm_value = best.value;
    const Vector& safe = select_safe_arm(best.arm, best.value, problem.baseline_bound, problem.baseline_arm);
    out.tag = best.value >= problem.baseline_bound ? DecisionTag::ExploreFromLcb : DecisionTag::ExploreFromBaseline;

    const Vector zeta = sample_exploration_direction(est.dim(), exploration_stream);
    out.arm = safe_exploration_arm(safe, cfg.rho, problem.arm_set, zeta);
    return out;
}

SegePolicy::SegePolicy(SegeConfig cfg, ProblemInstance problem)
    : cfg_(cfg), problem_(std::move(problem)), est_(problem_.arm_set.dim(), cfg_.lambda) {
    if (!(cfg_.gate_c > 0.0)) throw std::invalid_argument("SegeConfig: c must be positive");
    const double bound = rho_bar(problem_.baseline_bound, problem_.threshold, problem_.theta_bound,
                                 problem_.arm_set.max_shape_eigenvalue());
    if (!(cfg_.rho > 0.0 && cfg_.rho <= bound * (1.0 + 1e-12))) {
        throw std::invalid_argument("SegeConfig: rho must lie in (0, rho_bar]");
    }
}

SegeDecision SegePolicy::decide(Rng& exploration_stream) {
    return sege_step(est_, cfg_, problem_, stage(), exploration_stream);
}

void SegePolicy::observe(const Vector& arm, double reward) { est_.update(arm, reward); }

}  // namespace sege
