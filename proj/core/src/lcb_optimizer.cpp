#include "sege/lcb_optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace sege {

LcbMaximizer lcb_arm(const Estimator& est, const EllipsoidArmSet& arm_set, double radius,
                     const LcbSolverOptions& options) {
    if (radius < 0.0) throw std::invalid_argument("lcb_arm: radius must be nonnegative");
    if (arm_set.dim() != est.dim()) throw std::invalid_argument("lcb_arm: dimension mismatch");

    const Vector& theta = est.estimate();
    const Matrix& w = est.information_inverse().matrix();
    const auto d = est.dim();

    // g is positively homogeneous, so when ||theta||_V <= r it is nonpositive
    // everywhere and the origin (if feasible) is a maximizer.
    const Vector origin = Vector::Zero(d);
    if (arm_set.contains(origin) && weighted_norm(theta, est.information()) <= radius) {
        return {origin, 0.0, 0};
    }

    auto objective = [&](const Vector& x) { return est.lcb(x, radius); };
    auto gradient = [&](const Vector& x) -> Vector {
        const Vector wx = w * x;
        const double nrm2 = x.dot(wx);
        if (nrm2 <= 0.0) return theta;
        return theta - (radius / std::sqrt(nrm2)) * wx;
    };

    // Concavity gives g(x*) <= g(x) + max_{z in X} <grad g(x), z - x>, and the
    // inner maximum is the support function <grad, c> + ||grad||_H. The gap
    // certifies the objective value even where rounding keeps the projected
    // gradient from dropping below the tolerance.
    auto optimality_gap = [&](const Vector& x) {
        const Vector grad = gradient(x);
        return grad.dot(arm_set.center()) + weighted_norm(grad, arm_set.shape()) - grad.dot(x);
    };

    // Accelerated projected gradient ascent: momentum point y, accepted
    // iterate x, backtracking on the step, and a restart whenever the
    // objective would decrease.
    Vector x = theta.norm() > kMinDirectionNorm ? arm_set.support(theta) : arm_set.center();
    double gx = objective(x);
    Vector y = x;
    double momentum = 1.0;
    double step = 1.0;
    if (optimality_gap(x) <= options.gap_tolerance * (1.0 + std::abs(gx))) return {x, gx, 0};

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const Vector grad = gradient(y);
        const double gy = objective(y);
        step = std::min(step * 1.25, 1e6);

        Vector next;
        double g_next = 0.0;
        double mapping_norm = 0.0;
        for (int shrink = 0;; ++shrink) {
            next = arm_set.project(y + step * grad);
            const Vector move = next - y;
            g_next = objective(next);
            mapping_norm = move.norm() / step;
            const double model = gy + grad.dot(move) - move.squaredNorm() / (2.0 * step);
            if (g_next >= model - 1e-12 * (1.0 + std::abs(gy)) || shrink >= 60) break;
            step *= 0.5;
        }

        if (g_next < gx) {
            // Momentum overshot; restart from the accepted iterate.
            if (y != x) {
                y = x;
                momentum = 1.0;
                continue;
            }
            // No ascent from x itself: rounding dominates the step. Accept x
            // when the gap still certifies it to the looser stall tolerance.
            if (optimality_gap(x) <= options.stall_gap_tolerance * (1.0 + std::abs(gx))) return {x, gx, iter};
        }

        if (mapping_norm < options.tolerance) {
            return g_next > gx ? LcbMaximizer{next, g_next, iter} : LcbMaximizer{x, gx, iter};
        }
        if (g_next >= gx) {
            const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            y = next + ((momentum - 1.0) / momentum_next) * (next - x);
            momentum = momentum_next;
            x = std::move(next);
            gx = g_next;
            if (optimality_gap(x) <= options.gap_tolerance * (1.0 + std::abs(gx))) return {x, gx, iter};
        } else {
            y = x;
            momentum = 1.0;
        }
    }
    throw ConvergenceError("lcb_arm: projected gradient ascent did not converge within the iteration cap");
}

}  // namespace sege
