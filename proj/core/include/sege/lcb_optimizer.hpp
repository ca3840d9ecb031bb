#pragma once

#include <stdexcept>

#include "sege/estimator.hpp"
#include "sege/geometry.hpp"

namespace sege {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LcbMaximizer {
    Vector arm;
    double value = 0.0;
    int iterations = 0;
};

struct LcbSolverOptions {
    double tolerance = 1e-9;  // on the projected-gradient (gradient mapping) norm
    int max_iterations = 10000;
    // Relative bound on the certified suboptimality max_z <grad g(x), z - x>.
    double gap_tolerance = 1e-10;
    // Accepted once no step from the current iterate makes progress.
    double stall_gap_tolerance = 1e-7;
};

/// Maximizes the concave function g(x) = <x, theta_hat> - r ||x||_{V^{-1}}
/// over the arm set by projected gradient ascent with backtracking, started
/// at the support point of theta_hat.
///
/// Throws ConvergenceError when the iteration cap is hit.
[[nodiscard]] LcbMaximizer lcb_arm(const Estimator& est, const EllipsoidArmSet& arm_set, double radius,
                                   const LcbSolverOptions& options = {});

}  // namespace sege
