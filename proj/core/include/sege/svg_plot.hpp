#pragma once

#include <span>
#include <string>

#include "sege/geometry.hpp"
#include "sege/harness.hpp"
#include "sege/safe_set.hpp"

namespace sege {

/// Stagewise expected reward: min/max band and mean per policy, with
/// dashed reference lines at the threshold b and the baseline bound b0.
[[nodiscard]] std::string reward_band_svg(std::span<const AggregateSummary> aggregates, double threshold,
                                          double baseline_bound);

/// Mean cumulative regret per policy with its min/max band.
[[nodiscard]] std::string regret_svg(std::span<const AggregateSummary> aggregates);

/// Arm-set outline with one safe-set contour per snapshot, the optimal arm
/// and the baseline arm. Planar arm sets only.
[[nodiscard]] std::string safe_set_svg(const EllipsoidArmSet& arm_set, std::span<const SafeSetSnapshot> snapshots,
                                       const Vector& optimal_arm, const Vector& baseline_arm);

}  // namespace sege
