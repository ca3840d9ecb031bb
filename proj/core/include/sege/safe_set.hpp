#pragma once

#include <cstdint>
#include <vector>

#include "sege/estimator.hpp"
#include "sege/geometry.hpp"

namespace sege {

/// The set {x in X : LCB(x) >= b} sampled on a grid x grid lattice over the
/// bounding box of a planar arm set, together with its boundary contour.
struct SafeSetSnapshot {
    std::int64_t stage = 0;
    double radius = 0.0;
    double threshold = 0.0;
    int grid = 0;
    Vector lower;  // bounding-box corner
    Vector upper;
    std::vector<std::uint8_t> mask;          // row-major, mask[j * grid + i] for lattice point (i, j)
    std::vector<std::vector<Vector>> contours;  // marching-squares polylines

    [[nodiscard]] Vector lattice_point(int i, int j) const;
    [[nodiscard]] bool inside(int i, int j) const { return mask[static_cast<std::size_t>(j) * grid + i] != 0; }
    [[nodiscard]] std::size_t inside_count() const;
    [[nodiscard]] bool empty() const { return inside_count() == 0; }
    /// Largest lattice spacing along either axis.
    [[nodiscard]] double spacing() const;
};

/// Throws std::invalid_argument for grid < 16 or a non-planar arm set.
[[nodiscard]] SafeSetSnapshot safe_set_snapshot(const Estimator& est, const EllipsoidArmSet& arm_set, double radius,
                                                double threshold, int grid);

}  // namespace sege
