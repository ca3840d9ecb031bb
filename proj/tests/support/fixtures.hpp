#pragma once

#include "sege/config.hpp"
#include "sege/harness.hpp"

namespace fixtures {

inline sege::Vector vec(double a, double b) { return (sege::Vector(2) << a, b).finished(); }

// Unit disk at (1, 1), theta* = (0.6, 0.8), X0 = (1.2, 1.9), b0 = 2.24, b = 0.8 b0.
inline sege::ResolvedExperiment unit_disk(double noise_sd = 1.0) {
    auto c = sege::default_config();
    c.noise_sd = noise_sd;
    return sege::resolve(c);
}

}  // namespace fixtures
