#include "sege/safe_set.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace sege {

Vector SafeSetSnapshot::lattice_point(int i, int j) const {
    Vector p(2);
    p(0) = lower(0) + (upper(0) - lower(0)) * i / (grid - 1);
    p(1) = lower(1) + (upper(1) - lower(1)) * j / (grid - 1);
    return p;
}

std::size_t SafeSetSnapshot::inside_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

double SafeSetSnapshot::spacing() const {
    return std::max(upper(0) - lower(0), upper(1) - lower(1)) / (grid - 1);
}

namespace {

// Lattice edges are numbered: horizontal edge (i, j)-(i+1, j) gets
// j * (n - 1) + i, vertical edge (i, j)-(i, j+1) gets n_h + j * n + i.
struct EdgeIndexer {
    int n;
    [[nodiscard]] int horizontal(int i, int j) const { return j * (n - 1) + i; }
    [[nodiscard]] int vertical(int i, int j) const { return (n - 1) * n + j * n + i; }
};

std::vector<std::vector<Vector>> chain_segments(const std::vector<std::array<int, 2>>& segments,
                                                const std::unordered_map<int, Vector>& points) {
    std::unordered_map<int, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s][0]].push_back(s);
        incident[segments[s][1]].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<std::vector<Vector>> out;

    auto walk = [&](int start) {
        std::vector<Vector> line{points.at(start)};
        int at = start;
        for (;;) {
            std::size_t next_seg = segments.size();
            for (std::size_t s : incident[at]) {
                if (!used[s]) {
                    next_seg = s;
                    break;
                }
            }
            if (next_seg == segments.size()) break;
            used[next_seg] = true;
            at = segments[next_seg][0] == at ? segments[next_seg][1] : segments[next_seg][0];
            line.push_back(points.at(at));
        }
        out.push_back(std::move(line));
    };

    // Open chains first (endpoints have a single incident segment), then loops.
    std::vector<int> keys;
    keys.reserve(incident.size());
    for (const auto& [edge, segs] : incident) keys.push_back(edge);
    std::sort(keys.begin(), keys.end());
    for (int edge : keys) {
        if (incident[edge].size() == 1 && !used[incident[edge][0]]) walk(edge);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s]) walk(segments[s][0]);
    }
    return out;
}

}  // namespace

SafeSetSnapshot safe_set_snapshot(const Estimator& est, const EllipsoidArmSet& arm_set, double radius,
                                  double threshold, int grid) {
    if (grid < 16) throw std::invalid_argument("safe_set_snapshot: grid must be at least 16");
    if (arm_set.dim() != 2 || est.dim() != 2) throw std::invalid_argument("safe_set_snapshot: planar arm sets only");

    SafeSetSnapshot snap;
    snap.radius = radius;
    snap.threshold = threshold;
    snap.grid = grid;
    const Vector half = arm_set.shape().matrix().diagonal().cwiseSqrt();
    snap.lower = arm_set.center() - half;
    snap.upper = arm_set.center() + half;

    // min(LCB - b, 1 - q(x)) is concave, so its superlevel set {>= 0} is the
    // convex safe set and its zero contour is that set's boundary.
    const auto n = static_cast<std::size_t>(grid);
    std::vector<double> field(n * n);
    snap.mask.assign(n * n, 0);
    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            const Vector p = snap.lattice_point(i, j);
            const double v = std::min(est.lcb(p, radius) - threshold, 1.0 - arm_set.normalized_distance(p));
            field[j * n + i] = v;
            snap.mask[j * n + i] = v >= 0.0 ? 1 : 0;
        }
    }

    const EdgeIndexer edges{grid};
    std::unordered_map<int, Vector> crossing;
    auto crossing_point = [&](int edge, int i0, int j0, int i1, int j1) {
        if (crossing.count(edge) == 0) {
            const double f0 = field[j0 * n + i0];
            const double f1 = field[j1 * n + i1];
            const double s = f0 == f1 ? 0.5 : f0 / (f0 - f1);
            const Vector a = snap.lattice_point(i0, j0);
            const Vector b = snap.lattice_point(i1, j1);
            crossing.emplace(edge, a + std::clamp(s, 0.0, 1.0) * (b - a));
        }
        return edge;
    };

    std::vector<std::array<int, 2>> segments;
    for (int j = 0; j + 1 < grid; ++j) {
        for (int i = 0; i + 1 < grid; ++i) {
            const bool c0 = snap.inside(i, j);
            const bool c1 = snap.inside(i + 1, j);
            const bool c2 = snap.inside(i + 1, j + 1);
            const bool c3 = snap.inside(i, j + 1);
            const int code = (c0 ? 1 : 0) | (c1 ? 2 : 0) | (c2 ? 4 : 0) | (c3 ? 8 : 0);
            if (code == 0 || code == 15) continue;

            auto bottom = [&] { return crossing_point(edges.horizontal(i, j), i, j, i + 1, j); };
            auto right = [&] { return crossing_point(edges.vertical(i + 1, j), i + 1, j, i + 1, j + 1); };
            auto top = [&] { return crossing_point(edges.horizontal(i, j + 1), i, j + 1, i + 1, j + 1); };
            auto left = [&] { return crossing_point(edges.vertical(i, j), i, j, i, j + 1); };

            switch (code) {
                case 1: case 14: segments.push_back({left(), bottom()}); break;
                case 2: case 13: segments.push_back({bottom(), right()}); break;
                case 3: case 12: segments.push_back({left(), right()}); break;
                case 4: case 11: segments.push_back({right(), top()}); break;
                case 6: case 9: segments.push_back({bottom(), top()}); break;
                case 7: case 8: segments.push_back({left(), top()}); break;
                case 5: case 10: {
                    const double centre = 0.25 * (field[j * n + i] + field[j * n + i + 1] +
                                                  field[(j + 1) * n + i + 1] + field[(j + 1) * n + i]);
                    const bool joined = (centre >= 0.0) == (code == 5);
                    if (joined) {
                        segments.push_back({left(), top()});
                        segments.push_back({bottom(), right()});
                    } else {
                        segments.push_back({left(), bottom()});
                        segments.push_back({right(), top()});
                    }
                    break;
                }
                default: break;
            }
        }
    }
    snap.contours = chain_segments(segments, crossing);
    return snap;
}

}  // namespace sege
