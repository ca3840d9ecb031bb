#pragma once

// Brute-force reference computations used to check the library. Nothing here
// calls into the code under test except for plain data accessors.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Ridge regression from the raw history by a dense LDLT solve.
struct DenseRidge {
    Mat design;  // rows are arms
    Vec rewards;
    double lambda;

    Mat information() const {
        return lambda * Mat::Identity(design.cols(), design.cols()) + design.transpose() * design;
    }
    Mat information_inverse() const {
        return information().ldlt().solve(Mat::Identity(design.cols(), design.cols()));
    }
    Vec estimate() const { return information().ldlt().solve(design.transpose() * rewards); }
};

inline double lcb(const Vec& x, const Vec& theta_hat, const Mat& v_inv, double r) {
    return x.dot(theta_hat) - r * std::sqrt(std::max(0.0, x.dot(v_inv * x)));
}

// Symmetric square root from a 2x2-safe eigendecomposition done by hand.
inline Mat sqrt_2x2(const Mat& h) {
    const double a = h(0, 0), b = h(0, 1), d = h(1, 1);
    // sqrt of [[a,b],[b,d]] = (H + s I) / t with s = sqrt(det), t = sqrt(tr + 2 s).
    const double s = std::sqrt(a * d - b * b);
    const double t = std::sqrt(a + d + 2.0 * s);
    Mat r(2, 2);
    r << (a + s) / t, b / t, b / t, (d + s) / t;
    return r;
}

// Maximum of the lower confidence bound over a planar ellipsoid by grid
// search in polar coordinates around the centre: `angles` directions times
// `rings` radii (10^5 points for 1000 x 100), then a second grid of the same
// size over the +-2 cell window around the best coarse point. The origin is
// added when feasible since the bound has a kink there.
inline double grid_max_lcb(const Vec& center, const Mat& shape, const Vec& theta_hat, const Mat& v_inv, double r,
                           int angles = 1000, int rings = 100) {
    const Mat root = sqrt_2x2(shape);
    auto point = [&](double phi, double rho) {
        Vec u(2);
        u << std::cos(phi), std::sin(phi);
        return Vec(center + rho * (root * u));
    };
    const double dphi = 2.0 * std::numbers::pi / angles;
    const double drho = 1.0 / rings;
    double best = lcb(center, theta_hat, v_inv, r);
    double best_phi = 0.0, best_rho = 0.0;
    for (int a = 0; a < angles; ++a) {
        for (int k = 1; k <= rings; ++k) {
            const double v = lcb(point(a * dphi, k * drho), theta_hat, v_inv, r);
            if (v > best) {
                best = v;
                best_phi = a * dphi;
                best_rho = k * drho;
            }
        }
    }
    const double lo = std::max(0.0, best_rho - 2.0 * drho), hi = std::min(1.0, best_rho + 2.0 * drho);
    for (int a = 0; a < angles; ++a) {
        const double phi = best_phi - 2.0 * dphi + 4.0 * dphi * a / (angles - 1);
        for (int k = 0; k < rings; ++k) {
            const double rho = lo + (hi - lo) * k / (rings - 1);
            best = std::max(best, lcb(point(phi, rho), theta_hat, v_inv, r));
        }
    }
    // Origin inside the ellipsoid: c^T H^{-1} c <= 1.
    if (center.dot(shape.ldlt().solve(center)) <= 1.0) best = std::max(best, 0.0);
    return best;
}

// Largest <x, theta> over `count` boundary points of a planar ellipsoid.
inline double best_on_boundary(const Vec& center, const Mat& shape, const Vec& theta, int count) {
    const Mat root = sqrt_2x2(shape);
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / count;
        Vec u(2);
        u << std::cos(phi), std::sin(phi);
        best = std::max(best, (center + root * u).dot(theta));
    }
    return best;
}

// max_{x in ellipsoid} <x, theta> = <c, theta> + sqrt(theta^T H theta).
inline double support_value(const Vec& center, const Mat& shape, const Vec& theta) {
    return center.dot(theta) + std::sqrt(theta.dot(shape * theta));
}

// Random symmetric positive-definite matrix with eigenvalues in [lo, hi].
inline Mat random_spd(int d, double lo, double hi, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Mat> qr(g);
    const Mat q = qr.householderQ();
    Vec ev(d);
    for (int i = 0; i < d; ++i) ev(i) = std::exp(u(rng));
    Mat m = q * ev.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
}

inline Vec random_unit(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec v(d);
    do {
        for (int i = 0; i < d; ++i) v(i) = n(rng);
    } while (v.norm() < 1e-9);
    return v / v.norm();
}

}  // namespace oracle
