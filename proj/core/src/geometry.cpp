#include "sege/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sege {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(Matrix m, double tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("SymmetricMatrix: matrix is not square");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("SymmetricMatrix: non-finite entry");
    }
    const double asym = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        throw std::invalid_argument("SymmetricMatrix: max |M_ij - M_ji| = " + std::to_string(asym) +
                                    " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::identity(Eigen::Index dim, double scale) {
    return SymmetricMatrix(scale * Matrix::Identity(dim, dim));
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& diag) {
    return SymmetricMatrix(Matrix(diag.asDiagonal()));
}

void SymmetricMatrix::add_outer(const Vector& x, double scale) {
    require_same_dim(x.size(), dim(), "SymmetricMatrix::add_outer");
    m_.noalias() += scale * x * x.transpose();
}

double SymmetricMatrix::quadratic_form(const Vector& x) const {
    require_same_dim(x.size(), dim(), "SymmetricMatrix::quadratic_form");
    return x.dot(m_ * x);
}

double weighted_norm(const Vector& x, const SymmetricMatrix& m) {
    const double q = m.quadratic_form(x);
    if (q < -1e-12) {
        throw std::domain_error("weighted_norm: quadratic form is negative; matrix is not PSD");
    }
    return q <= 0.0 ? 0.0 : std::sqrt(q);
}

double min_eigenvalue(const SymmetricMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double max_eigenvalue(const SymmetricMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(m.dim() - 1);
}

SymmetricMatrix matrix_sqrt(const SymmetricMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success || solver.eigenvalues()(0) <= 0.0) {
        throw std::domain_error("matrix_sqrt: matrix is not positive definite");
    }
    const Matrix& q = solver.eigenvectors();
    Matrix root = q * solver.eigenvalues().cwiseSqrt().asDiagonal() * q.transpose();
    return SymmetricMatrix(0.5 * (root + root.transpose()), 1e-8);
}

SymmetricMatrix spd_inverse(const SymmetricMatrix& m) {
    Eigen::LLT<Matrix> llt(m.matrix());
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("spd_inverse: matrix is not positive definite");
    }
    Matrix inv = llt.solve(Matrix::Identity(m.dim(), m.dim()));
    return SymmetricMatrix(0.5 * (inv + inv.transpose()), 1e-6);
}

double ellipsoid_max_norm(const Vector& center, const Vector& eigvals, const Matrix& eigvecs) {
    // In the eigenbasis of H the stationary points of ||c + z||^2 on the
    // boundary are z_i = h_i c_i / (nu - h_i), with the maximizer at the unique
    // nu > h_max where sum_i h_i c_i^2 / (nu - h_i)^2 = 1.
    const Vector c = eigvecs.transpose() * center;
    const Eigen::Index d = c.size();
    const double h_max = eigvals.maxCoeff();
    const double top_tol = 1e-12 * std::max(1.0, h_max);
    const double c_scale = std::max(1.0, c.norm());

    auto is_top = [&](Eigen::Index i) { return h_max - eigvals(i) <= top_tol; };

    bool hard_case = true;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (is_top(i) && std::abs(c(i)) > 1e-14 * c_scale) hard_case = false;
    }

    auto secular = [&](double nu) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (is_top(i) && hard_case) continue;
            const double gap = nu - eigvals(i);
            s += eigvals(i) * c(i) * c(i) / (gap * gap);
        }
        return s - 1.0;
    };

    Vector z(d);
    if (hard_case && secular(h_max) <= 0.0) {
        double used = 0.0;
        Eigen::Index top_index = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (is_top(i)) {
                z(i) = 0.0;
                top_index = i;
                continue;
            }
            z(i) = eigvals(i) * c(i) / (h_max - eigvals(i));
            used += z(i) * z(i) / eigvals(i);
        }
        z(top_index) = std::sqrt(std::max(0.0, h_max * (1.0 - used)));
        return (c + z).norm();
    }

    double lo = h_max;
    double hi = h_max + std::sqrt(h_max) * c.norm() + 1e-300;
    while (secular(hi) > 0.0) hi = h_max + 2.0 * (hi - h_max);
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (secular(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double nu = 0.5 * (lo + hi);
    for (Eigen::Index i = 0; i < d; ++i) z(i) = eigvals(i) * c(i) / (nu - eigvals(i));
    // Rescale onto the boundary to absorb the residual of the 1-D search.
    double q = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) q += z(i) * z(i) / eigvals(i);
    if (q > 0.0) z /= std::sqrt(q);
    return (c + z).norm();
}

EllipsoidArmSet::EllipsoidArmSet(Vector center, SymmetricMatrix shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
    require_same_dim(center_.size(), shape_.dim(), "EllipsoidArmSet");
    if (center_.size() == 0) throw std::invalid_argument("EllipsoidArmSet: empty dimension");
    if (!center_.allFinite()) throw std::invalid_argument("EllipsoidArmSet: non-finite center");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(shape_.matrix());
    if (solver.info() != Eigen::Success) throw std::domain_error("EllipsoidArmSet: eigensolver failed");
    eigvals_ = solver.eigenvalues();
    eigvecs_ = solver.eigenvectors();
    lambda_min_ = eigvals_(0);
    lambda_max_ = eigvals_(eigvals_.size() - 1);
    if (lambda_min_ <= 0.0) {
        throw std::domain_error("EllipsoidArmSet: shape matrix is not positive definite");
    }

    shape_sqrt_ = matrix_sqrt(shape_);
    Matrix inv = eigvecs_ * eigvals_.cwiseInverse().asDiagonal() * eigvecs_.transpose();
    shape_inv_ = SymmetricMatrix(0.5 * (inv + inv.transpose()), 1e-6);
    max_norm_ = std::max(center_.norm(), ellipsoid_max_norm(center_, eigvals_, eigvecs_));
}

EllipsoidArmSet EllipsoidArmSet::ball(Vector center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("EllipsoidArmSet::ball: radius must be positive");
    const auto d = center.size();
    return EllipsoidArmSet(std::move(center), SymmetricMatrix::identity(d, radius * radius));
}

double EllipsoidArmSet::normalized_distance(const Vector& x) const {
    require_same_dim(x.size(), dim(), "EllipsoidArmSet::normalized_distance");
    const Vector p = eigvecs_.transpose() * (x - center_);
    return p.cwiseAbs2().cwiseQuotient(eigvals_).sum();
}

bool EllipsoidArmSet::contains(const Vector& x, double tol) const {
    return normalized_distance(x) <= 1.0 + tol;
}

Vector EllipsoidArmSet::support(const Vector& theta) const {
    require_same_dim(theta.size(), dim(), "EllipsoidArmSet::support");
    if (theta.norm() <= kMinDirectionNorm) {
        throw std::domain_error("EllipsoidArmSet::support: direction is (numerically) zero");
    }
    const Vector h_theta = shape_.matrix() * theta;
    return center_ + h_theta / std::sqrt(theta.dot(h_theta));
}

Vector EllipsoidArmSet::project(const Vector& y) const {
    require_same_dim(y.size(), dim(), "EllipsoidArmSet::project");
    if (normalized_distance(y) <= 1.0) return y;

    // z_i = h_i p_i / (h_i + mu); psi(mu) = sum h_i p_i^2 / (h_i + mu)^2 - 1 is
    // convex and decreasing, so Newton from mu = 0 increases monotonically to
    // the root.
    const Vector p = eigvecs_.transpose() * (y - center_);
    double mu = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        double psi = -1.0;
        double dpsi = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double s = eigvals_(i) + mu;
            const double w = eigvals_(i) * p(i) * p(i);
            psi += w / (s * s);
            dpsi -= 2.0 * w / (s * s * s);
        }
        if (psi <= 1e-15 || dpsi == 0.0) break;
        mu -= psi / dpsi;
    }
    Vector z(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) z(i) = eigvals_(i) * p(i) / (eigvals_(i) + mu);
    const double q = z.cwiseAbs2().cwiseQuotient(eigvals_).sum();
    if (q > 1.0) z /= std::sqrt(q);
    return center_ + eigvecs_ * z;
}

Vector EllipsoidArmSet::boundary_point(const Vector& unit) const {
    require_same_dim(unit.size(), dim(), "EllipsoidArmSet::boundary_point");
    return center_ + shape_sqrt_.matrix() * unit;
}

}  // namespace sege
