#pragma once

#include <Eigen/Dense>

namespace sege {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Directions with Euclidean norm at or below this are treated as degenerate
// by the support-point computation (it divides by ||theta||_H).
inline constexpr double kMinDirectionNorm = 1e-12;

// Largest tolerated |M_ij - M_ji| when accepting a matrix as symmetric.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Dense symmetric matrix. Construction validates symmetry and stores the
/// exactly symmetrized average (M + M^T) / 2.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(Matrix m, double tol = kSymmetryTolerance);

    static SymmetricMatrix identity(Eigen::Index dim, double scale = 1.0);
    static SymmetricMatrix diagonal(const Vector& diag);

    [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    /// this += scale * x x^T
    void add_outer(const Vector& x, double scale = 1.0);

    [[nodiscard]] double quadratic_form(const Vector& x) const;

private:
    Matrix m_;
};

/// sqrt(x^T M x) for PSD M. Quadratic forms in [-1e-12, 0) are clamped to
/// zero; anything more negative is rejected.
[[nodiscard]] double weighted_norm(const Vector& x, const SymmetricMatrix& m);

[[nodiscard]] double min_eigenvalue(const SymmetricMatrix& m);
[[nodiscard]] double max_eigenvalue(const SymmetricMatrix& m);

/// Symmetric positive-definite square root via eigendecomposition.
[[nodiscard]] SymmetricMatrix matrix_sqrt(const SymmetricMatrix& h);

/// Inverse of a symmetric positive-definite matrix (Cholesky-based).
[[nodiscard]] SymmetricMatrix spd_inverse(const SymmetricMatrix& m);

/// The ellipsoid { x : (x - center)^T H^{-1} (x - center) <= 1 }.
///
/// Everything derived from H (its inverse, square root, extreme eigenvalues
/// and the largest attainable norm L) is computed once at construction.
class EllipsoidArmSet {
public:
    EllipsoidArmSet(Vector center, SymmetricMatrix shape);

    /// Ball of the given radius (H = radius^2 I).
    static EllipsoidArmSet ball(Vector center, double radius);

    [[nodiscard]] Eigen::Index dim() const noexcept { return center_.size(); }
    [[nodiscard]] const Vector& center() const noexcept { return center_; }
    [[nodiscard]] const SymmetricMatrix& shape() const noexcept { return shape_; }
    [[nodiscard]] const SymmetricMatrix& shape_sqrt() const noexcept { return shape_sqrt_; }
    [[nodiscard]] const SymmetricMatrix& shape_inverse() const noexcept { return shape_inv_; }
    [[nodiscard]] double min_shape_eigenvalue() const noexcept { return lambda_min_; }
    [[nodiscard]] double max_shape_eigenvalue() const noexcept { return lambda_max_; }

    /// L = max over the set of ||x||.
    [[nodiscard]] double max_norm() const noexcept { return max_norm_; }

    /// (x - center)^T H^{-1} (x - center)
    [[nodiscard]] double normalized_distance(const Vector& x) const;

    [[nodiscard]] bool contains(const Vector& x, double tol = 0.0) const;

    /// argmax over the set of <x, theta> = center + H theta / ||theta||_H.
    /// Throws std::domain_error if ||theta|| <= kMinDirectionNorm.
    [[nodiscard]] Vector support(const Vector& theta) const;

    /// Euclidean projection onto the set.
    [[nodiscard]] Vector project(const Vector& y) const;

    /// Point center + H^{1/2} u for a unit vector u; lies on the boundary.
    [[nodiscard]] Vector boundary_point(const Vector& unit) const;

private:
    Vector center_;
    SymmetricMatrix shape_;
    SymmetricMatrix shape_sqrt_;
    SymmetricMatrix shape_inv_;
    Matrix eigvecs_;
    Vector eigvals_;
    double lambda_min_ = 0.0;
    double lambda_max_ = 0.0;
    double max_norm_ = 0.0;
};

// Free-function spellings of the arm-set queries.
[[nodiscard]] inline bool ellipsoid_contains(const EllipsoidArmSet& set, const Vector& x, double tol) {
    return set.contains(x, tol);
}

[[nodiscard]] inline Vector ellipsoid_support(const EllipsoidArmSet& set, const Vector& theta) {
    return set.support(theta);
}

/// Largest Euclidean norm attained on the ellipsoid, by a 1-D search on the
/// Lagrange multiplier of max ||c + z||^2 s.t. z^T H^{-1} z = 1.
[[nodiscard]] double ellipsoid_max_norm(const Vector& center, const Vector& eigvals, const Matrix& eigvecs);

}  // namespace sege
