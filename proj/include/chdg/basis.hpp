#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace chdg {

/// Number of polynomials of degree <= k in two variables.
constexpr int triangle_dim(int k) { return (k + 1) * (k + 2) / 2; }

/// Orthonormal basis of P^k on the reference triangle.
///
/// Built from centroid-shifted monomials ordered by total degree and
/// orthonormalized with a Cholesky factor of their Gram matrix, so the basis
/// is hierarchical: the first triangle_dim(j) functions span P^j for j <= k.
/// The first function is the constant sqrt(2).
class TriangleBasis {
public:
    explicit TriangleBasis(int degree);

    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exponents_.size()); }

    Eigen::VectorXd values(const Eigen::Vector2d& xi) const;
    /// Reference gradients, one row per basis function.
    Eigen::MatrixX2d gradients(const Eigen::Vector2d& xi) const;

private:
    int degree_;
    std::vector<std::array<int, 2>> exponents_;
    Eigen::MatrixXd coeffs_; // basis = coeffs_ * monomials
};

/// Orthonormal Legendre basis of P^k on [0, 1] (w.r.t. ds).
class EdgeBasis {
public:
    explicit EdgeBasis(int degree);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }

    Eigen::VectorXd values(double s) const;

private:
    int degree_;
};

} // namespace chdg
