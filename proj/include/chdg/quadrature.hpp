#pragma once

#include <Eigen/Dense>

#include <vector>

namespace chdg {

/// Quadrature on the reference triangle {x, y >= 0, x + y <= 1}.
struct TriangleRule {
    std::vector<Eigen::Vector2d> points;
    std::vector<double> weights;
    int exactness = 0;

    std::size_t size() const { return weights.size(); }
};

/// Quadrature on the unit interval [0, 1].
struct EdgeRule {
    std::vector<double> points;
    std::vector<double> weights;
    int exactness = 0;

    std::size_t size() const { return weights.size(); }
};

/// Highest exactness degree the rule builders accept.
inline constexpr int max_quadrature_degree = 60;

/// Gauss-Legendre rule with n points on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss rule on [0, 1] exact for polynomials of degree <= deg.
EdgeRule quad_edge(int deg);

/// Collapsed (Duffy) tensor Gauss rule exact for polynomials of degree <= deg.
/// All weights are positive.
TriangleRule quad_triangle(int deg);

} // namespace chdg
