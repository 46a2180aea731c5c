#include "chdg/basis.hpp"

#include "chdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chdg {

namespace {

constexpr double centroid = 1.0 / 3.0;

double ipow(double x, int p)
{
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

} // namespace

TriangleBasis::TriangleBasis(int degree) : degree_(degree)
{
    if (degree < 0)
        throw std::invalid_argument("TriangleBasis: negative degree " + std::to_string(degree));
    for (int total = 0; total <= degree; ++total)
        for (int b = 0; b <= total; ++b)
            exponents_.push_back({total - b, b});

    const int n = size();
    const TriangleRule rule = quad_triangle(2 * degree);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        Eigen::VectorXd m(n);
        const double x = rule.points[q].x() - centroid;
        const double y = rule.points[q].y() - centroid;
        for (int i = 0; i < n; ++i)
            m[i] = ipow(x, exponents_[i][0]) * ipow(y, exponents_[i][1]);
        gram.noalias() += rule.weights[q] * m * m.transpose();
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("TriangleBasis: monomial Gram matrix is not positive definite");
    // phi = L^{-1} m is orthonormal and lower-triangular in the monomials
    const Eigen::MatrixXd lower = llt.matrixL();
    coeffs_ = lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
}

Eigen::VectorXd TriangleBasis::values(const Eigen::Vector2d& xi) const
{
    const int n = size();
    const double x = xi.x() - centroid;
    const double y = xi.y() - centroid;
    Eigen::VectorXd m(n);
    for (int i = 0; i < n; ++i)
        m[i] = ipow(x, exponents_[i][0]) * ipow(y, exponents_[i][1]);
    return coeffs_ * m;
}

Eigen::MatrixX2d TriangleBasis::gradients(const Eigen::Vector2d& xi) const
{
    const int n = size();
    const double x = xi.x() - centroid;
    const double y = xi.y() - centroid;
    Eigen::MatrixX2d dm(n, 2);
    for (int i = 0; i < n; ++i) {
        const int a = exponents_[i][0];
        const int b = exponents_[i][1];
        dm(i, 0) = a > 0 ? a * ipow(x, a - 1) * ipow(y, b) : 0.0;
        dm(i, 1) = b > 0 ? b * ipow(x, a) * ipow(y, b - 1) : 0.0;
    }
    return coeffs_ * dm;
}

EdgeBasis::EdgeBasis(int degree) : degree_(degree)
{
    if (degree < 0)
        throw std::invalid_argument("EdgeBasis: negative degree " + std::to_string(degree));
}

Eigen::VectorXd EdgeBasis::values(double s) const
{
    Eigen::VectorXd v(size());
    const double x = 2.0 * s - 1.0;
    double p0 = 1.0, p1 = x;
    v[0] = 1.0;
    if (degree_ >= 1)
        v[1] = std::sqrt(3.0) * x;
    for (int j = 2; j <= degree_; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
        v[j] = std::sqrt(2.0 * j + 1.0) * p2;
    }
    return v;
}

} // namespace chdg
