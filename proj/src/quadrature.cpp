#include "chdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace chdg {

namespace {

void check_degree(int deg, const char* who)
{
    if (deg < 0 || deg > max_quadrature_degree)
        throw std::invalid_argument(std::string(who) + ": unsupported exactness degree " +
                                    std::to_string(deg) + " (supported 0.." +
                                    std::to_string(max_quadrature_degree) + ")");
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    // Returns (P_n(x), P_n'(x)) by the three-term recurrence.
    auto legendre = [n](double x) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        nodes[n / 2] = 0.0;
}

EdgeRule quad_edge(int deg)
{
    check_degree(deg, "quad_edge");
    const int n = deg / 2 + 1;
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    EdgeRule rule;
    rule.exactness = 2 * n - 1;
    rule.points.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.points[i] = 0.5 * (x[i] + 1.0);
        rule.weights[i] = 0.5 * w[i];
    }
    return rule;
}

TriangleRule quad_triangle(int deg)
{
    check_degree(deg, "quad_triangle");
    // The collapsed direction carries an extra linear factor, so it needs
    // exactness deg + 1.
    const int n = (deg + 2) / 2 + ((deg + 2) % 2);
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    TriangleRule rule;
    rule.exactness = 2 * n - 2;
    rule.points.reserve(n * n);
    rule.weights.reserve(n * n);
    for (int i = 0; i < n; ++i) {
        const double a = 0.5 * (x[i] + 1.0);
        for (int j = 0; j < n; ++j) {
            const double b = 0.5 * (x[j] + 1.0);
            // (a, b) in unit square -> (a (1 - b), b) with Jacobian (1 - b)
            rule.points.emplace_back(a * (1.0 - b), b);
            rule.weights.push_back(0.25 * w[i] * w[j] * (1.0 - b));
        }
    }
    return rule;
}

} // namespace chdg
