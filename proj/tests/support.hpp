#pragma once

#include "chdg/discretization.hpp"
#include "chdg/mesh.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace testing {

inline std::shared_ptr<const chdg::Discretization> make_disc(int n, int k)
{
    auto mesh = std::make_shared<const chdg::Mesh>(chdg::build_uniform_mesh(n));
    return std::make_shared<const chdg::Discretization>(mesh, k);
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0)
{
    std::uniform_real_distribution<double> d(-scale, scale);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = d(rng);
    return v;
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// reference-triangle monomial integral a! b! / (a + b + 2)!
inline double monomial_integral(int a, int b)
{
    return std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 3.0));
}

} // namespace testing
