#include "chdg/ch_solver.hpp"
#include "chdg/diagnostics.hpp"
#include "chdg/verification.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace chdg;
using testing::make_disc;
using testing::random_vector;

namespace {

// (a, b) for W_h fields; the reference basis is orthonormal, so the element
// mass matrix is det * I
double inner(const Discretization& d, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const Eigen::Index nw = d.layout().n_scalar;
    double s = 0.0;
    for (std::size_t e = 0; e < d.layout().n_elements; ++e) {
        const Eigen::Index o = static_cast<Eigen::Index>(e) * nw;
        s += d.geometry(e).det * a.segment(o, nw).dot(b.segment(o, nw));
    }
    return s;
}

Eigen::VectorXd project(const Discretization& d, const ScalarFunction& f)
{
    CahnHilliardSolver solver(std::shared_ptr<const Discretization>(&d, [](const auto*) {}),
                              SchemeConfig::uniform(Scheme::ConvexSplitting, 1.0, 1.0, 1));
    return solver.initial_state(f).u;
}

Eigen::VectorXd random_mean_zero(const Discretization& d, std::mt19937_64& rng)
{
    Eigen::VectorXd v = random_vector(static_cast<Eigen::Index>(d.layout().scalar_size()), rng);
    const Eigen::VectorXd one = project(d, [](const Point&) { return 1.0; });
    return v - (inner(d, v, one) / inner(d, one, one)) * one;
}

} // namespace

TEST_CASE("energy of constant states")
{
    const double eps = 0.25;
    const auto disc = make_disc(3, 1);
    CahnHilliardSolver solver(disc, SchemeConfig::uniform(Scheme::ConvexSplitting, eps, 1.0, 1));
    const EnergyReport one = energy(*disc, solver.initial_state([](const Point&) { return 1.0; }), eps);
    CHECK(std::abs(one.total) < 1e-13);
    const EnergyReport zero = energy(*disc, solver.initial_state([](const Point&) { return 0.0; }), eps);
    CHECK(zero.chemical == doctest::Approx(1.0 / (4 * eps)).epsilon(1e-13));
    CHECK(zero.gradient == 0.0);
    CHECK(zero.stabilization == 0.0);
    const State half = solver.initial_state([](const Point&) { return 0.5; });
    CHECK(energy(*disc, half, eps).total == doctest::Approx(0.5625 / (4 * eps)).epsilon(1e-13));
    CHECK(mass(*disc, half) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("energy of a Neumann-compatible cubic profile")
{
    // u = 3x^2 - 2x^3 has zero normal derivative on the boundary and its
    // gradient lies in V_h for k = 2, so the lift reproduces q = -grad u
    const double eps = 0.1;
    const auto disc = make_disc(4, 2);
    CahnHilliardSolver solver(disc, SchemeConfig::uniform(Scheme::ConvexSplitting, eps, 1.0, 1));
    const State s = solver.initial_state([](const Point& x) { return x.x() * x.x() * (3 - 2 * x.x()); });
    const EnergyReport e = energy(*disc, s, eps);
    // int (u^2 - 1)^2 = 2624/5005, int |u'|^2 = 6/5
    CHECK(e.chemical == doctest::Approx(2624.0 / 5005.0 / (4 * eps)).epsilon(1e-12));
    CHECK(e.gradient == doctest::Approx(eps / 2 * 1.2).epsilon(1e-12));
    CHECK(std::abs(e.stabilization) < 1e-20);
    CHECK(e.total == doctest::Approx(e.chemical + e.gradient + e.stabilization));
}

TEST_CASE("negative norm: energy and pairing forms agree")
{
    std::mt19937_64 rng(31);
    for (int k = 0; k <= 1; ++k) {
        const auto disc = make_disc(4, k);
        for (int i = 0; i < 20; ++i) {
            const Eigen::VectorXd v = random_mean_zero(*disc, rng);
            const NegativeNorm nn = negative_norm(*disc, v);
            CHECK(nn.pairing_form > 0.0);
            CHECK(std::abs(nn.energy_form - nn.pairing_form) <= 1e-10 * nn.pairing_form);
            CHECK(nn.norm == doctest::Approx(std::sqrt(nn.pairing_form)));
            if (i < 3) {
                const NegativeNorm scaled = negative_norm(*disc, -3.0 * v);
                CHECK(std::abs(scaled.norm - 3.0 * nn.norm) <= 1e-12 * nn.norm);
            }
        }
    }
}

TEST_CASE("negative norm is bounded by the L2 norm and rejects nonzero means")
{
    std::mt19937_64 rng(37);
    const auto disc = make_disc(4, 1);
    const Eigen::VectorXd v = random_mean_zero(*disc, rng);
    // Poincare: |v|_{-1} <= C_P |v| with C_P = 1/pi on the unit square
    CHECK(negative_norm(*disc, v).norm <= std::sqrt(inner(*disc, v, v)) / std::numbers::pi * 1.01);
    const Eigen::VectorXd one = project(*disc, [](const Point&) { return 1.0; });
    CHECK_THROWS_AS(negative_norm(*disc, v + 1e-3 * one), std::invalid_argument);
}

TEST_CASE("negative norm of an eigenfunction")
{
    // v = cos(pi x): -lap^{-1} v = v / pi^2, so |v|_{-1}^2 = |v|^2 / pi^2 = 1/(2 pi^2)
    const double exact = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    double prev_err = 1.0;
    for (int n : {4, 8, 16}) {
        const auto disc = make_disc(n, 1);
        const Eigen::VectorXd v =
            project(*disc, [](const Point& x) { return std::cos(std::numbers::pi * x.x()); });
        const double err = std::abs(negative_norm(*disc, v).pairing_form - exact);
        CHECK(err < prev_err / 3.0);
        prev_err = err;
    }
    CHECK(prev_err < 1e-4 * exact);
}

TEST_CASE("discrete Laplacian identities")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k <= 2; ++k) {
        const auto disc = make_disc(3, k);
        const auto nw = static_cast<Eigen::Index>(disc->layout().scalar_size());
        const Eigen::VectorXd one = project(*disc, [](const Point&) { return 1.0; });
        CHECK(discrete_laplacian(*disc, one).laplacian.norm() < 1e-11);

        const Eigen::VectorXd u = random_vector(nw, rng), v = random_vector(nw, rng);
        const DiscreteLaplacian lu = discrete_laplacian(*disc, u);
        const DiscreteLaplacian lv = discrete_laplacian(*disc, v);
        const double scale = std::sqrt(inner(*disc, lu.laplacian, lu.laplacian) * inner(*disc, v, v));
        CHECK(std::abs(inner(*disc, lu.laplacian, one)) < 1e-11 * scale);
        CHECK(std::abs(inner(*disc, lu.laplacian, v) - inner(*disc, u, lv.laplacian)) <
              1e-11 * scale);
        const double en = hdg_energy_norm_sq(*disc, lu.q, u, lu.u_hat);
        CHECK(std::abs(-inner(*disc, lu.laplacian, u) - en) <= 1e-11 * en);
    }
}

TEST_CASE("discrete Laplacian converges on a smooth field")
{
    const double pi = std::numbers::pi;
    auto u = [pi](const Point& x) { return std::cos(pi * x.x()) * std::cos(pi * x.y()); };
    std::vector<double> errs;
    for (int n : {4, 8, 16}) {
        const auto disc = make_disc(n, 1);
        const DiscreteLaplacian l = discrete_laplacian(*disc, project(*disc, u));
        errs.push_back(l2_error_scalar(
            *disc, l.laplacian,
            [&](const Point& x, double) { return -2 * pi * pi * u(x); }, 0.0));
    }
    CHECK(errs[1] < errs[0] / 1.8);
    CHECK(errs[2] < errs[1] / 1.8);
}
