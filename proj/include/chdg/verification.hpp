#pragma once

#include "chdg/ch_solver.hpp"
#include "chdg/discretization.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace chdg {

using SpaceTimeVector = std::function<Point(const Point&, double)>;

/// Closed-form solution of the Cahn-Hilliard system with all derivatives
/// needed to build forcing terms and measure errors. p = -grad phi and
/// q = -grad u.
struct ExactSolution {
    SpaceTimeFunction u;
    SpaceTimeFunction phi;
    SpaceTimeFunction u_t;
    SpaceTimeFunction lap_u;
    SpaceTimeFunction lap_phi;
    SpaceTimeVector grad_u;
    SpaceTimeVector grad_phi;
};

/// u = phi = exp(-t) x^2 y^2 (1-x)^2 (1-y)^2 on the unit square.
ExactSolution polynomial_bump_solution();

/// u = phi = c for all time.
ExactSolution constant_solution(double c);

/// How the forcing is sampled at t_n.
enum class SourceTiming {
    /// g1 = u_t - lap phi, g2 = -eps lap u + (u^3 - u)/eps - phi, all at t_n.
    Continuous,
    /// The exact solution satisfies the time-discrete scheme exactly:
    ///   g1 = (u(t_n) - u(t_n - dt)) / dt - lap phi(t_n)
    ///   g2 = -eps lap u(t_n) + f_n(u)/eps - phi(t_n)
    /// with f_n(u) = u(t_n)^3 - u(t_n) (fi) or u(t_n)^3 - u(t_n - dt) (cs).
    /// Only the spatial error is left to measure.
    TimeDiscrete,
};

SourcePair manufactured_sources(const ExactSolution& exact, double epsilon,
                                SourceTiming timing = SourceTiming::Continuous, double dt = 0.0,
                                Scheme scheme = Scheme::FullyImplicit);

/// L2 error of a W_h (or any scalar P^j basis) field against f(., t).
double l2_error_scalar(const Discretization& disc, const Eigen::VectorXd& coeffs,
                       const SpaceTimeFunction& exact, double t);

/// L2 error of a V_h field against the vector function f(., t).
double l2_error_flux(const Discretization& disc, const Eigen::VectorXd& coeffs,
                     const SpaceTimeVector& exact, double t);

struct FieldErrors {
    double q = 0.0;
    double p = 0.0;
    double u = 0.0;
    double phi = 0.0;
};

FieldErrors solution_errors(const Discretization& disc, const State& state,
                            const ExactSolution& exact, double t);

/// Negative-norm error of u: |(Pi u(t) - u_h) - mean|_{-1,h}.
double negative_norm_error(const Discretization& disc, const State& state,
                           const ExactSolution& exact, double t);

/// Orders log(e_i / e_{i+1}) / log(h_i / h_{i+1}). Throws on non-positive
/// errors or non-decreasing h.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

/// Time-step rule. Power: dt = (1/n)^(k + offset) on an n x n mesh (so
/// "h^{k+1}" is offset 1 with h/sqrt(2) = 1/n). Fixed: dt given explicitly.
struct DtRule {
    enum class Kind { Power, Fixed };
    Kind kind = Kind::Power;
    int offset = 1;
    double fixed = 0.0;

    double dt(int n, int k) const;
    static DtRule power(int offset) { return {Kind::Power, offset, 0.0}; }
    static DtRule fixed_step(double dt) { return {Kind::Fixed, 0, dt}; }
};

/// Number of uniform steps reaching T with step dt; throws when T/dt is not
/// an integer to within 1e-9.
int step_count(double final_time, double dt);

struct ConvergenceRow {
    int n = 0;
    double h = 0.0; // element diameter sqrt(2)/n
    double dt = 0.0;
    FieldErrors errors;
    std::optional<double> negative_norm;
    /// max_n |(u^n,1) - (u^0,1) - sum_{m<=n} dt (g1(t_m),1)|
    double max_mass_defect = 0.0;
    int newton_iterations = 0;
    double seconds = 0.0;
};

struct ConvergenceSettings {
    int k = 0;
    Scheme scheme = Scheme::FullyImplicit;
    std::vector<int> levels{4, 8, 16, 32, 64};
    DtRule dt_rule = DtRule::power(1);
    double final_time = 1.0;
    double epsilon = 1.0;
    SourceTiming timing = SourceTiming::TimeDiscrete;
    NewtonSettings newton;
    bool with_negative_norm = false;
    std::function<void(const ConvergenceRow&)> on_level;
};

struct ConvergenceTable {
    int k = 0;
    Scheme scheme = Scheme::FullyImplicit;
    std::vector<ConvergenceRow> rows;

    std::vector<double> hs() const;
    std::vector<double> column(double FieldErrors::*field) const;
};

/// Manufactured-solution study on the unit square with the polynomial bump
/// solution; errors at T per level.
ConvergenceTable run_convergence(const ConvergenceSettings& settings);

} // namespace chdg
