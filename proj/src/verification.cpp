#include "chdg/verification.hpp"

#include "chdg/diagnostics.hpp"
#include "chdg/projection.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace chdg {

namespace {

Eigen::Index ix(std::size_t e) { return static_cast<Eigen::Index>(e); }

// g(s) = s^2 (1 - s)^2 and its first two derivatives
double bump(double s) { return s * s * (1.0 - s) * (1.0 - s); }
double bump_d1(double s) { return 2.0 * s * (1.0 - s) * (1.0 - 2.0 * s); }
double bump_d2(double s) { return 2.0 - 12.0 * s + 12.0 * s * s; }

double integrate_over_mesh(const Discretization& disc, const SpaceTimeFunction& f, double t)
{
    const BasisTable& table = disc.accurate_table();
    double sum = 0.0;
    for (std::size_t e = 0; e < disc.layout().n_elements; ++e) {
        const ElementGeometry& geom = disc.geometry(e);
        for (std::size_t q = 0; q < table.rule.size(); ++q)
            sum += table.rule.weights[q] * geom.det * f(geom.map(table.rule.points[q]), t);
    }
    return sum;
}

} // namespace

ExactSolution polynomial_bump_solution()
{
    ExactSolution ex;
    auto u = [](const Point& x, double t) { return std::exp(-t) * bump(x.x()) * bump(x.y()); };
    auto grad = [](const Point& x, double t) {
        const double s = std::exp(-t);
        return Point(s * bump_d1(x.x()) * bump(x.y()), s * bump(x.x()) * bump_d1(x.y()));
    };
    auto lap = [](const Point& x, double t) {
        return std::exp(-t) *
               (bump_d2(x.x()) * bump(x.y()) + bump(x.x()) * bump_d2(x.y()));
    };
    ex.u = u;
    ex.phi = u;
    ex.u_t = [u](const Point& x, double t) { return -u(x, t); };
    ex.lap_u = lap;
    ex.lap_phi = lap;
    ex.grad_u = grad;
    ex.grad_phi = grad;
    return ex;
}

ExactSolution constant_solution(double c)
{
    ExactSolution ex;
    ex.u = [c](const Point&, double) { return c; };
    ex.phi = ex.u;
    ex.u_t = [](const Point&, double) { return 0.0; };
    ex.lap_u = ex.u_t;
    ex.lap_phi = ex.u_t;
    ex.grad_u = [](const Point&, double) { return Point(0.0, 0.0); };
    ex.grad_phi = ex.grad_u;
    return ex;
}

SourcePair manufactured_sources(const ExactSolution& exact, double epsilon, SourceTiming timing,
                                double dt, Scheme scheme)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("manufactured_sources: epsilon must be positive");
    SourcePair src;
    if (timing == SourceTiming::Continuous) {
        src.g1 = [exact](const Point& x, double t) { return exact.u_t(x, t) - exact.lap_phi(x, t); };
        src.g2 = [exact, epsilon](const Point& x, double t) {
            const double u = exact.u(x, t);
            return -epsilon * exact.lap_u(x, t) + (u * u * u - u) / epsilon - exact.phi(x, t);
        };
        return src;
    }
    if (!(dt > 0.0))
        throw std::invalid_argument("manufactured_sources: time-discrete forcing needs dt > 0");
    src.g1 = [exact, dt](const Point& x, double t) {
        return (exact.u(x, t) - exact.u(x, t - dt)) / dt - exact.lap_phi(x, t);
    };
    const bool split = scheme == Scheme::ConvexSplitting;
    src.g2 = [exact, epsilon, dt, split](const Point& x, double t) {
        const double u = exact.u(x, t);
        const double lagged = split ? exact.u(x, t - dt) : u;
        return -epsilon * exact.lap_u(x, t) + (u * u * u - lagged) / epsilon - exact.phi(x, t);
    };
    return src;
}

double l2_error_scalar(const Discretization& disc, const Eigen::VectorXd& coeffs,
                       const SpaceTimeFunction& exact, double t)
{
    const BasisTable& table = disc.accurate_table();
    const int nw = disc.layout().n_scalar;
    double sum = 0.0;
    for (std::size_t e = 0; e < disc.layout().n_elements; ++e) {
        const ElementGeometry& geom = disc.geometry(e);
        const Eigen::VectorXd vals = table.values * coeffs.segment(ix(e) * nw, nw);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const double d = vals[ix(q)] - exact(geom.map(table.rule.points[q]), t);
            sum += table.rule.weights[q] * geom.det * d * d;
        }
    }
    return std::sqrt(sum);
}

double l2_error_flux(const Discretization& disc, const Eigen::VectorXd& coeffs,
                     const SpaceTimeVector& exact, double t)
{
    const BasisTable& table = disc.accurate_flux_table();
    const int nv = disc.layout().n_flux_scalar;
    double sum = 0.0;
    for (std::size_t e = 0; e < disc.layout().n_elements; ++e) {
        const ElementGeometry& geom = disc.geometry(e);
        const Eigen::VectorXd vx = table.values * coeffs.segment(ix(e) * 2 * nv, nv);
        const Eigen::VectorXd vy = table.values * coeffs.segment(ix(e) * 2 * nv + nv, nv);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Point ex = exact(geom.map(table.rule.points[q]), t);
            const double dx = vx[ix(q)] - ex.x();
            const double dy = vy[ix(q)] - ex.y();
            sum += table.rule.weights[q] * geom.det * (dx * dx + dy * dy);
        }
    }
    return std::sqrt(sum);
}

FieldErrors solution_errors(const Discretization& disc, const State& state,
                            const ExactSolution& exact, double t)
{
    auto neg = [](const SpaceTimeVector& g) {
        return SpaceTimeVector([g](const Point& x, double tt) { return Point(-g(x, tt)); });
    };
    FieldErrors err;
    err.q = l2_error_flux(disc, state.q, neg(exact.grad_u), t);
    err.p = l2_error_flux(disc, state.p, neg(exact.grad_phi), t);
    err.u = l2_error_scalar(disc, state.u, exact.u, t);
    err.phi = l2_error_scalar(disc, state.phi, exact.phi, t);
    return err;
}

double negative_norm_error(const Discretization& disc, const State& state,
                           const ExactSolution& exact, double t)
{
    const auto& lay = disc.layout();
    const int nw = lay.n_scalar;
    Eigen::VectorXd diff(state.u.size());
    const auto& rule = disc.accurate_table().rule;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const ScalarFunction f = [&](const Point& x) { return exact.u(x, t); };
        diff.segment(ix(e) * nw, nw) =
            l2_project_element(f, disc.scalar_basis(), disc.geometry(e), rule) -
            state.u.segment(ix(e) * nw, nw);
    }
    double area = 0.0;
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        area += disc.geometry(e).area;
    const double mean = mass(disc, diff) / area;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        // coefficients of the constant 1 in an orthonormal basis are its moments / det
        const ElementGeometry& geom = disc.geometry(e);
        diff.segment(ix(e) * nw, nw) -= mean * disc.scalar_basis_integrals(e) / geom.det;
    }
    return negative_norm(disc, diff, 1e-10 * std::max(1.0, diff.lpNorm<Eigen::Infinity>())).norm;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs)
{
    if (errors.size() != hs.size())
        throw std::invalid_argument("eoc: errors and hs differ in length");
    std::vector<double> orders;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw std::invalid_argument("eoc: non-positive error at level " + std::to_string(i) +
                                        " (exact reproduction?)");
        if (i > 0 && !(hs[i] < hs[i - 1]))
            throw std::invalid_argument("eoc: mesh sizes must strictly decrease");
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
    return orders;
}

double DtRule::dt(int n, int k) const
{
    if (kind == Kind::Fixed)
        return fixed;
    return std::pow(1.0 / n, k + offset);
}

int step_count(double final_time, double dt)
{
    if (!(dt > 0.0) || !(final_time > 0.0))
        throw std::invalid_argument("step_count: T and dt must be positive");
    const double ratio = final_time / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("step_count: T / dt = " + std::to_string(ratio) +
                                    " is not a whole number of steps");
    return static_cast<int>(rounded);
}

std::vector<double> ConvergenceTable::hs() const
{
    std::vector<double> out;
    for (const auto& r : rows)
        out.push_back(r.h);
    return out;
}

std::vector<double> ConvergenceTable::column(double FieldErrors::*field) const
{
    std::vector<double> out;
    for (const auto& r : rows)
        out.push_back(r.errors.*field);
    return out;
}

ConvergenceTable run_convergence(const ConvergenceSettings& settings)
{
    const ExactSolution exact = polynomial_bump_solution();
    ConvergenceTable table;
    table.k = settings.k;
    table.scheme = settings.scheme;
    for (int n : settings.levels) {
        const auto start = std::chrono::steady_clock::now();
        auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(n));
        auto disc = std::make_shared<const Discretization>(mesh, settings.k);

        ConvergenceRow row;
        row.n = n;
        row.h = std::sqrt(2.0) / n;
        row.dt = settings.dt_rule.dt(n, settings.k);
        SchemeConfig cfg = SchemeConfig::uniform(settings.scheme, settings.epsilon,
                                                 settings.final_time,
                                                 step_count(settings.final_time, row.dt));
        cfg.newton = settings.newton;
        cfg.validate();
        const SourcePair sources =
            manufactured_sources(exact, settings.epsilon, settings.timing, cfg.dt, settings.scheme);
        CahnHilliardSolver solver(disc, cfg, sources);

        const State initial =
            solver.initial_state([&](const Point& x) { return exact.u(x, 0.0); });
        double expected_mass = mass(*disc, initial);
        Observer track_mass = [&](const State& s, const StepReport& rep) {
            expected_mass += cfg.dt * integrate_over_mesh(*disc, sources.g1, s.time);
            row.max_mass_defect =
                std::max(row.max_mass_defect, std::abs(mass(*disc, s) - expected_mass));
            row.newton_iterations += rep.newton_iterations;
        };
        RunSummary summary;
        try {
            summary = solver.run(initial, {track_mass});
        } catch (const StepFailure& err) {
            throw StepFailure("level n=" + std::to_string(n) + ": " + err.what(), err.step(),
                              err.last_residual());
        }
        const double t_final = summary.final_state.time;
        row.errors = solution_errors(*disc, summary.final_state, exact, t_final);
        if (settings.with_negative_norm)
            row.negative_norm = negative_norm_error(*disc, summary.final_state, exact, t_final);
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        table.rows.push_back(row);
        if (settings.on_level)
            settings.on_level(row);
    }
    return table;
}

} // namespace chdg
