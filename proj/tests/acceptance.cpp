// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// mandatory criterion fails. Set CHDG_ACCEPTANCE_FULL=1 to add the n=64
// level for k=1 and the full-size spinodal run (both slow).

#include "chdg/ch_solver.hpp"
#include "chdg/condensation.hpp"
#include "chdg/diagnostics.hpp"
#include "chdg/drivers.hpp"
#include "chdg/projection.hpp"
#include "chdg/trace_system.hpp"
#include "chdg/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

using namespace chdg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void report(int id, const char* name, const Outcome& o, bool blocking = true)
{
    std::printf("[%s] criterion %d: %s%s%s\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && blocking)
        ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Reference errors at h/sqrt(2) = 1/4 ... 1/64, rows q, p, u, phi, and the
// orders of the finest pair.
struct ReferenceStudy {
    const char* label;
    int k;
    Scheme scheme;
    double err[4][5];
    double order[4];
};

const ReferenceStudy reference_studies[] = {
    {"k=0 fi", 0, Scheme::FullyImplicit,
     {{8.6745E-04, 4.8767E-04, 2.5058E-04, 1.2614E-04, 6.3177E-05},
      {8.9032E-04, 4.9104E-04, 2.5102E-04, 1.2620E-04, 6.3184E-05},
      {2.5400E-04, 6.6287E-05, 1.6746E-05, 4.1975E-06, 1.0501E-06},
      {2.6147E-04, 6.7626E-05, 1.7040E-05, 4.2683E-06, 1.0676E-06}},
     {0.99757, 0.99804, 1.9990, 1.9993}},
    {"k=1 fi", 1, Scheme::FullyImplicit,
     {{1.6623E-04, 4.5233E-05, 1.1599E-05, 2.9202E-06, 7.3141E-07},
      {1.6700E-04, 4.5276E-05, 1.1602E-05, 2.9204E-06, 7.3142E-07},
      {4.8698E-05, 6.1714E-06, 7.7349E-07, 9.6742E-08, 1.2094E-08},
      {4.9152E-05, 6.1862E-06, 7.7391E-07, 9.6753E-08, 1.2095E-08}},
     {1.9973, 1.9974, 2.9998, 3.0000}},
    {"k=0 cs", 0, Scheme::ConvexSplitting,
     {{8.6761E-04, 4.8768E-04, 2.5059E-04, 1.2614E-04, 6.3177E-05},
      {8.9460E-04, 4.9143E-04, 2.5107E-04, 1.2620E-04, 6.3185E-05},
      {2.5759E-04, 6.7122E-05, 1.6952E-05, 4.2490E-06, 1.0629E-06},
      {2.6295E-04, 6.7806E-05, 1.7076E-05, 4.2768E-06, 1.0697E-06}},
     {0.99757, 0.99809, 1.9991, 1.9993}},
    {"k=1 cs", 1, Scheme::ConvexSplitting,
     {{1.5809E-04, 4.3945E-05, 1.1415E-05, 2.8955E-06, 7.2935E-07},
      {1.5896E-04, 4.3991E-05, 1.1418E-05, 2.8957E-06, 7.2940E-07},
      {4.9741E-05, 6.3026E-06, 7.9008E-07, 9.8850E-08, 1.2358E-08},
      {4.9111E-05, 6.1809E-06, 7.7336E-07, 9.6709E-08, 1.2090E-08}},
     {1.9891, 1.9891, 2.9998, 2.9998}},
};

const char* field_names[4] = {"q", "p", "u", "phi"};
double FieldErrors::*field_ptrs[4] = {&FieldErrors::q, &FieldErrors::p, &FieldErrors::u,
                                      &FieldErrors::phi};

int level_index(int n)
{
    for (int i = 0, m = 4; i < 5; ++i, m *= 2)
        if (m == n)
            return i;
    return -1;
}

ConvergenceTable run_table(const ReferenceStudy& pt, const std::vector<int>& levels, bool neg)
{
    ConvergenceSettings s;
    s.k = pt.k;
    s.scheme = pt.scheme;
    s.levels = levels;
    s.with_negative_norm = neg;
    s.on_level = [&](const ConvergenceRow& r) {
        std::printf("  %s n=%-3d q %.4E p %.4E u %.4E phi %.4E (%.1fs)\n", pt.label, r.n,
                    r.errors.q, r.errors.p, r.errors.u, r.errors.phi, r.seconds);
        std::fflush(stdout);
    };
    return run_convergence(s);
}

// L2 distance from q(T) to piecewise P^k on an n x n mesh, a lower bound
// for any flux error on that mesh
double flux_best_approximation(int n, int k)
{
    const ExactSolution ex = polynomial_bump_solution();
    const auto disc = std::make_shared<const Discretization>(
        std::make_shared<const Mesh>(build_uniform_mesh(n)), k);
    const auto& lay = disc->layout();
    const TriangleRule r = quad_triangle(2 * k + 14);
    Eigen::VectorXd q(lay.flux_size());
    auto exact_q = [&](const Point& x, double t) { return Point(-ex.grad_u(x, t)); };
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        q.segment(static_cast<Eigen::Index>(e) * lay.n_flux(), lay.n_flux()) =
            l2_project_element_vector([&](const Point& x) { return exact_q(x, 1.0); },
                                      disc->flux_basis(), disc->geometry(e), r);
    return l2_error_flux(*disc, q, exact_q, 1.0);
}

// finest-pair orders within 0.05; with check_magnitude every error within a
// factor of 2 of the reference, otherwise the ratios are only reported
Outcome compare_with_reference(const ReferenceStudy& pt, const ConvergenceTable& t, bool check_magnitude)
{
    Outcome o;
    double lo = 1e300, hi = 0.0;
    const auto hs = t.hs();
    for (int f = 0; f < 4; ++f) {
        const auto errs = t.column(field_ptrs[f]);
        const double ord = eoc(errs, hs).back();
        o.require(std::abs(ord - pt.order[f]) <= 0.05,
                  std::string("order ") + field_names[f] +
                      fmt(" %.4f vs %.4f", ord, pt.order[f]));
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const double ref = pt.err[f][level_index(t.rows[i].n)];
            const double ratio = errs[i] / ref;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            if (check_magnitude)
                o.require(ratio >= 0.5 && ratio <= 2.0,
                          std::string(field_names[f]) + fmt(" at n=%g off by %.3g", t.rows[i].n, ratio));
        }
    }
    const auto& last = t.rows.back();
    const double ord_u = eoc(t.column(&FieldErrors::u), hs).back();
    o.detail = (o.pass ? "" : o.detail + " | ") +
               fmt("finest n=%g: u %.4E (ref %.4E)", last.n, last.errors.u,
                   pt.err[2][level_index(last.n)]) +
               fmt(", u order %.4f (ref %.4f)", ord_u, pt.order[2]) +
               fmt(", error/ref in [%.2f, %.2f]", lo, hi);
    if (!check_magnitude) {
        const double best = flux_best_approximation(last.n, pt.k);
        o.note(fmt("magnitudes not checked for k=1; reference q at n=%g is %.4E, ", last.n,
                   pt.err[0][level_index(last.n)]) +
               fmt("below the best approximation %.4E of q on this mesh; ours %.4E", best,
                   last.errors.q));
    }
    return o;
}

State random_state(const SpaceLayout& lay, std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> d(-scale, scale);
    State s = zero_state(lay);
    for (Eigen::VectorXd* v : {&s.p, &s.phi, &s.q, &s.u, &s.phi_hat, &s.u_hat})
        for (Eigen::Index i = 0; i < v->size(); ++i)
            (*v)[i] = d(rng);
    return s;
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = d(rng);
    return v;
}

std::shared_ptr<const Discretization> make_disc(int n, int k)
{
    return std::make_shared<const Discretization>(
        std::make_shared<const Mesh>(build_uniform_mesh(n)), k);
}

// A(x;x) from quadrature of the physical fields: |q|^2 + tau |P u - uh|^2
Outcome algebraic_identities()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    double worst_energy = 0.0, worst_sym = 0.0;
    for (int k = 0; k <= 2; ++k) {
        const auto disc = make_disc(2, k);
        const TriangleRule vr = quad_triangle(2 * k + 6);
        const EdgeRule fr = quad_edge(2 * k + 8);
        const int nv = disc->flux_basis().size(), nm = k + 1;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t e = static_cast<std::size_t>(trial) % disc->layout().n_elements;
            const LocalBlocks& b = disc->blocks(e);
            const ElementGeometry& g = disc->geometry(e);
            const Eigen::VectorXd x = random_vector(b.size(), rng);
            const Eigen::VectorXd q = x.head(b.n_flux), u = x.segment(b.n_flux, b.n_scalar),
                                  uh = x.tail(b.n_trace);
            double expected = 0.0;
            for (std::size_t i = 0; i < vr.size(); ++i) {
                const Eigen::VectorXd v = disc->flux_basis().values(vr.points[i]);
                const double qx = v.dot(q.head(nv)), qy = v.dot(q.tail(nv));
                expected += vr.weights[i] * g.det * (qx * qx + qy * qy);
            }
            const auto& faces = disc->mesh().element_faces(e);
            for (int lf = 0; lf < 3; ++lf) {
                const auto f = static_cast<std::size_t>(faces[lf]);
                const Eigen::VectorXd pu = l2_project_face(
                    [&](const Point& p) { return disc->scalar_basis().values(g.pullback(p)).dot(u); },
                    disc->trace_basis(), disc->mesh(), f, fr);
                expected += disc->mesh().face_length(f) / g.diameter *
                            (pu - uh.segment(lf * nm, nm)).squaredNorm();
            }
            worst_energy = std::max(worst_energy, std::abs(x.dot(b.a * x) - expected) / expected);

            Eigen::VectorXd dsign = -Eigen::VectorXd::Ones(b.size());
            dsign.head(b.n_flux).setOnes();
            const Eigen::VectorXd y = random_vector(b.size(), rng);
            const double lhs = dsign.cwiseProduct(x).dot(b.a * y);
            const double rhs = dsign.cwiseProduct(y).dot(b.a * x);
            worst_sym = std::max(worst_sym, std::abs(lhs - rhs) / (b.a.norm() * x.norm() * y.norm()));
        }
    }
    o.require(worst_energy <= 1e-12, "energy identity");
    o.require(worst_sym <= 1e-12, "symmetry identity");
    o.note(fmt("worst relative deviation: energy %.2e, symmetry %.2e (k=0,1,2, 100 vectors each)",
               worst_energy, worst_sym));
    return o;
}

Outcome condensation_correctness()
{
    Outcome o;
    std::mt19937_64 rng(7);
    double worst_trace = 0.0, worst_interior = 0.0, worst_local = 0.0;
    for (int k = 0; k <= 2; ++k)
        for (Scheme scheme : {Scheme::FullyImplicit, Scheme::ConvexSplitting})
            for (int n : {1, 2}) {
                const auto disc = make_disc(n, k);
                const auto& lay = disc->layout();
                CahnHilliardSolver solver(disc, SchemeConfig::uniform(scheme, 0.4, 0.1, 4),
                                          manufactured_sources(polynomial_bump_solution(), 0.4));
                const State prev = random_state(lay, rng, 0.5);
                State it = random_state(lay, rng, 0.5);
                it.step = 1;

                const ResidualAndJacobian rj = solver.residual_and_jacobian(it, prev);
                const Eigen::MatrixXd jac(solver.assemble_jacobian(rj));
                const Eigen::VectorXd delta = jac.fullPivLu().solve(-rj.residual);

                const Eigen::Index ni = solver.n_interior_local();
                TraceSystem ts(disc->mesh(), 2, lay.n_modes);
                std::vector<ElementSystem> sys;
                std::vector<CondensedElement> cond;
                for (std::size_t e = 0; e < lay.n_elements; ++e) {
                    sys.push_back(solver.element_system(e, it, prev));
                    cond.push_back(condense(sys.back().jacobian, -sys.back().residual, ni, e));
                    ts.add_element(e, cond.back().schur, cond.back().rhs);
                }
                const Eigen::VectorXd dt = solve_trace(ts);
                worst_trace = std::max(worst_trace, (dt - delta.tail(dt.size())).norm() / delta.norm());
                for (std::size_t e = 0; e < lay.n_elements; ++e) {
                    const Eigen::VectorXd xt = ts.gather(e, dt);
                    const Eigen::VectorXd xi = cond[e].reconstruct(xt);
                    const auto ie = static_cast<Eigen::Index>(e);
                    worst_interior = std::max(
                        worst_interior, (xi - delta.segment(ie * ni, ni)).norm() / delta.norm());
                    // interior rows of the element system: K_II x_I + K_IT x_T = -R_I
                    const Eigen::MatrixXd& k_loc = sys[e].jacobian;
                    const Eigen::VectorXd r = k_loc.topLeftCorner(ni, ni) * xi +
                                              k_loc.topRightCorner(ni, xt.size()) * xt +
                                              sys[e].residual.head(ni);
                    const double scale = k_loc.topRows(ni).norm() * (xi.norm() + xt.norm()) +
                                         sys[e].residual.head(ni).norm();
                    worst_local = std::max(worst_local, r.norm() / scale);
                }
            }
    o.require(worst_trace <= 1e-10, "trace unknowns differ from monolithic solve");
    o.require(worst_interior <= 1e-10, "reconstructed interiors differ from monolithic solve");
    o.require(worst_local <= 1e-10, "local equations not satisfied");
    o.note(fmt("traces %.2e, interiors %.2e, local residual %.2e (n=1,2; k=0,1,2; fi/cs)",
               worst_trace, worst_interior, worst_local));
    return o;
}

Outcome negative_norm_consistency()
{
    Outcome o;
    std::mt19937_64 rng(99);
    double worst = 0.0, worst_hom = 0.0;
    for (int k = 0; k <= 1; ++k) {
        const auto disc = make_disc(8, k);
        for (int i = 0; i < 20; ++i) {
            const Eigen::VectorXd v = random_mean_zero_field(*disc, rng(), 1.0);
            const NegativeNorm nn = negative_norm(*disc, v);
            worst = std::max(worst, std::abs(nn.energy_form - nn.pairing_form) / nn.pairing_form);
            const double alpha = -2.5;
            const NegativeNorm scaled = negative_norm(*disc, alpha * v);
            worst_hom = std::max(worst_hom, std::abs(scaled.norm - std::abs(alpha) * nn.norm) /
                                                (std::abs(alpha) * nn.norm));
        }
    }
    o.require(worst <= 1e-10, "two expressions disagree");
    o.require(worst_hom <= 1e-12, "homogeneity violated");
    o.note(fmt("energy vs pairing %.2e, homogeneity %.2e (20 fields, k=0,1)", worst, worst_hom));
    return o;
}

Outcome newton_quality()
{
    Outcome o;
    std::mt19937_64 rng(5);
    double worst_fd = 0.0;
    for (int k = 0; k <= 1; ++k)
        for (Scheme scheme : {Scheme::FullyImplicit, Scheme::ConvexSplitting}) {
            const auto disc = make_disc(4, k);
            CahnHilliardSolver solver(disc, SchemeConfig::uniform(scheme, 0.3, 0.1, 4),
                                      manufactured_sources(polynomial_bump_solution(), 0.3));
            const State prev = random_state(disc->layout(), rng, 0.6);
            State it = random_state(disc->layout(), rng, 0.6);
            it.step = 1;
            const ResidualAndJacobian rj = solver.residual_and_jacobian(it, prev);
            const Eigen::SparseMatrix<double> jac = solver.assemble_jacobian(rj);
            const Eigen::VectorXd x = solver.pack(it);
            for (int trial = 0; trial < 3; ++trial) {
                const Eigen::VectorXd v = random_vector(x.size(), rng);
                const double h = 1e-6;
                const Eigen::VectorXd rp =
                    solver.residual_and_jacobian(solver.unpack(x + h * v, 1, 0.025), prev).residual;
                const Eigen::VectorXd rm =
                    solver.residual_and_jacobian(solver.unpack(x - h * v, 1, 0.025), prev).residual;
                const Eigen::VectorXd jv = jac * v;
                worst_fd = std::max(worst_fd, ((rp - rm) / (2 * h) - jv).norm() / jv.norm());
            }
        }
    o.require(worst_fd <= 1e-5, "Jacobian mismatch");

    // manufactured steps with the reference parameters (eps = 1, dt = h^2 for
    // k = 1), started from perturbed exact data so several iterations are needed
    double min_order = 1e9;
    int pairs = 0;
    const ExactSolution ex = polynomial_bump_solution();
    for (Scheme scheme : {Scheme::FullyImplicit, Scheme::ConvexSplitting}) {
        const double eps = 1.0;
        const auto disc = make_disc(8, 1);
        SchemeConfig cfg = SchemeConfig::uniform(scheme, eps, 1.0 / 64, 1);
        cfg.newton.abs_tol = 1e-13;
        cfg.newton.rel_tol = 0.0;
        CahnHilliardSolver solver(
            disc, cfg, manufactured_sources(ex, eps, SourceTiming::TimeDiscrete, cfg.dt, scheme));
        const double pi = std::acos(-1.0);
        const State init = solver.initial_state([&](const Point& p) {
            return ex.u(p, 0.0) + 10.0 * std::cos(pi * p.x()) * std::cos(2 * pi * p.y());
        });
        StepReport rep;
        solver.step(init, &rep);
        const auto& r = rep.residual_history;
        std::printf("  Newton residuals (%s):", to_string(scheme).c_str());
        for (double v : r)
            std::printf(" %.2e", v);
        std::printf("\n");
        // orders from consecutive reductions once the iterates are inside the
        // basin (residual below 10% of the first) and above round-off
        for (std::size_t i = 0; i + 2 < r.size(); ++i) {
            if (r[i] > 0.1 * r[0] || r[i + 2] < 1e-11)
                continue;
            min_order = std::min(min_order, std::log(r[i + 2] / r[i + 1]) / std::log(r[i + 1] / r[i]));
            ++pairs;
        }
    }
    o.require(pairs > 0, "no contraction pairs above round-off");
    o.require(min_order >= 1.8, "contraction slower than quadratic");
    o.note(fmt("FD Jacobian deviation %.2e; smallest observed contraction order %.3f", worst_fd,
               pairs > 0 ? min_order : 0.0));
    return o;
}

} // namespace

int main()
{
    const char* full_env = std::getenv("CHDG_ACCEPTANCE_FULL");
    const bool full = full_env && std::string(full_env) == "1";
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("trace solver backend: %s%s\n", TraceSolver::backend_name(),
                full ? ", full mode" : "");

    const std::vector<int> k0_levels{4, 8, 16, 32, 64};
    const std::vector<int> k1_levels =
        full ? std::vector<int>{4, 8, 16, 32, 64} : std::vector<int>{4, 8, 16, 32};
    std::vector<ConvergenceTable> tables;
    double worst_mass = 0.0;
    for (const ReferenceStudy& pt : reference_studies) {
        const bool neg = pt.k == 1 && pt.scheme == Scheme::FullyImplicit;
        try {
            tables.push_back(run_table(pt, pt.k == 0 ? k0_levels : k1_levels, neg));
        } catch (const std::exception& err) {
            std::printf("  %s failed: %s\n", pt.label, err.what());
            tables.emplace_back();
        }
        for (const auto& row : tables.back().rows)
            worst_mass = std::max(worst_mass, row.max_mass_defect);
    }

    auto table_outcome = [&](int i) {
        if (tables[i].rows.size() < 2)
            return Outcome{false, "run failed"};
        return compare_with_reference(reference_studies[i], tables[i], reference_studies[i].k == 0);
    };
    report(1, "reference errors, k=0 fi", table_outcome(0));
    Outcome c2 = table_outcome(1);
    if (!full)
        c2.detail += " [n=64 skipped; set CHDG_ACCEPTANCE_FULL=1]";
    report(2, "reference errors, k=1 fi", c2);
    Outcome c3 = table_outcome(2);
    const Outcome c3b = table_outcome(3);
    c3.pass = c3.pass && c3b.pass;
    c3.detail = "k=0: " + c3.detail + " || k=1: " + c3b.detail;
    report(3, "reference errors, cs", c3);

    // unforced runs of both schemes for the literal conservation statement
    double worst_unforced = 0.0;
    Outcome c5;
    {
        for (Scheme scheme : {Scheme::FullyImplicit, Scheme::ConvexSplitting}) {
            const auto disc = make_disc(8, 1);
            CahnHilliardSolver solver(disc, SchemeConfig::uniform(scheme, 0.5, 0.05, 10));
            const State init = solver.initial_state(random_mean_zero_field(*disc, 3, 0.5));
            const double m0 = mass(*disc, init);
            solver.run(init, {[&](const State& s, const StepReport&) {
                           worst_unforced = std::max(worst_unforced, std::abs(mass(*disc, s) - m0));
                       }});
        }

        const int n = full ? 64 : 32;
        const double T = full ? 0.05 : 0.01;
        const auto disc = make_disc(n, 1);
        SchemeConfig cfg = SchemeConfig::uniform(Scheme::ConvexSplitting, 0.05, T,
                                                 step_count(T, 1e-4));
        CahnHilliardSolver solver(disc, cfg);
        const State init = solver.initial_state(random_mean_zero_field(*disc, 1));
        const double m0 = mass(*disc, init);
        double e_prev = energy(*disc, init, cfg.epsilon).total;
        const double e0 = e_prev;
        double worst_rise = -1e300;
        solver.run(init, {[&](const State& s, const StepReport&) {
                       const double e = energy(*disc, s, cfg.epsilon).total;
                       worst_rise = std::max(worst_rise, e - e_prev);
                       e_prev = e;
                       worst_unforced = std::max(worst_unforced, std::abs(mass(*disc, s) - m0));
                   }});
        c5.require(worst_rise <= 1e-10, "energy increased");
        c5.note(fmt("n=%g, %g steps, E %.6e -> ", n, cfg.steps, e0) +
                fmt("%.6e, largest step change %+.3e", e_prev, worst_rise) +
                (full ? "" : " [reduced size; full size with CHDG_ACCEPTANCE_FULL=1]"));
    }
    Outcome c4;
    c4.require(worst_mass <= 1e-9, "forced mass balance");
    c4.require(worst_unforced <= 1e-9, "unforced mass drift");
    c4.note(fmt("unforced max |(u^n,1)-(u^0,1)| %.2e; forced runs max |(u^n,1)-(u^0,1)-sum dt(g1,1)| %.2e",
                worst_unforced, worst_mass));
    report(4, "mass conservation", c4);
    report(5, "energy dissipation (cs spinodal)", c5);
    report(6, "algebraic identities", algebraic_identities());
    report(7, "condensation correctness", condensation_correctness());
    report(8, "negative-norm consistency", negative_norm_consistency());
    report(9, "Newton quality", newton_quality());

    Outcome c10;
    const ConvergenceTable& t2 = tables[1];
    if (t2.rows.size() >= 3 && t2.rows[2].negative_norm && t2.rows[1].negative_norm) {
        const double ord = std::log(*t2.rows[1].negative_norm / *t2.rows[2].negative_norm) /
                           std::log(t2.rows[1].h / t2.rows[2].h);
        c10.require(ord >= 2.85, "order too low");
        c10.note(fmt("k=1 fi, levels 4,8,16: |u-u_h|_{-1,h} %.4E at n=16, order %.4f",
                     *t2.rows[2].negative_norm, ord));
    } else {
        c10.require(false, "negative-norm errors unavailable");
    }
    report(10, "negative-norm order (extended, non-blocking)", c10, false);

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %d mandatory criteria failed, %.0f s\n", failures ? "FAILED" : "ALL PASSED",
                failures, secs);
    return failures ? 1 : 0;
}
