#include "chdg/ch_solver.hpp"

#include "chdg/gradient_lift.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chdg {

std::string to_string(Scheme scheme)
{
    return scheme == Scheme::FullyImplicit ? "fi" : "cs";
}

SchemeConfig SchemeConfig::uniform(Scheme scheme, double epsilon, double final_time, int steps)
{
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.epsilon = epsilon;
    cfg.final_time = final_time;
    cfg.steps = steps;
    cfg.dt = steps > 0 ? final_time / steps : 0.0;
    cfg.validate();
    return cfg;
}

void SchemeConfig::validate() const
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("SchemeConfig: epsilon must be positive");
    if (!(dt > 0.0) || !(final_time > 0.0) || steps < 1)
        throw std::invalid_argument("SchemeConfig: dt, T and N must be positive");
    if (std::abs(steps * dt - final_time) > 1e-12 * std::max(1.0, final_time))
        throw std::invalid_argument("SchemeConfig: N * dt != T");
    if (!(newton.abs_tol > 0.0) || !(newton.rel_tol >= 0.0) || newton.max_iterations < 1)
        throw std::invalid_argument(
            "SchemeConfig: need abs_tol > 0, rel_tol >= 0 and at least one Newton iteration");
}

bool State::all_finite() const
{
    return p.allFinite() && phi.allFinite() && q.allFinite() && u.allFinite() &&
           phi_hat.allFinite() && u_hat.allFinite();
}

State zero_state(const SpaceLayout& lay)
{
    State s;
    s.p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lay.flux_size()));
    s.q = s.p;
    s.phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lay.scalar_size()));
    s.u = s.phi;
    s.phi_hat = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lay.trace_size()));
    s.u_hat = s.phi_hat;
    return s;
}

CahnHilliardSolver::CahnHilliardSolver(std::shared_ptr<const Discretization> disc, SchemeConfig cfg,
                                       SourcePair sources)
    : disc_(std::move(disc)),
      cfg_(cfg),
      sources_(std::move(sources)),
      trace_system_(disc_->mesh(), 2, disc_->layout().n_modes)
{
    cfg_.validate();
}

Eigen::Index CahnHilliardSolver::n_interior_local() const
{
    const auto& lay = disc_->layout();
    return 2 * (lay.n_flux() + lay.n_scalar);
}

Eigen::Index CahnHilliardSolver::n_trace_local() const
{
    return 6 * disc_->layout().n_modes;
}

Eigen::Index CahnHilliardSolver::monolithic_size() const
{
    const auto& lay = disc_->layout();
    return n_interior_local() * static_cast<Eigen::Index>(lay.n_elements) + trace_system_.size();
}

Eigen::Index CahnHilliardSolver::monolithic_index(std::size_t e, Eigen::Index local) const
{
    const Eigen::Index ni = n_interior_local();
    if (local < ni)
        return static_cast<Eigen::Index>(e) * ni + local;
    return ni * static_cast<Eigen::Index>(disc_->layout().n_elements) +
           trace_system_.element_dofs(e)[static_cast<std::size_t>(local - ni)];
}

State CahnHilliardSolver::initial_state(const ScalarFunction& u0) const
{
    const auto& lay = disc_->layout();
    Eigen::VectorXd u(lay.scalar_size());
    const auto& rule = disc_->accurate_table().rule;
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        u.segment(static_cast<Eigen::Index>(e) * lay.n_scalar, lay.n_scalar) =
            l2_project_element(u0, disc_->scalar_basis(), disc_->geometry(e), rule);
    return initial_state(u);
}

State CahnHilliardSolver::initial_state(const Eigen::VectorXd& u_coeffs) const
{
    const auto& lay = disc_->layout();
    if (u_coeffs.size() != static_cast<Eigen::Index>(lay.scalar_size()))
        throw std::invalid_argument("initial_state: coefficient vector has wrong size");
    State s = zero_state(lay);
    s.u = u_coeffs;
    GradientLift lift = solve_gradient_lift(*disc_, s.u);
    s.q = std::move(lift.q);
    s.u_hat = std::move(lift.u_hat);
    return s;
}

Eigen::VectorXd CahnHilliardSolver::gather_local(std::size_t e, const State& s) const
{
    const auto& lay = disc_->layout();
    const Eigen::Index nf = lay.n_flux(), nw = lay.n_scalar, nm = lay.n_modes;
    const Eigen::Index ie = static_cast<Eigen::Index>(e);
    Eigen::VectorXd x(n_interior_local() + n_trace_local());
    x << s.p.segment(ie * nf, nf), s.phi.segment(ie * nw, nw), s.q.segment(ie * nf, nf),
        s.u.segment(ie * nw, nw), Eigen::VectorXd::Zero(n_trace_local());
    const auto& faces = disc_->mesh().element_faces(e);
    Eigen::Index off = n_interior_local();
    for (const Eigen::VectorXd* trace : {&s.phi_hat, &s.u_hat})
        for (int lf = 0; lf < 3; ++lf, off += nm)
            x.segment(off, nm) = trace->segment(faces[lf] * nm, nm);
    return x;
}

void CahnHilliardSolver::add_local_update(std::size_t e, const Eigen::VectorXd& d, State& s) const
{
    const auto& lay = disc_->layout();
    const Eigen::Index nf = lay.n_flux(), nw = lay.n_scalar;
    const Eigen::Index ie = static_cast<Eigen::Index>(e);
    s.p.segment(ie * nf, nf) += d.segment(0, nf);
    s.phi.segment(ie * nw, nw) += d.segment(nf, nw);
    s.q.segment(ie * nf, nf) += d.segment(nf + nw, nf);
    s.u.segment(ie * nw, nw) += d.segment(2 * nf + nw, nw);
}

ElementSystem CahnHilliardSolver::element_system(std::size_t e, const State& iterate,
                                                 const State& prev) const
{
    const auto& lay = disc_->layout();
    const LocalBlocks& blk = disc_->blocks(e);
    const ElementGeometry& geom = disc_->geometry(e);
    const Eigen::Index nf = lay.n_flux(), nw = lay.n_scalar, nt = 3 * lay.n_modes;
    const Eigen::Index na = nf + nw; // interior size of one A block
    const Eigen::Index ni = 2 * na;
    const double eps = cfg_.epsilon;
    const double dt = cfg_.dt;
    const double t = (prev.step + 1) * dt;

    // local offsets
    const Eigen::Index o_phi = nf, o_q = na, o_u = na + nf;
    const Eigen::Index o_phat = ni, o_uhat = ni + nt;

    const Eigen::VectorXd x = gather_local(e, iterate);
    const Eigen::VectorXd u_prev = prev.u.segment(static_cast<Eigen::Index>(e) * nw, nw);

    ElementSystem es;
    es.jacobian = Eigen::MatrixXd::Zero(ni + 2 * nt, ni + 2 * nt);
    auto& jac = es.jacobian;
    const auto& a = blk.a;

    // first equation in (p, phi, phi_hat): rows/cols [0, na) and [o_phat, o_phat + nt)
    jac.block(0, 0, na, na) = a.topLeftCorner(na, na);
    jac.block(0, o_phat, na, nt) = a.topRightCorner(na, nt);
    jac.block(o_phat, 0, nt, na) = a.bottomLeftCorner(nt, na);
    jac.block(o_phat, o_phat, nt, nt) = a.bottomRightCorner(nt, nt);
    // second equation in (q, u, u_hat), scaled by eps
    jac.block(o_q, o_q, na, na) = eps * a.topLeftCorner(na, na);
    jac.block(o_q, o_uhat, na, nt) = eps * a.topRightCorner(na, nt);
    jac.block(o_uhat, o_q, nt, na) = eps * a.bottomLeftCorner(nt, na);
    jac.block(o_uhat, o_uhat, nt, nt) = eps * a.bottomRightCorner(nt, nt);

    // linear coupling terms
    jac.block(o_phi, o_u, nw, nw) += blk.scalar_mass / dt;
    jac.block(o_u, o_phi, nw, nw) -= blk.scalar_mass;

    es.residual = jac * x;
    es.residual.segment(o_phi, nw) -= blk.scalar_mass * u_prev / dt;

    // nonlinearity
    const BasisTable& nl = disc_->nonlinear_table();
    const Eigen::VectorXd uq = nl.values * x.segment(o_u, nw);
    const Eigen::VectorXd uq_prev = nl.values * u_prev;
    const auto nq = static_cast<Eigen::Index>(nl.rule.size());
    Eigen::VectorXd fval(nq), fder(nq);
    const bool implicit = cfg_.scheme == Scheme::FullyImplicit;
    for (Eigen::Index q = 0; q < nq; ++q) {
        const double w = nl.rule.weights[static_cast<std::size_t>(q)] * geom.det / eps;
        const double uu = uq[q];
        fval[q] = w * (uu * uu * uu - (implicit ? uu : uq_prev[q]));
        fder[q] = w * (3.0 * uu * uu - (implicit ? 1.0 : 0.0));
    }
    es.residual.segment(o_u, nw) += nl.values.transpose() * fval;
    jac.block(o_u, o_u, nw, nw).noalias() += nl.values.transpose() * fder.asDiagonal() * nl.values;

    if (sources_.g1 || sources_.g2) {
        const Eigen::MatrixXd& loads = forcing_loads(t);
        const auto col = static_cast<Eigen::Index>(e);
        es.residual.segment(o_phi, nw) -= loads.col(col).head(nw);
        es.residual.segment(o_u, nw) -= loads.col(col).tail(nw);
    }
    return es;
}

Eigen::VectorXd CahnHilliardSolver::element_residual(std::size_t e, const State& iterate,
                                                     const State& prev) const
{
    const auto& lay = disc_->layout();
    const LocalBlocks& blk = disc_->blocks(e);
    const ElementGeometry& geom = disc_->geometry(e);
    const Eigen::Index nf = lay.n_flux(), nw = lay.n_scalar, nt = 3 * lay.n_modes;
    const Eigen::Index na = nf + nw;
    const Eigen::Index ni = 2 * na;
    const double eps = cfg_.epsilon;
    const double dt = cfg_.dt;
    const double t = (prev.step + 1) * dt;
    const Eigen::Index o_phi = nf, o_u = na + nf;

    const Eigen::VectorXd x = gather_local(e, iterate);
    const Eigen::VectorXd u_prev = prev.u.segment(static_cast<Eigen::Index>(e) * nw, nw);

    Eigen::VectorXd y1(na + nt), y2(na + nt);
    y1 << x.head(na), x.segment(ni, nt);
    y2 << x.segment(na, na), x.segment(ni + nt, nt);
    const Eigen::VectorXd r1 = blk.a * y1;
    const Eigen::VectorXd r2 = eps * (blk.a * y2);

    Eigen::VectorXd res(ni + 2 * nt);
    res << r1.head(na), r2.head(na), r1.tail(nt), r2.tail(nt);
    res.segment(o_phi, nw) += blk.scalar_mass * (x.segment(o_u, nw) - u_prev) / dt;
    res.segment(o_u, nw) -= blk.scalar_mass * x.segment(o_phi, nw);

    const BasisTable& nl = disc_->nonlinear_table();
    const Eigen::VectorXd uq = nl.values * x.segment(o_u, nw);
    const bool implicit = cfg_.scheme == Scheme::FullyImplicit;
    const Eigen::VectorXd uq_prev = implicit ? uq : Eigen::VectorXd(nl.values * u_prev);
    Eigen::VectorXd fval(uq.size());
    for (Eigen::Index q = 0; q < uq.size(); ++q) {
        const double uu = uq[q];
        fval[q] = nl.rule.weights[static_cast<std::size_t>(q)] * geom.det / eps *
                  (uu * uu * uu - uq_prev[q]);
    }
    res.segment(o_u, nw) += nl.values.transpose() * fval;

    if (sources_.g1 || sources_.g2) {
        const Eigen::MatrixXd& loads = forcing_loads(t);
        const auto col = static_cast<Eigen::Index>(e);
        res.segment(o_phi, nw) -= loads.col(col).head(nw);
        res.segment(o_u, nw) -= loads.col(col).tail(nw);
    }
    return res;
}

const Eigen::MatrixXd& CahnHilliardSolver::forcing_loads(double t) const
{
    if (t == forcing_time_)
        return forcing_cache_;
    const auto& lay = disc_->layout();
    const Eigen::Index nw = lay.n_scalar;
    const BasisTable& acc = disc_->accurate_table();
    const auto nq = static_cast<Eigen::Index>(acc.rule.size());
    forcing_cache_.resize(2 * nw, static_cast<Eigen::Index>(lay.n_elements));
    Eigen::VectorXd g1(nq), g2(nq);
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const ElementGeometry& geom = disc_->geometry(e);
        for (Eigen::Index q = 0; q < nq; ++q) {
            const Point xq = geom.map(acc.rule.points[static_cast<std::size_t>(q)]);
            const double w = acc.rule.weights[static_cast<std::size_t>(q)] * geom.det;
            g1[q] = sources_.g1 ? w * sources_.g1(xq, t) : 0.0;
            g2[q] = sources_.g2 ? w * sources_.g2(xq, t) : 0.0;
        }
        const auto col = static_cast<Eigen::Index>(e);
        forcing_cache_.col(col).head(nw) = acc.values.transpose() * g1;
        forcing_cache_.col(col).tail(nw) = acc.values.transpose() * g2;
    }
    forcing_time_ = t;
    return forcing_cache_;
}

ResidualAndJacobian CahnHilliardSolver::residual_and_jacobian(const State& iterate,
                                                              const State& prev) const
{
    const auto& lay = disc_->layout();
    ResidualAndJacobian out;
    out.residual = Eigen::VectorXd::Zero(monolithic_size());
    out.local_jacobians.reserve(lay.n_elements);
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        ElementSystem es = element_system(e, iterate, prev);
        for (Eigen::Index i = 0; i < es.residual.size(); ++i)
            out.residual[monolithic_index(e, i)] += es.residual[i];
        out.local_jacobians.push_back(std::move(es.jacobian));
    }
    return out;
}

Eigen::SparseMatrix<double> CahnHilliardSolver::assemble_jacobian(const ResidualAndJacobian& rj) const
{
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t e = 0; e < rj.local_jacobians.size(); ++e) {
        const auto& jl = rj.local_jacobians[e];
        for (Eigen::Index j = 0; j < jl.cols(); ++j)
            for (Eigen::Index i = 0; i < jl.rows(); ++i)
                if (jl(i, j) != 0.0)
                    trip.emplace_back(monolithic_index(e, i), monolithic_index(e, j), jl(i, j));
    }
    Eigen::SparseMatrix<double> m(monolithic_size(), monolithic_size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Eigen::VectorXd CahnHilliardSolver::pack(const State& s) const
{
    const auto& lay = disc_->layout();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(monolithic_size());
    const Eigen::Index ni = n_interior_local();
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const Eigen::VectorXd xl = gather_local(e, s);
        x.segment(static_cast<Eigen::Index>(e) * ni, ni) = xl.head(ni);
    }
    const Eigen::Index base = ni * static_cast<Eigen::Index>(lay.n_elements);
    for (std::size_t f = 0; f < lay.n_faces; ++f)
        for (int m = 0; m < lay.n_modes; ++m) {
            const Eigen::Index sidx = static_cast<Eigen::Index>(f) * lay.n_modes + m;
            x[base + trace_system_.index(f, 0, m)] = s.phi_hat[sidx];
            x[base + trace_system_.index(f, 1, m)] = s.u_hat[sidx];
        }
    return x;
}

State CahnHilliardSolver::unpack(const Eigen::VectorXd& x, int step, double time) const
{
    const auto& lay = disc_->layout();
    State s = zero_state(lay);
    s.step = step;
    s.time = time;
    const Eigen::Index ni = n_interior_local();
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        add_local_update(e, x.segment(static_cast<Eigen::Index>(e) * ni, ni), s);
    const Eigen::Index base = ni * static_cast<Eigen::Index>(lay.n_elements);
    for (std::size_t f = 0; f < lay.n_faces; ++f)
        for (int m = 0; m < lay.n_modes; ++m) {
            const Eigen::Index sidx = static_cast<Eigen::Index>(f) * lay.n_modes + m;
            s.phi_hat[sidx] = x[base + trace_system_.index(f, 0, m)];
            s.u_hat[sidx] = x[base + trace_system_.index(f, 1, m)];
        }
    return s;
}

std::string CahnHilliardSolver::failure_hint() const
{
    if (cfg_.scheme != Scheme::FullyImplicit)
        return {};
    std::ostringstream msg;
    msg << "; the fully implicit scheme is uniquely solvable only for dt <= C eps^3 "
        << "(dt = " << cfg_.dt << ", eps^3 = " << cfg_.epsilon * cfg_.epsilon * cfg_.epsilon
        << "); reduce dt or use the convex-splitting scheme";
    return msg.str();
}

State CahnHilliardSolver::step(const State& prev, StepReport* report)
{
    const auto& lay = disc_->layout();
    const Eigen::Index ni = n_interior_local();
    const int step_index = prev.step + 1;

    State it = prev;
    it.step = step_index;
    it.time = step_index * cfg_.dt;

    StepReport local_report;
    std::vector<CondensedElement> condensed(lay.n_elements);
    Eigen::VectorXd trace_residual(trace_system_.size());
    double first = 0.0;
    double norm = 0.0;

    for (int iter = 0;; ++iter) {
        // convergence test on the residual alone; the Jacobian is only built
        // when another update is needed
        trace_residual.setZero();
        double interior_sq = 0.0;
        for (std::size_t e = 0; e < lay.n_elements; ++e) {
            const Eigen::VectorXd r = element_residual(e, it, prev);
            interior_sq += r.head(ni).squaredNorm();
            trace_system_.scatter_add(e, r.tail(n_trace_local()), trace_residual);
        }
        norm = std::sqrt(interior_sq + trace_residual.squaredNorm());
        local_report.residual_history.push_back(norm);
        if (iter == 0)
            first = norm;
        if (!std::isfinite(norm)) {
            throw StepFailure("step " + std::to_string(step_index) +
                                  ": Newton diverged (non-finite residual)" + failure_hint(),
                              step_index, norm);
        }
        if (norm <= std::max(cfg_.newton.abs_tol, cfg_.newton.rel_tol * first))
            break;
        if (iter >= cfg_.newton.max_iterations) {
            std::ostringstream msg;
            msg << "step " << step_index << ": Newton did not converge in "
                << cfg_.newton.max_iterations << " iterations (last residual " << norm << ")"
                << failure_hint();
            throw StepFailure(msg.str(), step_index, norm);
        }

        trace_system_.clear();
        try {
            for (std::size_t e = 0; e < lay.n_elements; ++e) {
                const ElementSystem es = element_system(e, it, prev);
                condensed[e] = condense(es.jacobian, -es.residual, ni, e);
                trace_system_.add_element(e, condensed[e].schur, condensed[e].rhs);
            }
        } catch (const SingularInteriorBlock& err) {
            throw StepFailure(std::string("step ") + std::to_string(step_index) + ": " + err.what() +
                                  failure_hint(),
                              step_index, norm);
        }

        Eigen::VectorXd delta;
        try {
            trace_solver_.factorize(trace_system_.matrix());
            delta = trace_solver_.solve(trace_system_.rhs());
        } catch (const TraceSolveError& err) {
            throw StepFailure("step " + std::to_string(step_index) + ": " + err.what() +
                                  failure_hint(),
                              step_index, norm);
        }
        for (std::size_t e = 0; e < lay.n_elements; ++e)
            add_local_update(e, condensed[e].reconstruct(trace_system_.gather(e, delta)), it);
        for (std::size_t f = 0; f < lay.n_faces; ++f)
            for (int m = 0; m < lay.n_modes; ++m) {
                const Eigen::Index sidx = static_cast<Eigen::Index>(f) * lay.n_modes + m;
                it.phi_hat[sidx] += delta[trace_system_.index(f, 0, m)];
                it.u_hat[sidx] += delta[trace_system_.index(f, 1, m)];
            }
        ++local_report.newton_iterations;
    }

    if (report)
        *report = std::move(local_report);
    return it;
}

RunSummary CahnHilliardSolver::run(const State& initial, const std::vector<Observer>& observers)
{
    RunSummary summary;
    State current = initial;
    summary.steps.reserve(static_cast<std::size_t>(cfg_.steps));
    for (int n = 0; n < cfg_.steps; ++n) {
        StepReport report;
        current = step(current, &report);
        summary.steps.push_back({current.step, current.time, report.newton_iterations,
                                 report.residual_history.back()});
        for (const auto& obs : observers)
            obs(current, report);
    }
    summary.final_state = std::move(current);
    return summary;
}

} // namespace chdg
