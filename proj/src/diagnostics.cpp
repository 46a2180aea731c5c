#include "chdg/diagnostics.hpp"

#include "chdg/condensation.hpp"
#include "chdg/gradient_lift.hpp"
#include "chdg/trace_system.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace chdg {

namespace {

Eigen::Index ix(std::size_t e) { return static_cast<Eigen::Index>(e); }

Eigen::VectorXd local_trace(const Discretization& disc, std::size_t e, const Eigen::VectorXd& trace)
{
    const int nm = disc.layout().n_modes;
    const auto& faces = disc.mesh().element_faces(e);
    Eigen::VectorXd out(3 * nm);
    for (int lf = 0; lf < 3; ++lf)
        out.segment(lf * nm, nm) = trace.segment(faces[lf] * nm, nm);
    return out;
}

double stabilization_sq(const Discretization& disc, std::size_t e, const Eigen::VectorXd& ue,
                        const Eigen::VectorXd& trace_e)
{
    const LocalBlocks& blk = disc.blocks(e);
    const ElementGeometry& geom = disc.geometry(e);
    const int nm = disc.layout().n_modes;
    double sum = 0.0;
    for (int lf = 0; lf < 3; ++lf) {
        const Eigen::VectorXd jump = blk.face_projection[lf] * ue - trace_e.segment(lf * nm, nm);
        sum += blk.tau * geom.face_lengths[lf] * jump.squaredNorm();
    }
    return sum;
}

} // namespace

double mass(const Discretization& disc, const Eigen::VectorXd& u)
{
    const auto& lay = disc.layout();
    double total = 0.0;
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        total += disc.scalar_basis_integrals(e).dot(u.segment(ix(e) * lay.n_scalar, lay.n_scalar));
    return total;
}

double mass(const Discretization& disc, const State& state) { return mass(disc, state.u); }

double hdg_energy_norm_sq(const Discretization& disc, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& u_hat)
{
    const auto& lay = disc.layout();
    const int nf = lay.n_flux(), nw = lay.n_scalar;
    double sum = 0.0;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        sum += disc.geometry(e).det * q.segment(ix(e) * nf, nf).squaredNorm();
        sum += stabilization_sq(disc, e, u.segment(ix(e) * nw, nw), local_trace(disc, e, u_hat));
    }
    return sum;
}

EnergyReport energy(const Discretization& disc, const State& state, double epsilon)
{
    const auto& lay = disc.layout();
    const int nf = lay.n_flux(), nw = lay.n_scalar;
    const BasisTable& table = disc.nonlinear_table();
    EnergyReport rep;
    double chem = 0.0, grad = 0.0, stab = 0.0;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const ElementGeometry& geom = disc.geometry(e);
        const Eigen::VectorXd ue = state.u.segment(ix(e) * nw, nw);
        const Eigen::VectorXd uq = table.values * ue;
        for (Eigen::Index q = 0; q < uq.size(); ++q) {
            const double d = uq[q] * uq[q] - 1.0;
            chem += table.rule.weights[static_cast<std::size_t>(q)] * geom.det * d * d;
        }
        grad += geom.det * state.q.segment(ix(e) * nf, nf).squaredNorm();
        stab += stabilization_sq(disc, e, ue, local_trace(disc, e, state.u_hat));
    }
    rep.chemical = chem / (4.0 * epsilon);
    rep.gradient = 0.5 * epsilon * grad;
    rep.stabilization = 0.5 * epsilon * stab;
    rep.total = rep.chemical + rep.gradient + rep.stabilization;
    return rep;
}

NegativeNorm negative_norm(const Discretization& disc, const Eigen::VectorXd& v, double mean_tol)
{
    const auto& lay = disc.layout();
    if (v.size() != static_cast<Eigen::Index>(lay.scalar_size()))
        throw std::invalid_argument("negative_norm: field has wrong size");
    const double mean = mass(disc, v);
    if (!(std::abs(mean) <= mean_tol)) {
        std::ostringstream msg;
        msg << "negative_norm: field is not mean-zero, (v,1) = " << mean;
        throw std::invalid_argument(msg.str());
    }

    const int nf = lay.n_flux(), nw = lay.n_scalar, nt = 3 * lay.n_modes;
    const int ni = nf + nw;
    // unknowns [q | z | zh | lambda]; lambda enforces (z, 1) = 0
    TraceSystem sys(disc.mesh(), 1, lay.n_modes, 1);
    std::vector<CondensedElement> condensed;
    condensed.reserve(lay.n_elements);
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const LocalBlocks& blk = disc.blocks(e);
        const Eigen::VectorXd ones = disc.scalar_basis_integrals(e);
        Eigen::MatrixXd local = Eigen::MatrixXd::Zero(ni + nt + 1, ni + nt + 1);
        local.topLeftCorner(ni + nt, ni + nt) = blk.a;
        local.block(nf, ni + nt, nw, 1) = ones;
        local.block(ni + nt, nf, 1, nw) = ones.transpose();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni + nt + 1);
        rhs.segment(nf, nw) = blk.scalar_mass * v.segment(ix(e) * nw, nw);
        condensed.push_back(condense(local, rhs, ni, e));
        sys.add_element(e, condensed.back().schur, condensed.back().rhs);
    }
    const Eigen::VectorXd sol = solve_trace(sys);

    NegativeNorm out;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const Eigen::VectorXd xt = sys.gather(e, sol);
        const Eigen::VectorXd xi = condensed[e].reconstruct(xt);
        const Eigen::VectorXd z = xi.segment(nf, nw);
        out.energy_form += disc.geometry(e).det * xi.head(nf).squaredNorm() +
                           stabilization_sq(disc, e, z, xt.head(nt));
        out.pairing_form += v.segment(ix(e) * nw, nw).dot(disc.blocks(e).scalar_mass * z);
    }
    out.norm = std::sqrt(std::max(out.pairing_form, 0.0));
    return out;
}

DiscreteLaplacian discrete_laplacian(const Discretization& disc, const Eigen::VectorXd& u)
{
    const auto& lay = disc.layout();
    const int nf = lay.n_flux(), nw = lay.n_scalar, nt = 3 * lay.n_modes;
    GradientLift lift = solve_gradient_lift(disc, u);
    DiscreteLaplacian out;
    out.laplacian.resize(u.size());
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const LocalBlocks& blk = disc.blocks(e);
        Eigen::VectorXd x(nf + nw + nt);
        x << lift.q.segment(ix(e) * nf, nf), u.segment(ix(e) * nw, nw),
            local_trace(disc, e, lift.u_hat);
        const Eigen::VectorXd aw = blk.a.block(nf, 0, nw, nf + nw + nt) * x;
        out.laplacian.segment(ix(e) * nw, nw) = -blk.scalar_mass.llt().solve(aw);
    }
    out.q = std::move(lift.q);
    out.u_hat = std::move(lift.u_hat);
    return out;
}

} // namespace chdg
