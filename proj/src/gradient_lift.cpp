#include "chdg/gradient_lift.hpp"

#include "chdg/condensation.hpp"
#include "chdg/trace_system.hpp"

#include <vector>

namespace chdg {

GradientLift solve_gradient_lift(const Discretization& disc, const Eigen::VectorXd& u)
{
    const SpaceLayout& lay = disc.layout();
    if (u.size() != static_cast<Eigen::Index>(lay.scalar_size()))
        throw std::invalid_argument("solve_gradient_lift: scalar field has wrong size");

    const int nf = lay.n_flux();
    const int nw = lay.n_scalar;
    const int nt = 3 * lay.n_modes;
    TraceSystem sys(disc.mesh(), 1, lay.n_modes);
    std::vector<CondensedElement> condensed;
    condensed.reserve(lay.n_elements);

    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const Eigen::MatrixXd& a = disc.blocks(e).a;
        const Eigen::VectorXd ue = u.segment(static_cast<Eigen::Index>(e) * nw, nw);
        // unknowns [q | uh], test rows [r | mu]
        Eigen::MatrixXd local(nf + nt, nf + nt);
        local.topLeftCorner(nf, nf) = a.topLeftCorner(nf, nf);
        local.topRightCorner(nf, nt) = a.block(0, nf + nw, nf, nt);
        local.bottomLeftCorner(nt, nf) = a.block(nf + nw, 0, nt, nf);
        local.bottomRightCorner(nt, nt) = a.block(nf + nw, nf + nw, nt, nt);
        Eigen::VectorXd rhs(nf + nt);
        rhs.head(nf) = -a.block(0, nf, nf, nw) * ue;
        rhs.tail(nt) = -a.block(nf + nw, nf, nt, nw) * ue;
        condensed.push_back(condense(local, rhs, nf, e));
        sys.add_element(e, condensed.back().schur, condensed.back().rhs);
    }

    const Eigen::VectorXd trace = solve_trace(sys);
    GradientLift out;
    out.q.resize(static_cast<Eigen::Index>(lay.flux_size()));
    out.u_hat = trace;
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        out.q.segment(static_cast<Eigen::Index>(e) * nf, nf) =
            condensed[e].reconstruct(sys.gather(e, trace));
    return out;
}

} // namespace chdg
