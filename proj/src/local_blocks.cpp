#include "chdg/local_blocks.hpp"

namespace chdg {

LocalBlocks assemble_local_A(const Mesh& mesh, std::size_t e, const LocalBasisSet& bases)
{
    const ElementGeometry geom = element_geometry(mesh, e);
    const int nv = bases.flux.size();
    const int nw = bases.scalar.size();
    const int nm = bases.trace.size();

    LocalBlocks blk;
    blk.n_flux = 2 * nv;
    blk.n_scalar = nw;
    blk.n_trace = 3 * nm;
    blk.tau = 1.0 / geom.diameter;
    blk.a = Eigen::MatrixXd::Zero(blk.size(), blk.size());

    const int oq = 0, ou = blk.n_flux, om = blk.n_interior();
    auto a = [&](int i, int j) -> double& { return blk.a(i, j); };

    // (q, r): orthonormal reference basis gives det * I per component
    for (int i = 0; i < blk.n_flux; ++i)
        a(oq + i, oq + i) = geom.det;
    blk.scalar_mass = geom.det * Eigen::MatrixXd::Identity(nw, nw);

    // -(u, div r) and (div q, w)
    for (std::size_t q = 0; q < bases.volume_rule.size(); ++q) {
        const auto& xi = bases.volume_rule.points[q];
        const double wq = bases.volume_rule.weights[q] * geom.det;
        const Eigen::VectorXd phi = bases.scalar.values(xi);
        const Eigen::MatrixX2d grad = bases.flux.gradients(xi) * geom.inverse_jacobian;
        for (int c = 0; c < 2; ++c) {
            for (int i = 0; i < nv; ++i) {
                const double div_r = grad(i, c);
                for (int j = 0; j < nw; ++j) {
                    const double v = wq * div_r * phi[j];
                    a(oq + c * nv + i, ou + j) -= v;
                    a(ou + j, oq + c * nv + i) += v;
                }
            }
        }
    }

    // Face terms
    const auto& faces = mesh.element_faces(e);
    for (int lf = 0; lf < 3; ++lf) {
        const std::size_t f = static_cast<std::size_t>(faces[lf]);
        const double len = geom.face_lengths[lf];
        const Point& n = geom.normals[lf];
        Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(nm, nw);
        for (std::size_t q = 0; q < bases.face_rule.size(); ++q) {
            const double s = bases.face_rule.points[q];
            const double ws = bases.face_rule.weights[q];
            const Eigen::Vector2d xi = geom.pullback(mesh.face_point(f, s));
            const Eigen::VectorXd mu = bases.trace.values(s);
            const Eigen::VectorXd phi_v = bases.flux.values(xi);
            proj.noalias() += ws * mu * bases.scalar.values(xi).transpose();
            for (int c = 0; c < 2; ++c) {
                for (int i = 0; i < nv; ++i) {
                    for (int m = 0; m < nm; ++m) {
                        const double v = len * ws * phi_v[i] * n[c] * mu[m];
                        a(oq + c * nv + i, om + lf * nm + m) += v; //  <uh, r.n>
                        a(om + lf * nm + m, oq + c * nv + i) -= v; // -<q.n, mu>
                    }
                }
            }
        }
        blk.face_projection[lf] = proj;

        // tau <P u - uh, P w - mu>, with the trace basis orthonormal on [0,1]
        const double scale = blk.tau * len;
        blk.a.block(ou, ou, nw, nw).noalias() += scale * proj.transpose() * proj;
        blk.a.block(ou, om + lf * nm, nw, nm).noalias() -= scale * proj.transpose();
        blk.a.block(om + lf * nm, ou, nm, nw).noalias() -= scale * proj;
        blk.a.block(om + lf * nm, om + lf * nm, nm, nm) +=
            scale * Eigen::MatrixXd::Identity(nm, nm);
    }
    return blk;
}

} // namespace chdg
