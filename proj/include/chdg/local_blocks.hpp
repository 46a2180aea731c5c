#pragma once

#include "chdg/basis.hpp"
#include "chdg/mesh.hpp"
#include "chdg/quadrature.hpp"

#include <array>

namespace chdg {

/// Element matrix of the HDG bilinear form
///
///   A(q,u,uh; r,w,mu) = (q,r) - (u, div r) + <uh, r.n>
///                     + (div q, w) - <q.n, mu>
///                     + <tau (P u - uh), P w - mu>,      tau = 1/h_K,
///
/// where P is the L2 projection of the element trace onto P^k of each face.
/// Rows are test functions ordered [r | w | mu], columns trial functions
/// ordered [q | u | uh]. Fluxes are stored [x coeffs, y coeffs]; traces are
/// [face 0 modes, face 1 modes, face 2 modes] in local face order.
struct LocalBlocks {
    int n_flux = 0;   // 2 * dim P^k
    int n_scalar = 0; // dim P^{k+1}
    int n_trace = 0;  // 3 * (k + 1)
    double tau = 0.0;
    Eigen::MatrixXd a;
    Eigen::MatrixXd scalar_mass;
    /// Coefficients of P on local face i in the face's trace basis (n_modes x n_scalar).
    std::array<Eigen::MatrixXd, 3> face_projection;

    int n_interior() const { return n_flux + n_scalar; }
    int size() const { return n_interior() + n_trace; }
};

struct LocalBasisSet {
    const TriangleBasis& flux;   // P^k
    const TriangleBasis& scalar; // P^{k+1}
    const EdgeBasis& trace;      // P^k on faces
    const TriangleRule& volume_rule;
    const EdgeRule& face_rule;
};

LocalBlocks assemble_local_A(const Mesh& mesh, std::size_t e, const LocalBasisSet& bases);

} // namespace chdg
