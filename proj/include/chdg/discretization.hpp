#pragma once

#include "chdg/basis.hpp"
#include "chdg/local_blocks.hpp"
#include "chdg/mesh.hpp"
#include "chdg/quadrature.hpp"

#include <memory>
#include <vector>

namespace chdg {

/// Degree-of-freedom counts of the spaces V_h = [P^k]^2, W_h = P^{k+1},
/// M_h = P^k(E). Element fields are stored element-major, traces face-major.
struct SpaceLayout {
    int k = 0;
    int n_flux_scalar = 0; // dim P^k on a triangle
    int n_scalar = 0;      // dim P^{k+1}
    int n_modes = 0;       // k + 1 per face
    std::size_t n_elements = 0;
    std::size_t n_faces = 0;

    int n_flux() const { return 2 * n_flux_scalar; }
    std::size_t flux_size() const { return n_elements * n_flux(); }
    std::size_t scalar_size() const { return n_elements * n_scalar; }
    std::size_t trace_size() const { return n_faces * n_modes; }
};

/// Values of a basis tabulated at the points of a reference rule.
struct BasisTable {
    TriangleRule rule;
    Eigen::MatrixXd values; // points x functions
};

/// Mesh + spaces + precomputed element operators for one polynomial degree.
/// Immutable after construction.
class Discretization {
public:
    /// cubic_bump raises the exactness used for the u^3 terms above 4(k+1).
    Discretization(std::shared_ptr<const Mesh> mesh, int k, int cubic_bump = 2);

    const Mesh& mesh() const { return *mesh_; }
    std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
    int degree() const { return layout_.k; }
    const SpaceLayout& layout() const { return layout_; }

    const TriangleBasis& flux_basis() const { return flux_basis_; }
    const TriangleBasis& scalar_basis() const { return scalar_basis_; }
    const EdgeBasis& trace_basis() const { return trace_basis_; }

    const ElementGeometry& geometry(std::size_t e) const { return geometry_.at(e); }
    const LocalBlocks& blocks(std::size_t e) const { return blocks_.at(e); }

    const TriangleRule& bilinear_rule() const { return bilinear_rule_; }
    const EdgeRule& face_rule() const { return face_rule_; }
    /// Scalar basis at a rule exact for the cubic nonlinearity times a test function.
    const BasisTable& nonlinear_table() const { return nonlinear_table_; }
    /// Scalar basis at a rule exact to degree 2(k+2)+8, for errors and sources.
    const BasisTable& accurate_table() const { return accurate_table_; }
    /// Flux basis at the accurate rule.
    const BasisTable& accurate_flux_table() const { return accurate_flux_table_; }

    /// Integrals of the scalar basis over element e.
    Eigen::VectorXd scalar_basis_integrals(std::size_t e) const;

    LocalBasisSet basis_set() const;

private:
    std::shared_ptr<const Mesh> mesh_;
    SpaceLayout layout_;
    TriangleBasis flux_basis_;
    TriangleBasis scalar_basis_;
    EdgeBasis trace_basis_;
    TriangleRule bilinear_rule_;
    EdgeRule face_rule_;
    BasisTable nonlinear_table_;
    BasisTable accurate_table_;
    BasisTable accurate_flux_table_;
    Eigen::VectorXd reference_integrals_;
    std::vector<ElementGeometry> geometry_;
    std::vector<LocalBlocks> blocks_;
};

} // namespace chdg
