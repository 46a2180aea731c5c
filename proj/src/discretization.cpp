#include "chdg/discretization.hpp"

#include <stdexcept>
#include <string>

namespace chdg {

namespace {

BasisTable tabulate(const TriangleBasis& basis, int exactness)
{
    BasisTable t;
    t.rule = quad_triangle(exactness);
    t.values.resize(static_cast<Eigen::Index>(t.rule.size()), basis.size());
    for (std::size_t q = 0; q < t.rule.size(); ++q)
        t.values.row(static_cast<Eigen::Index>(q)) = basis.values(t.rule.points[q]).transpose();
    return t;
}

int checked_degree(int k)
{
    if (k < 0)
        throw std::invalid_argument("Discretization: degree must be >= 0, got " + std::to_string(k));
    return k;
}

} // namespace

Discretization::Discretization(std::shared_ptr<const Mesh> mesh, int k, int cubic_bump)
    : mesh_(std::move(mesh)),
      flux_basis_(checked_degree(k)),
      scalar_basis_(k + 1),
      trace_basis_(k)
{
    if (!mesh_)
        throw std::invalid_argument("Discretization: null mesh");
    if (cubic_bump < 0)
        throw std::invalid_argument("Discretization: cubic_bump must be >= 0");

    layout_.k = k;
    layout_.n_flux_scalar = triangle_dim(k);
    layout_.n_scalar = triangle_dim(k + 1);
    layout_.n_modes = k + 1;
    layout_.n_elements = mesh_->num_elements();
    layout_.n_faces = mesh_->num_faces();

    bilinear_rule_ = quad_triangle(2 * (k + 2));
    face_rule_ = quad_edge(2 * (k + 2));
    nonlinear_table_ = tabulate(scalar_basis_, 4 * (k + 1) + cubic_bump);
    accurate_table_ = tabulate(scalar_basis_, 2 * (k + 2) + 8);
    accurate_flux_table_ = tabulate(flux_basis_, 2 * (k + 2) + 8);

    reference_integrals_ = Eigen::VectorXd::Zero(layout_.n_scalar);
    for (std::size_t q = 0; q < bilinear_rule_.size(); ++q)
        reference_integrals_ += bilinear_rule_.weights[q] * scalar_basis_.values(bilinear_rule_.points[q]);

    const LocalBasisSet bases = basis_set();
    geometry_.reserve(layout_.n_elements);
    blocks_.reserve(layout_.n_elements);
    for (std::size_t e = 0; e < layout_.n_elements; ++e) {
        geometry_.push_back(element_geometry(*mesh_, e));
        blocks_.push_back(assemble_local_A(*mesh_, e, bases));
    }
}

Eigen::VectorXd Discretization::scalar_basis_integrals(std::size_t e) const
{
    return geometry(e).det * reference_integrals_;
}

LocalBasisSet Discretization::basis_set() const
{
    return {flux_basis_, scalar_basis_, trace_basis_, bilinear_rule_, face_rule_};
}

} // namespace chdg
