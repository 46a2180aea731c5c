#pragma once

#include "chdg/basis.hpp"
#include "chdg/mesh.hpp"
#include "chdg/quadrature.hpp"

#include <functional>

namespace chdg {

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

/// Element-wise L2 projection onto span(basis) mapped to element e.
/// The rule must integrate f * basis accurately; with exact data the residual
/// (f - Pf, w)_K vanishes for every basis function w.
Eigen::VectorXd l2_project_element(const ScalarFunction& f, const TriangleBasis& basis,
                                   const ElementGeometry& geom, const TriangleRule& rule);

/// Component-wise projection of a vector field; result is [x coeffs, y coeffs].
Eigen::VectorXd l2_project_element_vector(const VectorFunction& f, const TriangleBasis& basis,
                                   const ElementGeometry& geom, const TriangleRule& rule);

/// L2 projection onto P^k of the unit interval, f given in the arc parameter s.
Eigen::VectorXd l2_project_edge(const std::function<double(double)>& f, const EdgeBasis& basis,
                                const EdgeRule& rule);

/// L2 projection onto P^k of global face f (parameter runs a -> b).
Eigen::VectorXd l2_project_face(const ScalarFunction& f, const EdgeBasis& basis, const Mesh& mesh,
                                std::size_t face, const EdgeRule& rule);

} // namespace chdg
