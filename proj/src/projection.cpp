#include "chdg/projection.hpp"

#include <stdexcept>

namespace chdg {

namespace {

Eigen::MatrixXd element_gram(const TriangleBasis& basis, const ElementGeometry& geom,
                             const TriangleRule& rule)
{
    const int n = basis.size();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd v = basis.values(rule.points[q]);
        gram.noalias() += rule.weights[q] * geom.det * v * v.transpose();
    }
    return gram;
}

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& rhs_cols)
{
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("l2_project_element: singular Gram matrix");
    return llt.solve(rhs_cols).reshaped();
}

} // namespace

Eigen::VectorXd l2_project_element(const ScalarFunction& f, const TriangleBasis& basis,
                                   const ElementGeometry& geom, const TriangleRule& rule)
{
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t q = 0; q < rule.size(); ++q)
        rhs += rule.weights[q] * geom.det * f(geom.map(rule.points[q])) *
               basis.values(rule.points[q]);
    return solve_gram(element_gram(basis, geom, rule), rhs);
}

Eigen::VectorXd l2_project_element_vector(const VectorFunction& f, const TriangleBasis& basis,
                                   const ElementGeometry& geom, const TriangleRule& rule)
{
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(basis.size(), 2);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point val = f(geom.map(rule.points[q]));
        const Eigen::VectorXd phi = basis.values(rule.points[q]);
        rhs.col(0) += rule.weights[q] * geom.det * val.x() * phi;
        rhs.col(1) += rule.weights[q] * geom.det * val.y() * phi;
    }
    return solve_gram(element_gram(basis, geom, rule), rhs);
}

Eigen::VectorXd l2_project_edge(const std::function<double(double)>& f, const EdgeBasis& basis,
                                const EdgeRule& rule)
{
    // basis is orthonormal on [0, 1]; the face length cancels
    Eigen::VectorXd c = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t q = 0; q < rule.size(); ++q)
        c += rule.weights[q] * f(rule.points[q]) * basis.values(rule.points[q]);
    return c;
}

Eigen::VectorXd l2_project_face(const ScalarFunction& f, const EdgeBasis& basis, const Mesh& mesh,
                                std::size_t face, const EdgeRule& rule)
{
    return l2_project_edge([&](double s) { return f(mesh.face_point(face, s)); }, basis, rule);
}

} // namespace chdg
