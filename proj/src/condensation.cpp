#include "chdg/condensation.hpp"

#include <cmath>

namespace chdg {

CondensedElement condense(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                          Eigen::Index n_interior, std::size_t element, double min_rcond)
{
    const Eigen::Index n = matrix.rows();
    const Eigen::Index nt = n - n_interior;
    if (matrix.cols() != n || rhs.size() != n || n_interior < 0 || nt < 0)
        throw std::invalid_argument("condense: inconsistent block sizes");

    const auto kii = matrix.topLeftCorner(n_interior, n_interior);
    const auto kit = matrix.topRightCorner(n_interior, nt);
    const auto kti = matrix.bottomLeftCorner(nt, n_interior);
    const auto ktt = matrix.bottomRightCorner(nt, nt);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(kii);
    // cheap singularity screen: smallest over largest pivot magnitude
    const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    const double ratio = n_interior > 0 ? piv.minCoeff() / piv.maxCoeff() : 1.0;
    if (!(ratio >= min_rcond))
        throw SingularInteriorBlock(element, ratio);

    Eigen::MatrixXd cols(n_interior, nt + 1);
    cols << kit, rhs.head(n_interior);
    const Eigen::MatrixXd sol = lu.solve(cols);

    CondensedElement out;
    out.lift = -sol.leftCols(nt);
    out.offset = sol.col(nt);
    out.schur = ktt + kti * out.lift;
    out.rhs = rhs.tail(nt) - kti * out.offset;
    return out;
}

} // namespace chdg
