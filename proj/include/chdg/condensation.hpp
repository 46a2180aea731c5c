#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chdg {

/// Thrown when an element's interior block cannot be inverted.
class SingularInteriorBlock : public std::runtime_error {
public:
    SingularInteriorBlock(std::size_t element, double rcond)
        : std::runtime_error("interior block of element " + std::to_string(element) +
                             " is numerically singular (pivot ratio " + std::to_string(rcond) + ")"),
          element_(element)
    {
    }
    std::size_t element() const { return element_; }

private:
    std::size_t element_;
};

/// Result of eliminating the interior unknowns of one element from
///
///   [K_II K_IT] [x_I]   [b_I]
///   [K_TI K_TT] [x_T] = [b_T].
///
/// schur = K_TT - K_TI K_II^{-1} K_IT, rhs = b_T - K_TI K_II^{-1} b_I, and the
/// interior is recovered as x_I = offset + lift * x_T.
struct CondensedElement {
    Eigen::MatrixXd schur;
    Eigen::VectorXd rhs;
    Eigen::MatrixXd lift;   // -K_II^{-1} K_IT
    Eigen::VectorXd offset; //  K_II^{-1} b_I

    Eigen::VectorXd reconstruct(const Eigen::VectorXd& trace) const { return offset + lift * trace; }
};

/// Interior unknowns come first in both `matrix` and `rhs`. The interior block
/// is factored with partial-pivot LU; a pivot ratio min|U_ii| / max|U_ii| below
/// `min_rcond` raises SingularInteriorBlock carrying `element`.
CondensedElement condense(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs,
                          Eigen::Index n_interior, std::size_t element, double min_rcond = 1e-14);

} // namespace chdg
