#pragma once

#include "chdg/discretization.hpp"

namespace chdg {

/// Flux and trace attached to a scalar field u in W_h: the unique (q, uh) with
///   A(q, u, uh; r, 0, mu) = 0   for all (r, mu) in V_h x M_h.
struct GradientLift {
    Eigen::VectorXd q;
    Eigen::VectorXd u_hat;
};

GradientLift solve_gradient_lift(const Discretization& disc, const Eigen::VectorXd& u);

} // namespace chdg
