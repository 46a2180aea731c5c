#pragma once

#include "chdg/ch_solver.hpp"
#include "chdg/discretization.hpp"

namespace chdg {

/// Stored energy of a discrete state:
///   E = 1/(4 eps) |u^2 - 1|^2 + eps/2 |q|^2 + eps/2 |h_K^{-1/2}(P u - uh)|^2_{dT}.
struct EnergyReport {
    double chemical = 0.0;
    double gradient = 0.0;
    double stabilization = 0.0;
    double total = 0.0;
};

/// Integral of the scalar field u over the domain.
double mass(const Discretization& disc, const Eigen::VectorXd& u);
double mass(const Discretization& disc, const State& state);

EnergyReport energy(const Discretization& disc, const State& state, double epsilon);

/// |q|^2 + |h_K^{-1/2}(P u - uh)|^2 over the mesh, i.e. A(q,u,uh; q,u,uh).
double hdg_energy_norm_sq(const Discretization& disc, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& u_hat);

/// HDG negative norm of a mean-zero field, evaluated both as the energy of
/// its HDG inverse Laplacian and as the pairing (v, Pi_W v).
struct NegativeNorm {
    double energy_form = 0.0;  // |Pi_V v|^2 + |h^{-1/2}(P Pi_W v - Pi_M v)|^2
    double pairing_form = 0.0; // (v, Pi_W v)
    double norm = 0.0;         // sqrt(pairing_form)
};

/// Throws std::invalid_argument when |(v, 1)| exceeds mean_tol.
NegativeNorm negative_norm(const Discretization& disc, const Eigen::VectorXd& v,
                           double mean_tol = 1e-10);

struct DiscreteLaplacian {
    Eigen::VectorXd laplacian; // W_h field
    Eigen::VectorXd q;         // auxiliary flux
    Eigen::VectorXd u_hat;     // auxiliary trace
};

/// (lap_h u, w) = -A(q, u, uh; r, w, mu) with (q, uh) the gradient lift of u.
DiscreteLaplacian discrete_laplacian(const Discretization& disc, const Eigen::VectorXd& u);

} // namespace chdg
