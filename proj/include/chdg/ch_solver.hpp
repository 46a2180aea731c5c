#pragma once

#include "chdg/condensation.hpp"
#include "chdg/discretization.hpp"
#include "chdg/projection.hpp"
#include "chdg/trace_system.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chdg {

enum class Scheme { FullyImplicit, ConvexSplitting };

std::string to_string(Scheme scheme);

struct NewtonSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-14;
    int max_iterations = 30;
};

/// Time discretization: N uniform Backward-Euler steps of size dt up to T.
/// f(u) = u^3 - u is taken fully implicitly, or split as u^3 (implicit)
/// minus u^{n-1} (explicit).
struct SchemeConfig {
    Scheme scheme = Scheme::ConvexSplitting;
    double epsilon = 1.0;
    double dt = 0.1;
    double final_time = 1.0;
    int steps = 10;
    NewtonSettings newton;

    static SchemeConfig uniform(Scheme scheme, double epsilon, double final_time, int steps);
    void validate() const;
};

using SpaceTimeFunction = std::function<double(const Point&, double)>;

/// Forcing added to the right-hand sides of
///   u_t - lap(phi) = g1,   -eps lap(u) + f(u)/eps - phi = g2.
/// Empty callables mean zero forcing.
struct SourcePair {
    SpaceTimeFunction g1;
    SpaceTimeFunction g2;
};

/// Discrete solution at one time level. Element fields are element-major
/// (fluxes as [x coeffs, y coeffs] per element); traces are face-major.
struct State {
    int step = 0;
    double time = 0.0;
    Eigen::VectorXd p, phi, q, u;
    Eigen::VectorXd phi_hat, u_hat;

    bool all_finite() const;
};

State zero_state(const SpaceLayout& layout);

/// Per-element linearized system: residual R(x) and Jacobian dR/dx over
/// [p | phi | q | u | phi_hat | u_hat] (element-local ordering).
struct ElementSystem {
    Eigen::MatrixXd jacobian;
    Eigen::VectorXd residual;
};

struct StepReport {
    int newton_iterations = 0;
    std::vector<double> residual_history;
};

/// Newton or linear-solve failure inside a time step.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, int step, double last_residual)
        : std::runtime_error(what), step_(step), last_residual_(last_residual)
    {
    }
    int step() const { return step_; }
    double last_residual() const { return last_residual_; }

private:
    int step_;
    double last_residual_;
};

struct StepDiagnostics {
    int step = 0;
    double time = 0.0;
    int newton_iterations = 0;
    double final_residual = 0.0;
};

using Observer = std::function<void(const State&, const StepReport&)>;

struct RunSummary {
    State final_state;
    std::vector<StepDiagnostics> steps;
};

/// Global residual and element Jacobians of the whole nonlinear system, in
/// the monolithic ordering [element interiors | traces] (see
/// CahnHilliardSolver::pack).
struct ResidualAndJacobian {
    Eigen::VectorXd residual;
    std::vector<Eigen::MatrixXd> local_jacobians;
};

class CahnHilliardSolver {
public:
    CahnHilliardSolver(std::shared_ptr<const Discretization> disc, SchemeConfig cfg,
                       SourcePair sources = {});

    const Discretization& discretization() const { return *disc_; }
    const SchemeConfig& config() const { return cfg_; }
    const SourcePair& sources() const { return sources_; }

    /// u is the L2 projection of u0; q and u_hat are its gradient lift.
    /// p, phi, phi_hat start at zero (they do not enter the first step's data).
    State initial_state(const ScalarFunction& u0) const;
    /// Same, starting from W_h coefficients of u directly.
    State initial_state(const Eigen::VectorXd& u_coeffs) const;

    ElementSystem element_system(std::size_t e, const State& iterate, const State& prev) const;
    /// Same residual as element_system without forming the Jacobian.
    Eigen::VectorXd element_residual(std::size_t e, const State& iterate, const State& prev) const;
    ResidualAndJacobian residual_and_jacobian(const State& iterate, const State& prev) const;
    Eigen::SparseMatrix<double> assemble_jacobian(const ResidualAndJacobian& rj) const;

    /// Advance one step with Newton's method on the condensed trace system.
    State step(const State& prev, StepReport* report = nullptr);

    /// cfg.steps steps; observers see every accepted state.
    RunSummary run(const State& initial, const std::vector<Observer>& observers = {});

    Eigen::Index n_interior_local() const;
    Eigen::Index n_trace_local() const;
    Eigen::Index monolithic_size() const;
    Eigen::VectorXd pack(const State& s) const;
    State unpack(const Eigen::VectorXd& x, int step, double time) const;
    Eigen::Index monolithic_index(std::size_t e, Eigen::Index local) const;

private:
    Eigen::VectorXd gather_local(std::size_t e, const State& s) const;
    void add_local_update(std::size_t e, const Eigen::VectorXd& interior_delta, State& s) const;
    std::string failure_hint() const;
    /// Element loads (g1, w) and (g2, w) at time t, all elements at once;
    /// recomputed only when t changes.
    const Eigen::MatrixXd& forcing_loads(double t) const;

    std::shared_ptr<const Discretization> disc_;
    SchemeConfig cfg_;
    SourcePair sources_;
    TraceSystem trace_system_;
    TraceSolver trace_solver_;
    mutable Eigen::MatrixXd forcing_cache_; // column e = [g1 load | g2 load]
    mutable double forcing_time_ = std::numeric_limits<double>::quiet_NaN();
};

} // namespace chdg
