#pragma once

#include "chdg/mesh.hpp"

#include <Eigen/Sparse>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chdg {

/// Global linear system over face-trace unknowns, optionally extended by a few
/// globally coupled scalar unknowns (e.g. a Lagrange multiplier).
///
/// Unknown (face f, field c, mode m) sits at ((f * n_fields) + c) * n_modes + m;
/// extra unknowns follow all traces. The sparsity pattern is fixed at
/// construction: every element couples all of its trace unknowns (and the
/// extras) with each other. Element contributions are accumulated into fixed
/// slots, so each entry receives at most two trace contributions and the
/// result does not depend on element traversal order.
class TraceSystem {
public:
    TraceSystem(const Mesh& mesh, int n_fields, int n_modes, int n_extra = 0);

    Eigen::Index size() const { return matrix_.rows(); }
    int n_fields() const { return n_fields_; }
    int n_modes() const { return n_modes_; }
    int n_extra() const { return n_extra_; }
    Eigen::Index n_trace() const { return size() - n_extra_; }

    Eigen::Index index(std::size_t face, int field, int mode) const
    {
        return (static_cast<Eigen::Index>(face) * n_fields_ + field) * n_modes_ + mode;
    }

    /// Global indices of element e's unknowns in local order:
    /// [field][local face][mode], then the extras.
    const std::vector<Eigen::Index>& element_dofs(std::size_t e) const { return elem_dofs_.at(e); }

    void clear();
    void add_element(std::size_t e, const Eigen::MatrixXd& local, const Eigen::VectorXd& rhs);

    Eigen::VectorXd gather(std::size_t e, const Eigen::VectorXd& global) const;
    void scatter_add(std::size_t e, const Eigen::VectorXd& local, Eigen::VectorXd& global) const;

    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
    Eigen::SparseMatrix<double>& matrix() { return matrix_; }
    const Eigen::VectorXd& rhs() const { return rhs_; }
    Eigen::VectorXd& rhs() { return rhs_; }

private:
    int n_fields_;
    int n_modes_;
    int n_extra_;
    Eigen::SparseMatrix<double> matrix_;
    Eigen::VectorXd rhs_;
    std::vector<std::vector<Eigen::Index>> elem_dofs_;
    std::vector<std::vector<Eigen::Index>> slots_; // column-major local (i, j) -> valuePtr offset
};

class TraceSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Direct sparse LU of the trace matrix. The pattern is analysed on the
/// first factorization and reused afterwards. UMFPACK is used when the build
/// found it, Eigen's SparseLU otherwise.
class TraceSolver {
public:
    TraceSolver();
    ~TraceSolver();
    TraceSolver(TraceSolver&&) noexcept;
    TraceSolver& operator=(TraceSolver&&) noexcept;

    static const char* backend_name();

    void factorize(const Eigen::SparseMatrix<double>& matrix);
    /// Solves and verifies |Ax - b| <= tol (|b| + |A| |x|); one step of
    /// iterative refinement is attempted before giving up.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double tol = 1e-10) const;

private:
    struct Backend;
    std::unique_ptr<Backend> lu_;
    Eigen::SparseMatrix<double> matrix_;
    double matrix_norm_ = 0.0;
    bool analyzed_ = false;
    bool factored_ = false;
};

/// One-shot factorize + solve of an assembled system.
Eigen::VectorXd solve_trace(const TraceSystem& system, double tol = 1e-10);

/// Norm estimate sqrt(|A|_1 |A|_inf), an upper bound of the spectral norm.
double norm_estimate(const Eigen::SparseMatrix<double>& matrix);

} // namespace chdg
