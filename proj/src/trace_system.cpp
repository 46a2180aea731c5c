#include "chdg/trace_system.hpp"

#ifdef CHDG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chdg {

TraceSystem::TraceSystem(const Mesh& mesh, int n_fields, int n_modes, int n_extra)
    : n_fields_(n_fields), n_modes_(n_modes), n_extra_(n_extra)
{
    if (n_fields < 1 || n_modes < 1 || n_extra < 0)
        throw std::invalid_argument("TraceSystem: invalid field/mode/extra counts");

    const Eigen::Index n_trace =
        static_cast<Eigen::Index>(mesh.num_faces()) * n_fields * n_modes;
    const Eigen::Index n = n_trace + n_extra;

    elem_dofs_.resize(mesh.num_elements());
    std::vector<Eigen::Triplet<double>> pattern;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        auto& dofs = elem_dofs_[e];
        const auto& faces = mesh.element_faces(e);
        for (int c = 0; c < n_fields; ++c)
            for (int lf = 0; lf < 3; ++lf)
                for (int m = 0; m < n_modes; ++m)
                    dofs.push_back(index(static_cast<std::size_t>(faces[lf]), c, m));
        for (int x = 0; x < n_extra; ++x)
            dofs.push_back(n_trace + x);
        for (Eigen::Index j : dofs)
            for (Eigen::Index i : dofs)
                pattern.emplace_back(i, j, 0.0);
    }
    matrix_.resize(n, n);
    matrix_.setFromTriplets(pattern.begin(), pattern.end());
    matrix_.makeCompressed();
    rhs_ = Eigen::VectorXd::Zero(n);

    const auto* outer = matrix_.outerIndexPtr();
    const auto* inner = matrix_.innerIndexPtr();
    slots_.resize(mesh.num_elements());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const auto& dofs = elem_dofs_[e];
        auto& slots = slots_[e];
        slots.reserve(dofs.size() * dofs.size());
        for (Eigen::Index j : dofs) {
            const auto* begin = inner + outer[j];
            const auto* end = inner + outer[j + 1];
            for (Eigen::Index i : dofs) {
                const auto* it = std::lower_bound(begin, end, static_cast<int>(i));
                slots.push_back(it - inner);
            }
        }
    }
}

void TraceSystem::clear()
{
    std::fill(matrix_.valuePtr(), matrix_.valuePtr() + matrix_.nonZeros(), 0.0);
    rhs_.setZero();
}

void TraceSystem::add_element(std::size_t e, const Eigen::MatrixXd& local, const Eigen::VectorXd& rhs)
{
    const auto& dofs = elem_dofs_.at(e);
    const auto nl = static_cast<Eigen::Index>(dofs.size());
    if (local.rows() != nl || local.cols() != nl || rhs.size() != nl)
        throw std::invalid_argument("TraceSystem::add_element: local size mismatch");
    double* values = matrix_.valuePtr();
    const auto& slots = slots_[e];
    for (Eigen::Index j = 0; j < nl; ++j)
        for (Eigen::Index i = 0; i < nl; ++i)
            values[slots[j * nl + i]] += local(i, j);
    for (Eigen::Index i = 0; i < nl; ++i)
        rhs_[dofs[i]] += rhs[i];
}

Eigen::VectorXd TraceSystem::gather(std::size_t e, const Eigen::VectorXd& global) const
{
    const auto& dofs = elem_dofs_.at(e);
    Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = global[dofs[i]];
    return out;
}

void TraceSystem::scatter_add(std::size_t e, const Eigen::VectorXd& local, Eigen::VectorXd& global) const
{
    const auto& dofs = elem_dofs_.at(e);
    for (std::size_t i = 0; i < dofs.size(); ++i)
        global[dofs[i]] += local[static_cast<Eigen::Index>(i)];
}

double norm_estimate(const Eigen::SparseMatrix<double>& matrix)
{
    Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(matrix.cols());
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix.rows());
    for (Eigen::Index j = 0; j < matrix.outerSize(); ++j) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, j); it; ++it) {
            col_sums[it.col()] += std::abs(it.value());
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    const double n1 = col_sums.size() ? col_sums.maxCoeff() : 0.0;
    const double ninf = row_sums.size() ? row_sums.maxCoeff() : 0.0;
    return std::sqrt(n1 * ninf);
}

#ifdef CHDG_HAVE_UMFPACK
struct TraceSolver::Backend {
    Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
    std::string error() const { return "UMFPACK status " + std::to_string(lu.umfpackFactorizeReturncode()); }
};
const char* TraceSolver::backend_name() { return "umfpack"; }
#else
struct TraceSolver::Backend {
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    std::string error() { return lu.lastErrorMessage(); }
};
const char* TraceSolver::backend_name() { return "eigen-sparselu"; }
#endif

TraceSolver::TraceSolver() = default;
TraceSolver::~TraceSolver() = default;
TraceSolver::TraceSolver(TraceSolver&&) noexcept = default;
TraceSolver& TraceSolver::operator=(TraceSolver&&) noexcept = default;

void TraceSolver::factorize(const Eigen::SparseMatrix<double>& matrix)
{
    if (!lu_) {
        lu_ = std::make_unique<Backend>();
        analyzed_ = false;
    }
    if (!analyzed_) {
        lu_->lu.analyzePattern(matrix);
        analyzed_ = true;
    }
    factored_ = false;
    lu_->lu.factorize(matrix);
    if (lu_->lu.info() != Eigen::Success) {
        analyzed_ = false;
        throw TraceSolveError("trace system factorization failed: " + lu_->error());
    }
    matrix_ = matrix;
    factored_ = true;
    matrix_norm_ = norm_estimate(matrix);
}

Eigen::VectorXd TraceSolver::solve(const Eigen::VectorXd& rhs, double tol) const
{
    if (!factored_)
        throw TraceSolveError("TraceSolver::solve called before factorize");
    Eigen::VectorXd x = lu_->lu.solve(rhs);
    auto residual = [&](const Eigen::VectorXd& v) { return (rhs - matrix_ * v).eval(); };
    Eigen::VectorXd r = residual(x);
    auto bound = [&](const Eigen::VectorXd& v) { return tol * (rhs.norm() + matrix_norm_ * v.norm()); };
    if (!(r.norm() <= bound(x))) {
        x += lu_->lu.solve(r);
        r = residual(x);
    }
    if (!(r.norm() <= bound(x)) || !x.allFinite()) {
        std::ostringstream msg;
        msg << "trace solve inaccurate: residual " << r.norm() << " exceeds bound " << bound(x);
        throw TraceSolveError(msg.str());
    }
    return x;
}

Eigen::VectorXd solve_trace(const TraceSystem& system, double tol)
{
    TraceSolver solver;
    solver.factorize(system.matrix());
    return solver.solve(system.rhs(), tol);
}

} // namespace chdg
