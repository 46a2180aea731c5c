#include "chdg/output.hpp"

#include "chdg/trace_system.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chdg {

namespace {

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4E", x);
    return buf;
}

std::string sig5(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%#.5g", x);
    return buf;
}

std::string full(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void check_written(const std::ostream& out, const std::filesystem::path& path)
{
    if (!out)
        throw std::runtime_error("write to " + path.string() + " failed");
}

// orders of one column; "exact" everywhere when some error is zero
std::vector<std::string> order_column(const std::vector<double>& errors,
                                      const std::vector<double>& hs)
{
    std::vector<std::string> col(errors.size(), "-");
    try {
        const auto ord = eoc(errors, hs);
        for (std::size_t i = 0; i < ord.size(); ++i)
            col[i + 1] = sig5(ord[i]);
    } catch (const std::invalid_argument&) {
        for (std::size_t i = 1; i < col.size(); ++i)
            col[i] = "exact";
    }
    return col;
}

} // namespace

void emit_convergence_csv(const ConvergenceTable& table, std::ostream& out)
{
    const auto hs = table.hs();
    double FieldErrors::*fields[] = {&FieldErrors::q, &FieldErrors::p, &FieldErrors::u,
                                     &FieldErrors::phi};
    std::vector<std::vector<std::string>> orders;
    for (auto f : fields)
        orders.push_back(order_column(table.column(f), hs));

    out << "level,h,err_q,ord_q,err_p,ord_p,err_u,ord_u,err_phi,ord_phi\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << row.n << "," << sci(row.h);
        for (std::size_t c = 0; c < 4; ++c)
            out << "," << sci(row.errors.*fields[c]) << "," << orders[c][i];
        out << "\n";
    }
}

void emit_convergence_csv(const ConvergenceTable& table, const std::filesystem::path& path)
{
    auto out = open_for_write(path);
    emit_convergence_csv(table, out);
    check_written(out, path);
}

void emit_convergence_details(const ConvergenceTable& table, double final_time, std::ostream& out)
{
    std::vector<std::string> neg_orders(table.rows.size(), "-");
    std::vector<double> neg, hs;
    for (const auto& row : table.rows)
        if (row.negative_norm) {
            neg.push_back(*row.negative_norm);
            hs.push_back(row.h);
        }
    if (neg.size() == table.rows.size())
        neg_orders = order_column(neg, hs);

    out << "level,dt,steps,newton_iters,max_mass_defect,err_u_neg,ord_u_neg,seconds\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out << row.n << "," << sci(row.dt) << "," << std::lround(final_time / row.dt) << ","
            << row.newton_iterations << "," << sci(row.max_mass_defect) << ","
            << (row.negative_norm ? sci(*row.negative_norm) : std::string("-")) << ","
            << neg_orders[i] << "," << sig5(row.seconds) << "\n";
    }
}

void emit_fields_vtk(const Discretization& disc, const State& state, std::ostream& out)
{
    const Mesh& mesh = disc.mesh();
    const auto& lay = disc.layout();
    const int nw = lay.n_scalar;
    const auto& basis = disc.scalar_basis();
    const std::array<Point, 3> ref_vertices = {Point(0, 0), Point(1, 0), Point(0, 1)};
    std::array<Eigen::VectorXd, 3> vertex_values;
    for (int i = 0; i < 3; ++i)
        vertex_values[i] = basis.values(ref_vertices[i]);

    std::vector<double> point_sum(mesh.num_vertices(), 0.0);
    std::vector<int> point_count(mesh.num_vertices(), 0);
    std::vector<double> u_mean(lay.n_elements), phi_mean(lay.n_elements);
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const auto off = static_cast<Eigen::Index>(e) * nw;
        const Eigen::VectorXd ue = state.u.segment(off, nw);
        const Eigen::VectorXd moments = disc.scalar_basis_integrals(e);
        const double area = disc.geometry(e).area;
        u_mean[e] = moments.dot(ue) / area;
        phi_mean[e] = moments.dot(state.phi.segment(off, nw)) / area;
        const auto& tri = mesh.element(e);
        for (int i = 0; i < 3; ++i) {
            point_sum[tri[i]] += vertex_values[i].dot(ue);
            ++point_count[tri[i]];
        }
    }

    out << "# vtk DataFile Version 3.0\n"
        << "chdg fields step " << state.step << " t " << full(state.time) << "\n"
        << "ASCII\nDATASET UNSTRUCTURED_GRID\n"
        << "POINTS " << mesh.num_vertices() << " double\n";
    for (const auto& v : mesh.vertices())
        out << full(v.x()) << " " << full(v.y()) << " 0\n";
    out << "CELLS " << lay.n_elements << " " << 4 * lay.n_elements << "\n";
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        const auto& tri = mesh.element(e);
        out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
    }
    out << "CELL_TYPES " << lay.n_elements << "\n";
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        out << "5\n";
    out << "CELL_DATA " << lay.n_elements << "\n"
        << "SCALARS u_mean double 1\nLOOKUP_TABLE default\n";
    for (double v : u_mean)
        out << full(v) << "\n";
    out << "SCALARS phi_mean double 1\nLOOKUP_TABLE default\n";
    for (double v : phi_mean)
        out << full(v) << "\n";
    out << "POINT_DATA " << mesh.num_vertices() << "\n"
        << "SCALARS u double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < point_sum.size(); ++i)
        out << full(point_count[i] ? point_sum[i] / point_count[i] : 0.0) << "\n";
}

void emit_fields_vtk(const Discretization& disc, const State& state,
                     const std::filesystem::path& path)
{
    auto out = open_for_write(path);
    emit_fields_vtk(disc, state, out);
    check_written(out, path);
}

void write_diagnostics_row(std::ostream& out, int step, double time, double mass,
                           const EnergyReport& energy, int newton_iterations)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.10E,%.16E,%.16E,%.16E,%.16E,%.16E,%d\n", step, time,
                  mass, energy.total, energy.chemical, energy.gradient, energy.stabilization,
                  newton_iterations);
    out << buf;
}

void write_manifest(const RunConfig& cfg, const std::filesystem::path& path)
{
    auto out = open_for_write(path);
    // metadata as comments so the manifest doubles as a config file
    out << "# chdg run manifest\n"
        << "# version " << library_version << "\n"
        << "# trace_solver " << TraceSolver::backend_name() << "\n"
        << cfg.to_text();
    check_written(out, path);
}

} // namespace chdg
