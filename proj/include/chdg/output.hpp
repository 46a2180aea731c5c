#pragma once

#include "chdg/ch_solver.hpp"
#include "chdg/config.hpp"
#include "chdg/diagnostics.hpp"
#include "chdg/verification.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace chdg {

inline constexpr const char* library_version = "1.0.0";

/// Header level,h,err_q,ord_q,err_p,ord_p,err_u,ord_u,err_phi,ord_phi. Errors
/// and h use %.4E; orders use 5 significant digits, "-" on the first level.
void emit_convergence_csv(const ConvergenceTable& table, std::ostream& out);
void emit_convergence_csv(const ConvergenceTable& table, const std::filesystem::path& path);

/// Per-level run statistics: level,dt,steps,newton_iters,max_mass_defect,
/// err_u_neg,ord_u_neg,seconds.
void emit_convergence_details(const ConvergenceTable& table, double final_time, std::ostream& out);

/// Legacy ASCII VTK unstructured grid of triangles. Cell data: element means
/// of u and phi. Point data: u evaluated at each vertex from every incident
/// element and averaged.
void emit_fields_vtk(const Discretization& disc, const State& state, std::ostream& out);
void emit_fields_vtk(const Discretization& disc, const State& state,
                     const std::filesystem::path& path);

inline constexpr const char* diagnostics_header =
    "n,t,mass,E_total,E_chem,E_grad,E_stab,newton_iters";

void write_diagnostics_row(std::ostream& out, int step, double time, double mass,
                           const EnergyReport& energy, int newton_iterations);

/// manifest.txt: library version and trace-solver backend as comments, then
/// the full configuration as key=value lines (a valid config file).
void write_manifest(const RunConfig& cfg, const std::filesystem::path& path);

} // namespace chdg
