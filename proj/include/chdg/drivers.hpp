#pragma once

#include "chdg/config.hpp"
#include "chdg/diagnostics.hpp"
#include "chdg/verification.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace chdg {

/// Manufactured-solution study over cfg.levels. Writes convergence.csv,
/// convergence_details.csv and manifest.txt into cfg.output_dir.
ConvergenceTable run_convergence_study(const RunConfig& cfg, std::ostream& log);

/// Uniform random W_h coefficients in [-amplitude, amplitude], shifted so the
/// field has zero mean.
Eigen::VectorXd random_mean_zero_field(const Discretization& disc, std::uint64_t seed,
                                       double amplitude = 0.05);

struct SpinodalRecord {
    int step = 0;
    double time = 0.0;
    double mass = 0.0;
    EnergyReport energy;
    int newton_iterations = 0;
};

/// Unforced run from random data on an n x n mesh. Writes diagnostics.csv
/// (one row per time level), fields_<step>.vtk snapshots and manifest.txt.
std::vector<SpinodalRecord> run_spinodal(const RunConfig& cfg, std::ostream& log);

/// One manufactured-solution run on an n x n mesh. Writes single.csv with
/// the final errors, fields_final.vtk and manifest.txt.
FieldErrors run_single(const RunConfig& cfg, std::ostream& log);

} // namespace chdg
