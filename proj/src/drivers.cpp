#include "chdg/drivers.hpp"

#include "chdg/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace fs = std::filesystem;

namespace chdg {

namespace {

fs::path prepare_output(const RunConfig& cfg)
{
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("cannot create output directory '" + cfg.output_dir + "'");
    write_manifest(cfg, dir / "manifest.txt");
    return dir;
}

// the stability condition of the fully implicit scheme involves an
// unquantified constant C in dt <= C eps^3
void note_fi_condition(const RunConfig& cfg, double dt, std::ostream& log)
{
    if (cfg.scheme != Scheme::FullyImplicit)
        return;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "note: fully implicit scheme needs dt <= C eps^3 with an unknown C; "
                  "here dt/eps^3 = %.3g\n",
                  dt / (cfg.epsilon * cfg.epsilon * cfg.epsilon));
    log << buf;
}

std::string vtk_name(int step)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "fields_%06d.vtk", step);
    return buf;
}

} // namespace

ConvergenceTable run_convergence_study(const RunConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    ConvergenceSettings s;
    s.k = cfg.k;
    s.scheme = cfg.scheme;
    s.levels = cfg.levels;
    s.dt_rule = cfg.dt_rule();
    s.final_time = cfg.final_time;
    s.epsilon = cfg.epsilon;
    s.timing = cfg.source;
    s.newton = cfg.newton;
    s.with_negative_norm = cfg.negative_norm;
    for (int n : cfg.levels) {
        try {
            step_count(cfg.final_time, s.dt_rule.dt(n, cfg.k));
        } catch (const std::invalid_argument& err) {
            throw ConfigError("level n=" + std::to_string(n) + ": " + err.what());
        }
    }
    note_fi_condition(cfg, s.dt_rule.dt(cfg.levels.front(), cfg.k), log);
    s.on_level = [&](const ConvergenceRow& r) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "n=%-4d dt=%.3e  q %.4E  p %.4E  u %.4E  phi %.4E  (%d Newton its, %.1fs)\n",
                      r.n, r.dt, r.errors.q, r.errors.p, r.errors.u, r.errors.phi,
                      r.newton_iterations, r.seconds);
        log << buf << std::flush;
    };
    const ConvergenceTable table = run_convergence(s);
    emit_convergence_csv(table, dir / "convergence.csv");
    std::ofstream details(dir / "convergence_details.csv");
    emit_convergence_details(table, cfg.final_time, details);
    if (!details)
        throw std::runtime_error("write to convergence_details.csv failed");
    emit_convergence_csv(table, log);
    return table;
}

Eigen::VectorXd random_mean_zero_field(const Discretization& disc, std::uint64_t seed,
                                       double amplitude)
{
    const auto& lay = disc.layout();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    Eigen::VectorXd u(lay.scalar_size());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        u[i] = dist(rng);
    double area = 0.0;
    for (std::size_t e = 0; e < lay.n_elements; ++e)
        area += disc.geometry(e).area;
    const double mean = mass(disc, u) / area;
    for (std::size_t e = 0; e < lay.n_elements; ++e) {
        // coefficients of the constant function 1 on element e
        const Eigen::VectorXd one = disc.scalar_basis_integrals(e) / disc.geometry(e).det;
        u.segment(static_cast<Eigen::Index>(e) * lay.n_scalar, lay.n_scalar) -= mean * one;
    }
    return u;
}

std::vector<SpinodalRecord> run_spinodal(const RunConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(cfg.n));
    auto disc = std::make_shared<const Discretization>(mesh, cfg.k);
    const double dt = cfg.dt_rule().dt(cfg.n, cfg.k);
    SchemeConfig sc;
    try {
        sc = SchemeConfig::uniform(cfg.scheme, cfg.epsilon, cfg.final_time,
                                   step_count(cfg.final_time, dt));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    sc.newton = cfg.newton;
    note_fi_condition(cfg, sc.dt, log);

    CahnHilliardSolver solver(disc, sc);
    const State initial = solver.initial_state(random_mean_zero_field(*disc, cfg.seed));

    std::ofstream diag(dir / "diagnostics.csv");
    if (!diag)
        throw std::runtime_error("cannot open diagnostics.csv for writing");
    diag << diagnostics_header << "\n";

    std::vector<SpinodalRecord> records;
    auto record = [&](const State& s, int iterations) {
        SpinodalRecord r{s.step, s.time, mass(*disc, s), energy(*disc, s, cfg.epsilon), iterations};
        write_diagnostics_row(diag, r.step, r.time, r.mass, r.energy, r.newton_iterations);
        records.push_back(r);
        const bool snapshot = s.step == 0 || s.step == sc.steps ||
                              (cfg.vtk_every > 0 && s.step % cfg.vtk_every == 0);
        if (snapshot)
            emit_fields_vtk(*disc, s, dir / vtk_name(s.step));
    };
    record(initial, 0);
    const int report_every = std::max(1, sc.steps / 10);
    solver.run(initial, {[&](const State& s, const StepReport& rep) {
                   record(s, rep.newton_iterations);
                   if (s.step % report_every == 0 || s.step == sc.steps) {
                       char buf[160];
                       std::snprintf(buf, sizeof buf, "step %6d  t=%.4e  E=%.10e  mass=%.3e\n",
                                     s.step, s.time, records.back().energy.total,
                                     records.back().mass);
                       log << buf << std::flush;
                   }
               }});
    if (!diag)
        throw std::runtime_error("write to diagnostics.csv failed");
    return records;
}

FieldErrors run_single(const RunConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(cfg.n));
    auto disc = std::make_shared<const Discretization>(mesh, cfg.k);
    const double dt = cfg.dt_rule().dt(cfg.n, cfg.k);
    SchemeConfig sc;
    try {
        sc = SchemeConfig::uniform(cfg.scheme, cfg.epsilon, cfg.final_time,
                                   step_count(cfg.final_time, dt));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    sc.newton = cfg.newton;
    note_fi_condition(cfg, sc.dt, log);

    const ExactSolution exact = polynomial_bump_solution();
    CahnHilliardSolver solver(
        disc, sc, manufactured_sources(exact, cfg.epsilon, cfg.source, sc.dt, cfg.scheme));
    const State initial = solver.initial_state([&](const Point& x) { return exact.u(x, 0.0); });
    const RunSummary summary = solver.run(initial);
    const State& fin = summary.final_state;

    const FieldErrors err = solution_errors(*disc, fin, exact, fin.time);
    std::ofstream out(dir / "single.csv");
    char buf[200];
    std::snprintf(buf, sizeof buf, "n,k,scheme,dt,steps,err_q,err_p,err_u,err_phi\n"
                                   "%d,%d,%s,%.4E,%d,%.4E,%.4E,%.4E,%.4E\n",
                  cfg.n, cfg.k, to_string(cfg.scheme).c_str(), sc.dt, sc.steps, err.q, err.p,
                  err.u, err.phi);
    out << buf;
    if (!out)
        throw std::runtime_error("write to single.csv failed");
    log << buf;
    emit_fields_vtk(*disc, fin, dir / "fields_final.vtk");
    return err;
}

} // namespace chdg
