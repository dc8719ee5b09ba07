#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "hydrolim/checks.hpp"
#include "hydrolim/convergence.hpp"
#include "hydrolim/errors.hpp"
#include "hydrolim/io.hpp"
#include "hydrolim/lp_besov.hpp"
#include "hydrolim/snapshot.hpp"
#include "hydrolim/solvers.hpp"

namespace hydrolim::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

double resolve_dt(bool automatic, const SolverConfig& solver, const VelocityState& v0) {
  if (!automatic) return solver.dt;
  double dt = default_dt(v0);
  if (solver.t_final > 0.0) dt = std::min(dt, solver.t_final);
  return dt;
}

std::string eps_dir(double eps) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "eps_%g", eps);
  return buf;
}

void write_run_outputs(const fs::path& dir, const System& system, const Trajectory& traj) {
  fs::create_directories(dir);
  write_diagnostics_csv(dir / "diagnostics.csv", traj.diagnostics);
  write_file(dir / "summary.json", summary_json(system, traj, traj.wall_seconds));
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const DivergedRun& e) {
    err << "error: run diverged at step " << e.step() << ": " << e.what() << '\n';
    return kExitDiverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int cmd_run(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load_run_config(config);
    const VelocityState v0 = make_initial(cfg.init, cfg.grid);
    SolverConfig solver = cfg.solver;
    solver.dt = resolve_dt(cfg.dt_auto, cfg.solver, v0);

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    Probes probes;
    probes.cadence = cfg.cadence;
    probes.alpha_bound = cfg.init.alpha;
    if (cfg.snapshot_every) {
      probes.snapshot_every = cfg.snapshot_every;
      fs::create_directories(dir / "snapshots");
      probes.on_snapshot = [&](long step, double, const VelocityState& s) {
        char stem[32];
        std::snprintf(stem, sizeof(stem), "step_%08ld", step);
        const fs::path base = dir / "snapshots";
        snapshot::write(base / (std::string(stem) + "_v1.peqs"), s.v1);
        snapshot::write(base / (std::string(stem) + "_v2.peqs"), s.v2);
        snapshot::write(base / (std::string(stem) + "_w.peqs"), s.vertical_velocity());
      };
    }
    const Trajectory traj = run(v0, cfg.system, solver, probes);
    write_run_outputs(dir, cfg.system, traj);
    write_file(dir / "config.json", to_json(cfg));
    const DiagnosticsRecord& last = traj.diagnostics.back();
    out << cfg.system.name() << ": " << traj.total_steps << " steps, dt = " << solver.dt
        << ", A(T) = " << last.A << ", output in " << dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_sweep(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepConfig cfg = load_sweep_config(config);
    const VelocityState v0 = make_initial(cfg.base.init, cfg.base.grid);
    const double dt = resolve_dt(cfg.base.dt_auto, cfg.base.solver, v0);
    ConvergenceReport report = convergence_study(to_study(cfg, dt));
    report.config_hash = config_hash(to_json(cfg));

    const fs::path root = cfg.base.output_dir;
    write_run_outputs(root / "primitive", report.reference.system, report.reference.trajectory);
    for (const StudyRun& r : report.runs) {
      write_run_outputs(root / eps_dir(r.epsilon), r.system, r.trajectory);
    }
    write_file(root / "convergence_report.json", report_json(report));
    write_file(root / "config.json", to_json(cfg));
    for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
      char line[160];
      std::snprintf(line, sizeof(line), "eps %-8g E %.6e (sup %.6e, int %.6e)  p_dz %.6e\n",
                    report.epsilons[i], report.errors[i], report.sup_part[i],
                    report.int_part[i], report.p_dz[i]);
      out << line;
    }
    char line[128];
    std::snprintf(line, sizeof(line), "slope %.4f  slope_pdz %.4f\n", report.slope,
                  report.slope_pdz);
    out << line;
    return kExitOk;
  });
}

int cmd_check(const std::string& fault, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CheckOptions opts;
    if (fault == "broken-partition") {
      opts.partition = &broken_partition();
    } else if (!fault.empty()) {
      err << "error: unknown fault '" << fault << "'\n";
      return kExitConfig;
    }
    const auto results = run_checks(opts);
    bool all = true;
    for (const auto& r : results) {
      char line[200];
      std::snprintf(line, sizeof(line), "%-4s  %-48s tol %.1e  measured %.3e\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.tolerance, r.measured);
      out << line;
      all = all && r.pass;
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all ? kExitOk : kExitConfig;
  });
}

int cmd_besov(const fs::path& field, double s, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SpectralScalar f = snapshot::read(field);
    const BesovNormRecord rec = besov_norm(f, s);
    nlohmann::json j;
    j["s"] = rec.s;
    j["value"] = rec.value;
    j["blocks"] = nlohmann::json::array();
    for (const auto& [jj, c] : rec.per_block) j["blocks"].push_back({jj, c});
    out << j.dump() << '\n';
    return kExitOk;
  });
}

}  // namespace hydrolim::cli
