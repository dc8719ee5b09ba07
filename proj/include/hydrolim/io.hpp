#pragma once

// JSON configuration and the exported file formats.
//
// Run config:
//   {
//     "grid":   {"nh": 32, "nz": 16},
//     "solver": {"dt": 0.001 | "auto", "t_final": 1.0, "integrator": "exp_rk2" | "exp_euler",
//                "dealias": true, "galerkin_n": null | n, "nonlinear": true},
//     "init":   {"kind": "random_smooth" | "deterministic", "name": "shear",
//                "seed": 42, "alpha": 0.01, "spectral_decay": 0.7},
//     "system": {"type": "primitive" | "ans", "epsilon": 0.1},
//     "probes": {"cadence": 10, "snapshot_every": null | k},
//     "output_dir": "out/run"
//   }
//
// Sweep config:
//   {"base": <run config, system optional and ignored>, "epsilons": [...],
//    "coupling": "same_data" | "eps_perturbed", "workers": 1,
//    "mode": "ans_vs_primitive" | "primitive_self"}
//
// Unknown keys are rejected. Missing optional keys take the defaults above
// (output_dir "out", grid 32 x 16); a missing dt means "auto".
//
// diagnostics.csv: header row, then one row per probe,
//   t,A,B,intB,l2,div_residual,p_gradH_norm,p_dz_norm,intP
// with every value printed as %.17g.
//
// convergence_report.json keys: epsilons, errors, sup_part, int_part, p_dz,
// slope, slope_pdz, config_hash. NaN slopes are written as null.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hydrolim/convergence.hpp"
#include "hydrolim/diagnostics.hpp"
#include "hydrolim/initdata.hpp"
#include "hydrolim/solvers.hpp"

namespace hydrolim {

struct RunConfig {
  Grid grid{32, 16};
  SolverConfig solver;
  bool dt_auto = false;
  InitSpec init;
  System system = System::primitive();
  int cadence = 10;
  std::optional<int> snapshot_every;
  std::filesystem::path output_dir = "out";
};

struct SweepConfig {
  RunConfig base;
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  Coupling coupling = Coupling::SameData;
  int workers = 1;
  StudyMode mode = StudyMode::AnsVsPrimitive;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& text);
SweepConfig parse_sweep_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Canonical serialization: sorted keys, every field present.
std::string to_json(const RunConfig& cfg);
std::string to_json(const SweepConfig& cfg);

/// FNV-1a 64-bit hash of a string, as 16 hex digits.
std::string config_hash(const std::string& canonical);

/// Study parameters of a sweep; `dt` replaces an automatic step.
StudyConfig to_study(const SweepConfig& cfg, double dt);

const std::vector<std::string>& diagnostics_columns();
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& series);
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& series);

std::string report_json(const ConvergenceReport& report);

/// Terminal values of a run; wall time in seconds.
std::string summary_json(const System& system, const Trajectory& traj, double wall_seconds);

/// Whole file as a string; throws ConfigError if unreadable.
std::string read_text(const std::filesystem::path& path);

}  // namespace hydrolim
