#pragma once

// Hydrostatic-limit experiment: one primitive run against anisotropic runs
// for a list of epsilons.
//
//   E(eps) = max_i A(v_eps - v)(t_i) + trapz_i B(v_eps - v)(t_i)
//   p_dz(eps) = trapz_i ||d_z p_eps||_{B^{1/2}}(t_i)
//
// with t_i the probe times. Slopes are least-squares fits in log-log.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hydrolim/initdata.hpp"
#include "hydrolim/solvers.hpp"

namespace hydrolim {

enum class Coupling { SameData, EpsPerturbed };
/// AnsVsPrimitive is the experiment; PrimitiveSelf reruns the primitive
/// system in place of every anisotropic run (E must vanish).
enum class StudyMode { AnsVsPrimitive, PrimitiveSelf };

const char* to_string(Coupling c) noexcept;

struct StudyConfig {
  Grid grid{32, 16};
  SolverConfig solver;
  InitSpec init;
  int cadence = 10;
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  Coupling coupling = Coupling::SameData;
  StudyMode mode = StudyMode::AnsVsPrimitive;
  int workers = 1;

  /// Throws ConfigError: fewer than 3 epsilons, not strictly decreasing,
  /// outside (0, 1], or workers < 1.
  void validate() const;
};

struct StudyRun {
  System system;
  double epsilon = 0.0;  // 0 for the reference run
  Trajectory trajectory;
};

struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<double> errors;
  std::vector<double> sup_part;
  std::vector<double> int_part;
  std::vector<double> p_dz;
  double slope = 0.0;      // NaN when some error is not positive
  double slope_pdz = 0.0;  // NaN when some p_dz is not positive
  /// max over probes of ||w_eps - w||_{B^{1/2}} / ||v_eps - v||_{B^{3/2}}, per eps
  std::vector<double> w_ratio;
  std::string config_hash;

  StudyRun reference;
  std::vector<StudyRun> runs;  // same order as epsilons
};

/// Least-squares slope of log y against log x; NaN if any value is not positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Trapezoid rule over (t, y) samples.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// Runs the study. Any diverged run aborts with DivergedRun naming eps and step.
ConvergenceReport convergence_study(const StudyConfig& cfg);

}  // namespace hydrolim
