#pragma once

// Galerkin spectral time stepping. The Laplacian is integrated exactly by the
// factor E = exp(-pi^2 (|k|^2 + m^2) dt); the projected nonlinearity G is
// explicit:
//
//   ExpEuler  U' = E (U - dt G(U))
//   ExpRK2    U* = E (U - dt G(U)),  U' = E U - dt/2 (E G(U) + G(U*))
//
// Primitive: U = v, G = hydrostatic projection of u . grad v, w re-diagnosed.
// ANS:       U = (v, eps w), G = P_eps (u . grad v, u . grad (eps w)).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "hydrolim/diagnostics.hpp"
#include "hydrolim/system.hpp"
#include "hydrolim/velocity.hpp"

namespace hydrolim {

enum class Integrator { ExpEuler, ExpRK2 };

const char* to_string(Integrator i) noexcept;

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  Integrator integrator = Integrator::ExpRK2;
  bool dealias = true;
  std::optional<int> galerkin_n;
  /// false drops the advection term (linear heat flow).
  bool nonlinear = true;

  /// Throws ConfigError for dt <= 0, t_final < 0, dt > t_final (t_final > 0)
  /// or a cutoff outside [1, max(nh/2 - 1, nz)].
  void validate(const Grid& g) const;
};

/// Advisory step min(1e-3, 0.25 dx / max(1, ||u||_inf)), dx = 2/nh.
double default_dt(const VelocityState& s);

/// One step of the primitive system; `s` in the Diagnosed role.
VelocityState step_primitive(const VelocityState& s, const SolverConfig& cfg);
/// One step of the anisotropic system; `s` in the EvolvedScaled(eps) role.
VelocityState step_ans(const VelocityState& s, double eps, const SolverConfig& cfg);

struct Probes {
  /// Diagnostics every `cadence` steps, plus step 0 and the last step.
  int cadence = 10;
  bool store_states = false;
  bool store_pressure = false;
  /// Called after every diagnostics sample.
  std::function<void(long step, const VelocityState&, const DiagnosticsRecord&)> on_probe;
  /// Called every `snapshot_every` steps (and at step 0) when set.
  std::optional<int> snapshot_every;
  std::function<void(long step, double t, const VelocityState&)> on_snapshot;
  /// When set, the initial A-functional must not exceed it.
  std::optional<double> alpha_bound;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<long> steps;
  std::vector<VelocityState> states;          // filled when store_states
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<PressureField> pressure_series;  // filled when store_pressure
  long total_steps = 0;
  double dt = 0.0;
  double wall_seconds = 0.0;
};

/// Throws InadmissibleData for bad initial data and DivergedRun on
/// non-finite values. A zero horizon gives a single sample.
Trajectory run(const VelocityState& initial, const System& system, const SolverConfig& cfg,
               const Probes& probes = {});

/// Checks parity, grid, zero mean, solvability and divergence of a state.
/// Throws InadmissibleData naming the first violation.
void check_admissible(const VelocityState& s, double tol = 1e-10);

}  // namespace hydrolim
