#include "hydrolim/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "hydrolim/errors.hpp"
#include "hydrolim/kernels.hpp"
#include "hydrolim/lp_besov.hpp"
#include "hydrolim/operators.hpp"

namespace hydrolim {

namespace {

using Fields = std::vector<SpectralScalar>;

// exp(-pi^2 n dt) for every n = k_x^2 + k_y^2 + m^2 on the grid.
class HeatFactor {
 public:
  HeatFactor(const Grid& g, double dt) : grid_(g), dt_(dt) {
    const int k = g.nh / 2;
    const int n_max = 2 * k * k + g.nz * g.nz;
    table_.resize(static_cast<std::size_t>(n_max + 1));
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (int n = 0; n <= n_max; ++n) table_[static_cast<std::size_t>(n)] = std::exp(-pi2 * n * dt);
  }

  double dt() const noexcept { return dt_; }

  SpectralScalar operator()(SpectralScalar f) const {
    const Grid& g = grid_;
    auto c = f.coeffs();
    kernels::parallel_for(g.nh, [&](int ix) {
      const int kx = g.wavenumber(ix);
      for (int iy = 0; iy < g.nh; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int m = 0; m <= g.nz; ++m) {
          c[g.index(ix, iy, m)] *= table_[static_cast<std::size_t>(kx * kx + ky * ky + m * m)];
        }
      }
    });
    return f;
  }

 private:
  Grid grid_;
  double dt_;
  std::vector<double> table_;
};

Fields heat(const HeatFactor& e, const Fields& u) {
  Fields out;
  out.reserve(u.size());
  for (const auto& f : u) out.push_back(e(f));
  return out;
}

// a + s * b, componentwise
Fields axpy(const Fields& a, double s, const Fields& b) {
  Fields out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
  return out;
}

template <class Rhs>
Fields advance(const Fields& u, Rhs&& rhs, const HeatFactor& e, Integrator integrator) {
  const double dt = e.dt();
  const Fields g0 = rhs(u);
  if (integrator == Integrator::ExpEuler) return heat(e, axpy(u, -dt, g0));
  const Fields star = heat(e, axpy(u, -dt, g0));
  const Fields g1 = rhs(star);
  return axpy(heat(e, axpy(u, -0.5 * dt, g0)), -0.5 * dt, g1);
}

Fields truncate(Fields f, const std::optional<int>& n) {
  if (!n) return f;
  for (auto& x : f) x = galerkin_truncate(std::move(x), *n);
  return f;
}

Fields zeros_like(const Fields& u) {
  Fields out;
  for (const auto& f : u) out.emplace_back(f.grid(), f.parity());
  return out;
}

Dealias dealias_mode(const SolverConfig& cfg) {
  return cfg.dealias ? Dealias::TwoThirds : Dealias::None;
}

Fields primitive_rhs(const Fields& v, const SolverConfig& cfg) {
  if (!cfg.nonlinear) return zeros_like(v);
  const VelocityState s{v[0], v[1], diagnose_w(v[0], v[1]), WRole::diagnosed()};
  HorizontalPair n = leray_hydrostatic(primitive_nonlinearity(s, dealias_mode(cfg)));
  return truncate({std::move(n.x), std::move(n.y)}, cfg.galerkin_n);
}

Fields ans_rhs(const Fields& u, double eps, const SolverConfig& cfg) {
  if (!cfg.nonlinear) return zeros_like(u);
  const VelocityState s{u[0], u[1], u[2], WRole::evolved_scaled(eps)};
  Vec3 n = leray_aniso(ans_nonlinearity(s, dealias_mode(cfg)), AnisotropyScale(eps));
  return truncate({std::move(n.x), std::move(n.y), std::move(n.z)}, cfg.galerkin_n);
}

VelocityState primitive_step(const VelocityState& s, const SolverConfig& cfg,
                             const HeatFactor& e) {
  const Fields v = advance(
      Fields{s.v1, s.v2}, [&](const Fields& x) { return primitive_rhs(x, cfg); }, e,
      cfg.integrator);
  SpectralScalar w = diagnose_w(v[0], v[1]);
  return {v[0], v[1], std::move(w), WRole::diagnosed()};
}

VelocityState ans_step(const VelocityState& s, double eps, const SolverConfig& cfg,
                       const HeatFactor& e) {
  const Fields u = advance(
      Fields{s.v1, s.v2, s.w}, [&](const Fields& x) { return ans_rhs(x, eps, cfg); }, e,
      cfg.integrator);
  return {u[0], u[1], u[2], WRole::evolved_scaled(eps)};
}

bool finite_state(const VelocityState& s) {
  return all_finite(s.v1) && all_finite(s.v2) && all_finite(s.w);
}

double max_abs(const PhysicalField& f) {
  double m = 0.0;
  for (double x : f.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

const char* to_string(Integrator i) noexcept {
  return i == Integrator::ExpEuler ? "exp_euler" : "exp_rk2";
}

void SolverConfig::validate(const Grid& g) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ConfigError("solver.t_final must be nonnegative");
  }
  if (t_final > 0.0 && dt > t_final) throw ConfigError("solver.dt exceeds solver.t_final");
  if (galerkin_n) {
    const int limit = std::max(g.nh / 2 - 1, g.nz);
    if (*galerkin_n < 1 || *galerkin_n > limit) {
      throw ConfigError("solver.galerkin_n must lie in [1, " + std::to_string(limit) + "]");
    }
  }
}

double default_dt(const VelocityState& s) {
  const double umax = std::max({max_abs(to_physical(s.v1)), max_abs(to_physical(s.v2)),
                                max_abs(to_physical(s.vertical_velocity()))});
  const double dx = 2.0 / s.grid().nh;
  return std::min(1e-3, 0.25 * dx / std::max(1.0, umax));
}

VelocityState step_primitive(const VelocityState& s, const SolverConfig& cfg) {
  if (s.role.is_scaled()) throw InadmissibleData("step_primitive needs a Diagnosed state");
  return primitive_step(s, cfg, HeatFactor(s.grid(), cfg.dt));
}

VelocityState step_ans(const VelocityState& s, double eps, const SolverConfig& cfg) {
  if (!s.role.is_scaled() || s.role.epsilon != eps) {
    throw InadmissibleData("step_ans needs a state scaled with the same epsilon");
  }
  return ans_step(s, eps, cfg, HeatFactor(s.grid(), cfg.dt));
}

void check_admissible(const VelocityState& s, double tol) {
  s.check_structure();
  for (const SpectralScalar* f : {&s.v1, &s.v2, &s.w}) {
    try {
      validate(*f);
    } catch (const Error& e) {
      throw InadmissibleData(std::string("invalid component: ") + e.what());
    }
  }
  const double scale = std::max(1.0, std::max(max_abs_coefficient(s.v1), max_abs_coefficient(s.v2)));
  if (std::abs(mean_coefficient(s.v1)) > 1e-12 || std::abs(mean_coefficient(s.v2)) > 1e-12) {
    throw InadmissibleData("horizontal velocity must have zero mean");
  }
  try {
    diagnose_w(s.v1, s.v2, tol);
  } catch (const IncompatibleData& e) {
    throw InadmissibleData(e.what());
  }
  const double res = divergence_residual(s);
  if (res > tol * scale) {
    throw InadmissibleData("initial velocity is not divergence free (residual " +
                           std::to_string(res) + ")");
  }
}

Trajectory run(const VelocityState& initial, const System& system, const SolverConfig& cfg,
               const Probes& probes) {
  const Grid& g = initial.grid();
  cfg.validate(g);
  if (probes.cadence < 1) throw ConfigError("probes.cadence must be positive");
  if (probes.snapshot_every && *probes.snapshot_every < 1) {
    throw ConfigError("probes.snapshot_every must be positive");
  }
  check_admissible(initial);

  if (system.is_ans()) (void)AnisotropyScale(system.epsilon);

  VelocityState state = as_diagnosed(initial);
  if (cfg.galerkin_n) {
    state.v1 = galerkin_truncate(state.v1, *cfg.galerkin_n);
    state.v2 = galerkin_truncate(state.v2, *cfg.galerkin_n);
  }
  state.w = diagnose_w(state.v1, state.v2);
  if (system.is_ans()) {
    const double eps = system.epsilon;
    state = as_scaled(state, eps);
    Vec3 u = leray_aniso({state.v1, state.v2, state.w}, AnisotropyScale(eps));
    state = {std::move(u.x), std::move(u.y), std::move(u.z), WRole::evolved_scaled(eps)};
  }

  if (probes.alpha_bound) {
    const double a0 = besov_pair(state.v1, state.v2).a;
    if (a0 > *probes.alpha_bound * (1.0 + 1e-12)) {
      throw InadmissibleData("initial A-functional " + std::to_string(a0) +
                             " exceeds the configured alpha " +
                             std::to_string(*probes.alpha_bound));
    }
  }

  long n_steps = 0;
  if (cfg.t_final > 0.0) {
    n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    n_steps = std::max(n_steps, 1L);
  }
  const double last_dt = cfg.t_final - static_cast<double>(n_steps - 1) * cfg.dt;
  const HeatFactor full(g, cfg.dt);
  const HeatFactor last(g, n_steps > 0 ? last_dt : cfg.dt);

  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  traj.total_steps = n_steps;
  traj.dt = cfg.dt;

  auto sample = [&](long step, double t) {
    PressureField p = pressure_for(state, system);
    DiagnosticsRecord rec = record(state, system, t, &p);
    append_record(traj.diagnostics, rec);
    traj.times.push_back(t);
    traj.steps.push_back(step);
    if (probes.store_states) traj.states.push_back(state);
    if (probes.store_pressure) traj.pressure_series.push_back(std::move(p));
    if (probes.on_probe) probes.on_probe(step, state, traj.diagnostics.back());
  };
  auto snapshot = [&](long step, double t) {
    if (probes.snapshot_every && probes.on_snapshot && step % *probes.snapshot_every == 0) {
      probes.on_snapshot(step, t, state);
    }
  };

  sample(0, 0.0);
  snapshot(0, 0.0);
  for (long step = 1; step <= n_steps; ++step) {
    const bool final_step = step == n_steps;
    const HeatFactor& e = final_step ? last : full;
    state = system.is_ans() ? ans_step(state, system.epsilon, cfg, e)
                            : primitive_step(state, cfg, e);
    if (!finite_state(state)) {
      throw DivergedRun(step, "non-finite velocity at step " + std::to_string(step));
    }
    const double t = final_step ? cfg.t_final : static_cast<double>(step) * cfg.dt;
    if (step % probes.cadence == 0 || final_step) sample(step, t);
    snapshot(step, t);
  }
  traj.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

}  // namespace hydrolim
