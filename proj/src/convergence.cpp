#include "hydrolim/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "hydrolim/errors.hpp"
#include "hydrolim/lp_besov.hpp"

namespace hydrolim {

namespace {

struct EpsResult {
  StudyRun run;
  double sup_part = 0.0;
  double int_part = 0.0;
  double p_dz = 0.0;
  double w_ratio = 0.0;
};

std::string eps_label(double eps) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

EpsResult run_one(const StudyConfig& cfg, const VelocityState& v0, const Trajectory& ref,
                  double eps) {
  VelocityState init = v0;
  if (cfg.coupling == Coupling::EpsPerturbed) {
    init = perturb_initial(v0, cfg.init.alpha * eps, cfg.init.seed + 1);
  }
  const System sys =
      cfg.mode == StudyMode::PrimitiveSelf ? System::primitive() : System::ans(eps);

  std::vector<double> b_diff;
  double sup_a = 0.0;
  double w_ratio = 0.0;
  std::size_t k = 0;
  Probes probes;
  probes.cadence = cfg.cadence;
  probes.on_probe = [&](long, const VelocityState& s, const DiagnosticsRecord&) {
    if (k >= ref.states.size()) throw Error("probe schedules of the study runs differ");
    const VelocityState& r = ref.states[k++];
    const SpectralScalar d1 = s.v1 - r.v1;
    const SpectralScalar d2 = s.v2 - r.v2;
    const BlockNorms b1 = block_norms(d1);
    const BlockNorms b2 = block_norms(d2);
    const double a = besov_from_blocks(b1, 0.5) + besov_from_blocks(b1, 1.5) +
                     besov_from_blocks(b2, 0.5) + besov_from_blocks(b2, 1.5);
    const double b = besov_from_blocks(b1, 2.5) + besov_from_blocks(b1, 3.5) +
                     besov_from_blocks(b2, 2.5) + besov_from_blocks(b2, 3.5);
    sup_a = std::max(sup_a, a);
    b_diff.push_back(b);
    const double v32 = besov_from_blocks(b1, 1.5) + besov_from_blocks(b2, 1.5);
    if (v32 > 0.0) {
      const double w12 =
          besov_norm(s.vertical_velocity() - r.vertical_velocity(), 0.5).value;
      w_ratio = std::max(w_ratio, w12 / v32);
    }
  };

  EpsResult out;
  out.run.system = sys;
  out.run.epsilon = eps;
  try {
    out.run.trajectory = run(init, sys, cfg.solver, probes);
  } catch (const DivergedRun& e) {
    throw DivergedRun(e.step(), "run at eps = " + eps_label(eps) + " diverged at step " +
                                    std::to_string(e.step()));
  }
  if (k != ref.states.size()) throw Error("probe schedules of the study runs differ");

  const Trajectory& tr = out.run.trajectory;
  std::vector<double> pdz;
  for (const auto& rec : tr.diagnostics) pdz.push_back(rec.p_dz_norm);
  out.sup_part = sup_a;
  out.int_part = trapezoid(tr.times, b_diff);
  out.p_dz = trapezoid(tr.times, pdz);
  out.w_ratio = w_ratio;
  return out;
}

}  // namespace

const char* to_string(Coupling c) noexcept {
  return c == Coupling::SameData ? "same_data" : "eps_perturbed";
}

void StudyConfig::validate() const {
  if (epsilons.size() < 3) throw ConfigError("epsilons: need at least 3 values for a slope");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !(epsilons[i] <= 1.0)) {
      throw ConfigError("epsilons: values must lie in (0, 1]");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw ConfigError("epsilons: must be strictly decreasing");
    }
  }
  if (workers < 1) throw ConfigError("workers must be positive");
  if (cadence < 1) throw ConfigError("probes.cadence must be positive");
  solver.validate(grid);
  init.validate();
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  const double den = dn * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (dn * sxy - sx * sy) / den;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < std::min(t.size(), y.size()); ++i) {
    s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  }
  return s;
}

ConvergenceReport convergence_study(const StudyConfig& cfg) {
  cfg.validate();
  const VelocityState v0 = make_initial(cfg.init, cfg.grid);

  ConvergenceReport report;
  report.reference.system = System::primitive();
  Probes ref_probes;
  ref_probes.cadence = cfg.cadence;
  ref_probes.store_states = true;
  try {
    report.reference.trajectory = run(v0, System::primitive(), cfg.solver, ref_probes);
  } catch (const DivergedRun& e) {
    throw DivergedRun(e.step(), "primitive reference run diverged at step " +
                                    std::to_string(e.step()));
  }
  const Trajectory& ref = report.reference.trajectory;

  const std::size_t n = cfg.epsilons.size();
  std::vector<EpsResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run_one(cfg, v0, ref, cfg.epsilons[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(cfg.workers, static_cast<int>(n));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < n; ++i) {
    EpsResult& r = results[i];
    report.epsilons.push_back(cfg.epsilons[i]);
    report.sup_part.push_back(r.sup_part);
    report.int_part.push_back(r.int_part);
    report.errors.push_back(r.sup_part + r.int_part);
    report.p_dz.push_back(r.p_dz);
    report.w_ratio.push_back(r.w_ratio);
    report.runs.push_back(std::move(r.run));
  }
  report.reference.trajectory.states.clear();
  report.slope = fit_loglog_slope(report.epsilons, report.errors);
  report.slope_pdz = fit_loglog_slope(report.epsilons, report.p_dz);
  return report;
}

}  // namespace hydrolim
