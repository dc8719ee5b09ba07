#include "hydrolim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hydrolim/errors.hpp"
#include "hydrolim/initdata.hpp"
#include "hydrolim/lp_besov.hpp"

namespace hydrolim {

namespace {

SpectralScalar without_mean(SpectralScalar f) {
  if (f.parity() == Parity::EvenZ) f.coeffs()[0] = cplx{};
  return f;
}

double pair_norm(const SpectralScalar& a, const SpectralScalar& b) {
  return std::sqrt(inner(a, a) + inner(b, b));
}

// F = Lap d - (G_eps - G)_H at one probe.
HorizontalPair difference_rhs(const VelocityState& ans, const VelocityState& prim,
                              double epsilon, bool nonlinear) {
  SpectralScalar d1 = ans.v1 - prim.v1;
  SpectralScalar d2 = ans.v2 - prim.v2;
  HorizontalPair f{laplacian(d1), laplacian(d2)};
  if (!nonlinear) return f;
  const Vec3 ge = leray_aniso(ans_nonlinearity(ans), AnisotropyScale(epsilon));
  const HorizontalPair gp = leray_hydrostatic(primitive_nonlinearity(as_diagnosed(prim)));
  f.x -= ge.x - gp.x;
  f.y -= ge.y - gp.y;
  return f;
}

}  // namespace

PressureField pressure_for(const VelocityState& state, const System& system) {
  if (system.is_ans()) return ans_pressure(state, AnisotropyScale(system.epsilon));
  return primitive_pressure(as_diagnosed(state));
}

DiagnosticsRecord record(const VelocityState& state, const System& system, double t,
                         const PressureField* pressure) {
  DiagnosticsRecord rec;
  rec.t = t;
  const BesovPair ab = besov_pair(state.v1, state.v2);
  rec.A = ab.a;
  rec.B = ab.b;
  rec.l2 = pair_norm(state.v1, state.v2);
  rec.div_residual = divergence_residual(state);

  const PressureField p = pressure != nullptr ? *pressure : pressure_for(state, system);
  const HorizontalPair gp = grad_h(p.p);
  rec.p_gradH_norm = besov_pair(gp.x, gp.y).a;
  rec.p_integrand = rec.p_gradH_norm;
  if (system.is_ans()) {
    const SpectralScalar dzp = d_z(p.p);
    const BlockNorms blocks = block_norms(dzp);
    rec.p_dz_norm = besov_from_blocks(blocks, 0.5);
    rec.p_integrand += (besov_from_blocks(blocks, 0.5) + besov_from_blocks(blocks, 1.5)) /
                       system.epsilon;
  }
  return rec;
}

void append_record(std::vector<DiagnosticsRecord>& series, DiagnosticsRecord next) {
  if (series.empty()) {
    next.intB = 0.0;
    next.intP = 0.0;
  } else {
    const DiagnosticsRecord& prev = series.back();
    const double h = next.t - prev.t;
    next.intB = prev.intB + 0.5 * h * (prev.B + next.B);
    next.intP = prev.intP + 0.5 * h * (prev.p_integrand + next.p_integrand);
  }
  series.push_back(next);
}

AprioriResult apriori_check(const std::vector<DiagnosticsRecord>& series, double tol) {
  AprioriResult r;
  if (series.empty()) {
    r.pass = false;
    return r;
  }
  const double a0 = series.front().A;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double a = series[i].A;
    if (a0 > 0.0) r.worst_ratio = std::max(r.worst_ratio, a / a0);
    if (!(a <= a0 * (1.0 + tol)) && !r.first_violation_t) r.first_violation_t = series[i].t;
    if (i > 0 && !(a < series[i - 1].A)) r.strictly_decreasing = false;
  }
  if (series.size() < 2) r.strictly_decreasing = false;
  const DiagnosticsRecord& last = series.back();
  r.c_eff = last.intB > 0.0 ? 2.0 * (a0 - last.A) / last.intB : 0.0;
  r.pass = !r.first_violation_t && std::isfinite(last.intB) && r.c_eff > 0.0;
  return r;
}

std::vector<double> difference_residual(const std::vector<double>& times,
                                        const std::vector<VelocityState>& ans_states,
                                        const std::vector<VelocityState>& prim_states,
                                        double epsilon, bool nonlinear) {
  if (times.size() != ans_states.size() || times.size() != prim_states.size()) {
    throw Error("difference_residual needs equally long trajectories");
  }
  std::vector<double> out;
  if (times.size() < 2) return out;
  std::vector<HorizontalPair> f;
  f.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    f.push_back(difference_rhs(ans_states[i], prim_states[i], epsilon, nonlinear));
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double h = times[i + 1] - times[i];
    const SpectralScalar avg1 = 0.5 * (f[i].x + f[i + 1].x);
    const SpectralScalar avg2 = 0.5 * (f[i].y + f[i + 1].y);
    const SpectralScalar r1 =
        (1.0 / h) * ((ans_states[i + 1].v1 - prim_states[i + 1].v1) -
                     (ans_states[i].v1 - prim_states[i].v1)) - avg1;
    const SpectralScalar r2 =
        (1.0 / h) * ((ans_states[i + 1].v2 - prim_states[i + 1].v2) -
                     (ans_states[i].v2 - prim_states[i].v2)) - avg2;
    out.push_back(pair_norm(r1, r2) / std::max(pair_norm(avg1, avg2), 1e-300));
  }
  return out;
}

ProductLawSample product_law_ratio(const SpectralScalar& u, const SpectralScalar& v) {
  const SpectralScalar u0 = without_mean(u);
  const SpectralScalar v0 = without_mean(v);
  const SpectralScalar uv = without_mean(pointwise_product(u0, v0));
  const BlockNorms bu = block_norms(u0);
  const BlockNorms bv = block_norms(v0);
  const BlockNorms buv = block_norms(uv);
  const double u32 = besov_from_blocks(bu, 1.5), u52 = besov_from_blocks(bu, 2.5);
  const double v32 = besov_from_blocks(bv, 1.5), v52 = besov_from_blocks(bv, 2.5);
  ProductLawSample s;
  s.ratio_32 = besov_from_blocks(buv, 1.5) / (u32 * v32);
  s.ratio_52 = besov_from_blocks(buv, 2.5) / (u32 * v52 + u52 * v32);
  return s;
}

ProductLawReport product_law_probe(int ensemble_size, std::uint64_t seed, const Grid& grid) {
  if (ensemble_size < 10) throw ConfigError("product_law_probe needs ensemble_size >= 10");
  std::mt19937_64 rng(seed);
  ProductLawReport report;
  for (int i = 0; i < ensemble_size; ++i) {
    const SpectralScalar u = random_smooth_scalar(grid, Parity::EvenZ, rng);
    const SpectralScalar v = random_smooth_scalar(grid, Parity::EvenZ, rng);
    const ProductLawSample s = product_law_ratio(u, v);
    report.max_ratio_32 = std::max(report.max_ratio_32, s.ratio_32);
    report.max_ratio_52 = std::max(report.max_ratio_52, s.ratio_52);
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace hydrolim
