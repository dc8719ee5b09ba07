#include "hydrolim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hydrolim/diagnostics.hpp"
#include "hydrolim/initdata.hpp"
#include "hydrolim/operators.hpp"
#include "hydrolim/solvers.hpp"

namespace hydrolim {

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const SpectralScalar& a, const SpectralScalar& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return m;
}

double rel_diff(const SpectralScalar& a, const SpectralScalar& b) {
  return max_diff(a, b) / std::max(max_abs_coefficient(b), 1e-300);
}

double vec_norm(const Vec3& u) {
  return std::sqrt(inner(u.x, u.x) + inner(u.y, u.y) + inner(u.z, u.z));
}

double vec_inner(const Vec3& u, const Vec3& v) {
  return inner(u.x, v.x) + inner(u.y, v.y) + inner(u.z, v.z);
}

Vec3 vec_sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

double grad_norm(const SpectralScalar& f) {
  const HorizontalPair g = grad_h(f);
  const SpectralScalar dz = d_z(f);
  return std::sqrt(inner(g.x, g.x) + inner(g.y, g.y) + inner(dz, dz));
}

class Battery {
 public:
  void add(std::string name, double tol, double measured) {
    out_.push_back({std::move(name), tol, measured, measured <= tol});
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

void spectral_checks(Battery& b, const Grid& g, std::mt19937_64& rng, int samples) {
  double roundtrip = 0.0, parseval = 0.0;
  for (int i = 0; i < samples; ++i) {
    for (Parity p : {Parity::EvenZ, Parity::OddZ}) {
      const SpectralScalar f = random_smooth_scalar(g, p, rng, 0.1);
      const PhysicalField x = to_physical(f);
      roundtrip = std::max(roundtrip, rel_diff(to_spectral(x, p), f));
      double sum = 0.0;
      for (double v : x.values) sum += v * v;
      const double quad = sum * 8.0 / static_cast<double>(x.values.size());
      parseval = std::max(parseval, std::abs(quad - inner(f, f)) / inner(f, f));
    }
  }
  b.add("transform round-trip", 1e-12, roundtrip);
  b.add("parseval", 1e-12, parseval);

  const SpectralScalar e = random_smooth_scalar(g, Parity::EvenZ, rng);
  const SpectralScalar o = random_smooth_scalar(g, Parity::OddZ, rng);
  int wrong = 0;
  wrong += d_z(e).parity() != Parity::OddZ;
  wrong += d_z(o).parity() != Parity::EvenZ;
  wrong += pointwise_product(e, o).parity() != Parity::OddZ;
  wrong += pointwise_product(o, o).parity() != Parity::EvenZ;
  wrong += laplacian(o).parity() != Parity::OddZ;
  b.add("parity closure", 0.0, wrong);

  double trunc = 0.0;
  for (int n : {1, 2, 3, g.nz}) {
    const SpectralScalar j1 = galerkin_truncate(e, n);
    const SpectralScalar j2 = galerkin_truncate(j1, n);
    trunc = std::max({trunc, max_diff(j1, j2), std::max(0.0, l2_norm(j1) - l2_norm(e))});
  }
  b.add("galerkin truncation idempotent and nonexpansive", 0.0, trunc);
}

void lp_checks(Battery& b, const Grid& g, std::mt19937_64& rng, int samples,
               const DyadicPartition& part) {
  double tele = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double r = std::exp(std::log(1e-3) + (std::log(1e4) - std::log(1e-3)) * uniform01(rng));
    double s = 0.0;
    for (int j = -60; j <= 60; ++j) s += part.phi(std::ldexp(r, -j));
    tele = std::max(tele, std::abs(s - 1.0));
  }
  b.add("partition of unity", 1e-12, tele);

  const auto [j_min, j_max] = part.block_range(g);
  double recon = 0.0, ortho = 0.0, bern = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SpectralScalar f = random_smooth_scalar(g, i % 2 ? Parity::OddZ : Parity::EvenZ, rng, 0.05);
    std::vector<SpectralScalar> blocks;
    SpectralScalar sum(g, f.parity());
    for (int j = j_min; j <= j_max; ++j) {
      blocks.push_back(dyadic_block(f, j, part));
      sum += blocks.back();
    }
    recon = std::max(recon, l2_norm(sum - f) / l2_norm(f));
    for (int j = j_min; j <= j_max; ++j) {
      const SpectralScalar& bj = blocks[static_cast<std::size_t>(j - j_min)];
      for (int k = j + 3; k <= j_max; ++k) {
        ortho = std::max(ortho, max_abs_coefficient(dyadic_block(bj, k, part)));
      }
      const double nb = l2_norm(bj);
      if (nb == 0.0) continue;
      const double ratio = grad_norm(bj) / nb / std::ldexp(1.0, j);
      bern = std::max({bern, 1.1 - ratio, ratio - 8.0 / 3.0});
    }
  }
  b.add("littlewood-paley reconstruction", 1e-10, recon);
  b.add("littlewood-paley almost orthogonality", 0.0, ortho);
  b.add("bernstein band", 1e-12, std::max(0.0, bern));

  SpectralScalar c(g, Parity::EvenZ);
  c.set_real_mode(1, 0, 0, 0.5);
  b.add("single-block besov value", 1e-12,
        std::abs(besov_norm(c, 0.5, part).value - 2.0 * std::sqrt(2.0)));
}

void projector_checks(Battery& b, const Grid& g, std::mt19937_64& rng, int samples) {
  double idem = 0.0, div = 0.0, expand = 0.0, sym = 0.0;
  for (double eps : {1.0, 0.1, 0.01}) {
    const AnisotropyScale e(eps);
    for (int i = 0; i < samples; ++i) {
      const Vec3 u{random_smooth_scalar(g, Parity::EvenZ, rng, 0.1),
                   random_smooth_scalar(g, Parity::EvenZ, rng, 0.1),
                   random_smooth_scalar(g, Parity::OddZ, rng, 0.1)};
      const Vec3 v{random_smooth_scalar(g, Parity::EvenZ, rng, 0.1),
                   random_smooth_scalar(g, Parity::EvenZ, rng, 0.1),
                   random_smooth_scalar(g, Parity::OddZ, rng, 0.1)};
      const Vec3 pu = leray_aniso(u, e);
      const Vec3 ppu = leray_aniso(pu, e);
      idem = std::max(idem, vec_norm(vec_sub(ppu, pu)) / vec_norm(pu));
      div = std::max(div, l2_norm(div_eps(pu, e)) / l2_norm(div_eps(u, e)));
      expand = std::max(expand, (vec_norm(pu) - vec_norm(u)) / vec_norm(u));
      const Vec3 pv = leray_aniso(v, e);
      sym = std::max(sym, std::abs(vec_inner(pu, v) - vec_inner(u, pv)) /
                              (vec_norm(u) * vec_norm(v)));
    }
  }
  b.add("leray idempotence", 1e-12, idem);
  b.add("leray divergence free", 1e-12, div);
  b.add("leray nonexpansive", 1e-14, std::max(0.0, expand));
  b.add("leray symmetric", 1e-12, sym);

  const auto out = leray_symbol({kPi, 0.0, kPi}, {cplx{1.0}, cplx{}, cplx{}});
  const double single = std::max({std::abs(out[0] - 0.5), std::abs(out[1]), std::abs(out[2] + 0.5)});
  b.add("leray single mode", 1e-14, single);
}

void pressure_checks(Battery& b, const Grid& g, std::mt19937_64& rng, int samples) {
  double helm = 0.0, hydro = 0.0, paths = 0.0, elim = 0.0, skew = 0.0, chain = 0.0;
  for (int i = 0; i < samples; ++i) {
    const VelocityState s = random_admissible(g, rng, 0.3);

    for (double eps : {1.0, 0.1}) {
      const VelocityState sc = as_scaled(s, eps);
      const AnisotropyScale e(eps);
      const Vec3 n = ans_nonlinearity(sc);
      const Vec3 pn = leray_aniso(n, e);
      const Vec3 gp = grad_eps(ans_pressure(sc, e).p, e);
      helm = std::max(helm, vec_norm(vec_sub(vec_sub(pn, gp), n)) / vec_norm(n));
    }

    const HorizontalPair n = primitive_nonlinearity(s);
    const SpectralScalar p = primitive_pressure(s).p;
    const SpectralScalar lhs = 2.0 * laplacian_h(p);
    const SpectralScalar divn = div_h(n.x, n.y);
    double worst = 0.0;
    for (int ix = 0; ix < g.nh; ++ix) {
      for (int iy = 0; iy < g.nh; ++iy) {
        const std::size_t k = g.index(ix, iy, 0);
        if (ix == 0 && iy == 0) continue;
        worst = std::max(worst, std::abs(lhs.coeffs()[k] + 2.0 * divn.coeffs()[k]));
      }
    }
    hydro = std::max(hydro, worst / std::max(max_abs_coefficient(divn), 1e-300));
    paths = std::max(paths, rel_diff(primitive_pressure_quadrature(s).p, p));

    const HorizontalPair gp = grad_h(p);
    const double gv = inner(gp.x, s.v1) + inner(gp.y, s.v2);
    const double scale = std::sqrt(inner(gp.x, gp.x) + inner(gp.y, gp.y)) *
                         std::sqrt(inner(s.v1, s.v1) + inner(s.v2, s.v2));
    elim = std::max(elim, std::abs(gv) / scale);

    const SpectralScalar f = random_smooth_scalar(g, Parity::EvenZ, rng, 0.3);
    const SpectralScalar adv = nonlinear_term(s, f);
    skew = std::max(skew, std::abs(inner(adv, f)) / (l2_norm(adv) * l2_norm(f)));

    const SpectralScalar dzw = d_z(s.w);
    const SpectralScalar dh = div_h(s.v1, s.v2);
    const BlockNorms bw = block_norms(s.w), bdz = block_norms(dzw), bdh = block_norms(dh);
    for (double sv : {0.5, 1.5, 2.5, 3.5}) {
      const double a = besov_from_blocks(bw, sv);
      const double c = besov_from_blocks(bdz, sv);
      const double d = besov_from_blocks(bdh, sv);
      chain = std::max({chain, (a - c) / c, std::abs(c - d) / d});
    }
  }
  b.add("helmholtz consistency P N - grad p = N", 1e-10, helm);
  b.add("hydrostatic pressure identity", 1e-12, hydro);
  b.add("pressure path equivalence", 1e-10, paths);
  b.add("pressure elimination", 1e-10, elim);
  b.add("advection skew symmetry", 1e-10, skew);
  b.add("vertical velocity norm chain", 1e-12, std::max(0.0, chain));

  SpectralScalar v1(g, Parity::EvenZ), v2(g, Parity::EvenZ);
  v1.set_real_mode(0, 1, 1, cplx{0.0, -0.5});
  v2.set_real_mode(1, 0, 1, cplx{0.0, -0.5});
  const VelocityState vp{v1, v2, SpectralScalar(g, Parity::OddZ), WRole::diagnosed()};
  SpectralScalar expect(g, Parity::EvenZ);
  expect.set_real_mode(1, 1, 0, 0.125);
  expect.set_real_mode(1, -1, 0, 0.125);
  b.add("analytic hydrostatic pressure", 1e-12, max_diff(primitive_pressure(vp).p, expect));
}

void poincare_checks(Battery& b, const Grid& g, std::mt19937_64& rng, int samples) {
  double two = 0.0, sharp = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SpectralScalar f = random_smooth_scalar(g, Parity::OddZ, rng, 0.05 * (i + 1));
    const double nf = l2_norm(f);
    const double nd = l2_norm(d_z(f));
    two = std::max(two, nf / (2.0 * nd) - 1.0);
    sharp = std::max(sharp, kPi * nf / nd - 1.0);
  }
  b.add("poincare constant 2", 0.0, std::max(0.0, two));
  b.add("poincare constant 1/pi", 1e-12, std::max(0.0, sharp));
}

void solver_checks(Battery& b, const Grid& g, std::mt19937_64& rng) {
  SolverConfig lin;
  lin.nonlinear = false;
  lin.dt = 0.01;
  lin.t_final = 0.1;
  InitSpec spec;
  spec.kind = InitSpec::Kind::Deterministic;
  spec.name = "overturning";
  spec.alpha = 1.0;
  const VelocityState s0 = make_initial(spec, g);
  const double decay = std::exp(-2.0 * kPi * kPi * lin.t_final);
  double heat = 0.0;
  for (const System sys : {System::primitive(), System::ans(0.1)}) {
    Probes pr;
    pr.store_states = true;
    const Trajectory tr = run(s0, sys, lin, pr);
    const VelocityState end = as_diagnosed(tr.states.back());
    heat = std::max(heat, rel_diff(end.v1, decay * s0.v1));
    heat = std::max(heat, rel_diff(end.w, decay * s0.w));
  }
  b.add("heat kernel exactness", 1e-12, heat);

  SolverConfig nl;
  nl.dt = 1e-3;
  nl.t_final = 0.02;
  VelocityState s = random_admissible(g, rng, 0.7);
  s.v1 *= 0.1;
  s.v2 *= 0.1;
  s.w *= 0.1;
  double drift = 0.0, div = 0.0;
  int parity = 0;
  for (const System sys : {System::primitive(), System::ans(0.1)}) {
    Probes pr;
    pr.cadence = 1;
    pr.store_states = true;
    const Trajectory tr = run(s, sys, nl, pr);
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
      const auto& a = tr.states[i];
      const auto& p = tr.states[i - 1];
      drift = std::max({drift, std::abs(mean_coefficient(a.v1) - mean_coefficient(p.v1)),
                        std::abs(mean_coefficient(a.v2) - mean_coefficient(p.v2))});
      parity += a.v1.parity() != Parity::EvenZ || a.v2.parity() != Parity::EvenZ ||
                a.w.parity() != Parity::OddZ;
    }
    for (const auto& r : tr.diagnostics) div = std::max(div, r.div_residual);
  }
  b.add("mean drift per step", 1e-13, drift);
  b.add("parity preserved", 0.0, parity);
  b.add("divergence preserved", 1e-8, div);
}

}  // namespace

const DyadicPartition& broken_partition() {
  static const DyadicPartition p([](double r) { return std::exp(-r * r); }, 1.1, 8.0 / 3.0);
  return p;
}

std::vector<CheckResult> run_checks(const CheckOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  Battery b;
  spectral_checks(b, opts.grid, rng, opts.samples);
  lp_checks(b, opts.grid, rng, opts.samples, *opts.partition);
  projector_checks(b, opts.grid, rng, opts.samples);
  pressure_checks(b, opts.grid, rng, opts.samples);
  poincare_checks(b, opts.grid, rng, opts.samples);
  solver_checks(b, opts.grid, rng);
  return b.take();
}

}  // namespace hydrolim
