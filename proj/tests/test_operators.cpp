#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hydrolim/errors.hpp"
#include "hydrolim/operators.hpp"
#include "support.hpp"

using namespace hydrolim;
using namespace testing;
using std::numbers::pi;

namespace {

const Grid kGrid(16, 8);

SpectralScalar sin_y_cos_z(const Grid& g) { return mode(g, Parity::EvenZ, 0, 1, 1, cplx(0, -0.5)); }
SpectralScalar sin_x_cos_z(const Grid& g) { return mode(g, Parity::EvenZ, 1, 0, 1, cplx(0, -0.5)); }

VelocityState vortexpair(const Grid& g) {
  return {sin_y_cos_z(g), sin_x_cos_z(g), SpectralScalar(g, Parity::OddZ), WRole::diagnosed()};
}

Vec3 random_vec(const Grid& g, std::uint64_t seed) {
  return {random_field(g, Parity::EvenZ, seed), random_field(g, Parity::EvenZ, seed + 1000),
          random_field(g, Parity::OddZ, seed + 2000)};
}

double norm3(const Vec3& u) {
  const double a = l2_norm(u.x), b = l2_norm(u.y), c = l2_norm(u.z);
  return std::sqrt(a * a + b * b + c * c);
}

double inner3(const Vec3& u, const Vec3& v) {
  return inner(u.x, v.x) + inner(u.y, v.y) + inner(u.z, v.z);
}

double diff3(const Vec3& a, const Vec3& b) {
  return std::max({max_diff(a.x, b.x), max_diff(a.y, b.y), max_diff(a.z, b.z)});
}

VelocityState random_state(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_admissible(g, rng);
}

}  // namespace

TEST_CASE("derivative multipliers") {
  const auto& g = kGrid;
  const auto s = mode(g, Parity::OddZ, 0, 0, 1, 1.0);
  const auto ds = d_z(s);
  CHECK(ds.parity() == Parity::EvenZ);
  CHECK(max_diff(ds, mode(g, Parity::EvenZ, 0, 0, 1, pi)) < 1e-15);
  const auto c = mode(g, Parity::EvenZ, 0, 0, 2, 1.0);
  CHECK(max_diff(d_z(c), mode(g, Parity::OddZ, 0, 0, 2, -2 * pi)) < 1e-15);
  const auto cc = mode(g, Parity::EvenZ, 1, 0, 1, 0.5);
  CHECK(max_diff(laplacian(cc), -2 * pi * pi * cc) < 1e-13);
  CHECK(max_diff(laplacian_h(cc), -pi * pi * cc) < 1e-13);
  const auto gx = grad_h(cos_x(g));
  CHECK(max_diff(gx.x, mode(g, Parity::EvenZ, 1, 0, 0, cplx(0, 0.5 * pi))) < 1e-15);
  CHECK(max_abs_coefficient(gx.y) == 0.0);
}

TEST_CASE("operator compositions on random fields") {
  const auto& g = kGrid;
  for (Parity p : {Parity::EvenZ, Parity::OddZ}) {
    const auto f = random_field(g, p, 17);
    const auto gh = grad_h(f);
    const auto lap = laplacian(f);
    CHECK(max_diff(div_h(gh.x, gh.y) + d_z(d_z(f)), lap) < 1e-12 * max_abs_coefficient(lap));
  }
  const auto f = random_field(g, Parity::EvenZ, 18);
  for (double e : {1.0, 0.3, 0.05}) {
    const AnisotropyScale eps(e);
    const auto lap = laplacian_eps(f, eps);
    CHECK(max_diff(div_eps(grad_eps(f, eps), eps), lap) < 1e-12 * max_abs_coefficient(lap));
  }
  const AnisotropyScale one(1.0);
  CHECK(max_diff(laplacian_eps(f, one), laplacian(f)) == 0.0);
  const auto ge = grad_eps(f, one);
  const auto gh = grad_h(f);
  CHECK(max_diff(ge.x, gh.x) == 0.0);
  CHECK(max_diff(ge.z, d_z(f)) == 0.0);
  auto flat = f;
  for (int i = 0; i < g.nh; ++i)
    for (int j = 0; j < g.nh; ++j)
      for (int m = 1; m <= g.nz; ++m) flat.coeffs()[g.index(i, j, m)] = 0.0;
  for (double e : {1.0, 0.01}) CHECK(max_abs_coefficient(grad_eps(flat, AnisotropyScale(e)).z) == 0.0);
  CHECK_THROWS_AS(AnisotropyScale(0.0), ConfigError);
  CHECK_THROWS_AS(AnisotropyScale(1.5), ConfigError);
}

TEST_CASE("Leray symbol on a single mode") {
  const auto r = leray_symbol({pi, 0.0, pi}, {1.0, 0.0, 0.0});
  CHECK(std::abs(r[0] - cplx(0.5)) < 1e-14);
  CHECK(std::abs(r[1]) < 1e-14);
  CHECK(std::abs(r[2] - cplx(-0.5)) < 1e-14);
  const auto z = leray_symbol({0.0, 0.0, 0.0}, {1.0, 2.0, 3.0});
  CHECK(z[2] == cplx(3.0));
}

TEST_CASE("Leray projection of cos(pi x) cos(pi z) e1") {
  // Gradient part: grad of sin(pi x) cos(pi z) / (2 pi).
  const auto& g = kGrid;
  Vec3 u{mode(g, Parity::EvenZ, 1, 0, 1, 0.5), SpectralScalar(g, Parity::EvenZ),
         SpectralScalar(g, Parity::OddZ)};
  const auto pu = leray_aniso(u, AnisotropyScale(1.0));
  const auto x = to_physical(pu.x), z = to_physical(pu.z);
  const auto ex = sample(g, [](double x, double, double z) { return 0.5 * std::cos(pi * x) * std::cos(pi * z); });
  const auto ez = sample(g, [](double x, double, double z) { return 0.5 * std::sin(pi * x) * std::sin(pi * z); });
  CHECK(max_diff(x, ex) < 1e-14);
  CHECK(max_diff(z, ez) < 1e-14);
  CHECK(max_abs_coefficient(pu.y) == 0.0);
}

TEST_CASE("projector laws") {
  const auto& g = kGrid;
  for (double e : {1.0, 0.1, 0.01}) {
    const AnisotropyScale eps(e);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto u = random_vec(g, 300 + seed);
      const auto pu = leray_aniso(u, eps);
      const auto ppu = leray_aniso(pu, eps);
      CHECK(diff3(ppu, pu) <= 1e-12 * std::max(1.0, max_abs_coefficient(pu.x)));
      CHECK(max_abs_coefficient(div_eps(pu, eps)) <= 1e-12 * max_abs_coefficient(u.x) / e);
      CHECK(norm3(pu) <= norm3(u) * (1 + 1e-14));
      const auto v = random_vec(g, 900 + seed);
      const double a = inner3(pu, v), b = inner3(u, leray_aniso(v, eps));
      CHECK(std::abs(a - b) <= 1e-12 * norm3(u) * norm3(v));
    }
  }
}

TEST_CASE("divergence-free fields are fixed points") {
  const auto s = random_state(kGrid, 2);
  for (double e : {1.0, 0.2}) {
    const auto sc = as_scaled(s, e);
    const AnisotropyScale eps(e);
    Vec3 u{sc.v1, sc.v2, sc.w};
    CHECK(diff3(leray_aniso(u, eps), u) < 1e-12 * max_abs_coefficient(s.v1));
  }
}

TEST_CASE("diagnosed vertical velocity") {
  const auto& g = kGrid;
  SUBCASE("shear gives w = 0") {
    const auto w = diagnose_w(sin_y_cos_z(g), SpectralScalar(g, Parity::EvenZ));
    CHECK(max_abs_coefficient(w) == 0.0);
  }
  SUBCASE("overturning cell") {
    const auto w = diagnose_w(sin_x_cos_z(g), SpectralScalar(g, Parity::EvenZ));
    const auto exact = sample(g, [](double x, double, double z) { return -std::cos(pi * x) * std::sin(pi * z); });
    CHECK(max_diff(to_physical(w), exact) < 1e-14);
  }
  SUBCASE("barotropic divergence is rejected") {
    const auto v1 = mode(g, Parity::EvenZ, 1, 0, 0, cplx(0, -0.5));
    CHECK_THROWS_AS(diagnose_w(v1, SpectralScalar(g, Parity::EvenZ)), IncompatibleData);
  }
  SUBCASE("random data is exactly divergence free") {
    const auto s = random_state(g, 4);
    const auto w = diagnose_w(s.v1, s.v2);
    const auto r = div_h(s.v1, s.v2) + d_z(w);
    CHECK(max_abs_coefficient(r) < 1e-13 * max_abs_coefficient(s.v1));
    CHECK(divergence_residual(s) < 1e-13);
  }
}

TEST_CASE("nonlinear term") {
  const auto& g = kGrid;
  const auto s = vortexpair(g);
  const auto n = to_physical(nonlinear_term(s, s.v1));
  const auto exact = sample(g, [](double x, double y, double z) {
    const double c = std::cos(pi * z);
    return pi * std::sin(pi * x) * std::cos(pi * y) * c * c;
  });
  CHECK(max_diff(n, exact) < 1e-13);
  CHECK(max_abs_coefficient(nonlinear_term(s, SpectralScalar(g, Parity::EvenZ))) == 0.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = random_state(g, 50 + seed);
    for (const auto& f : {random_field(g, Parity::EvenZ, 60 + seed), random_field(g, Parity::OddZ, 70 + seed)}) {
      const auto band = dealias(f);
      const auto nf = nonlinear_term(r, band);
      CHECK(std::abs(inner(nf, band)) <= 1e-10 * l2_norm(nf) * l2_norm(band));
    }
  }
}

TEST_CASE("hydrostatic pressure: analytic case") {
  const auto& g = kGrid;
  const auto p = primitive_pressure(vortexpair(g));
  CHECK(p.kind == PressureKind::Hydrostatic);
  const auto exact = mode(g, Parity::EvenZ, 1, 1, 0, 0.125);
  auto expect = exact;
  expect.set_real_mode(1, -1, 0, 0.125);
  CHECK(max_diff(p.p, expect) < 1e-12);
  const auto q = primitive_pressure_quadrature(vortexpair(g));
  CHECK(max_diff(q.p, expect) < 1e-12);
  const auto zero = primitive_pressure(VelocityState{SpectralScalar(g, Parity::EvenZ), SpectralScalar(g, Parity::EvenZ),
                                                     SpectralScalar(g, Parity::OddZ), WRole::diagnosed()});
  CHECK(max_abs_coefficient(zero.p) == 0.0);
}

TEST_CASE("hydrostatic pressure identities on random states") {
  const auto& g = kGrid;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_state(g, 500 + seed);
    const auto p = primitive_pressure(s);
    for (int i = 0; i < g.nh; ++i)
      for (int j = 0; j < g.nh; ++j)
        for (int m = 1; m <= g.nz; ++m) CHECK(p.p.coeffs()[g.index(i, j, m)] == cplx(0.0));
    CHECK(mean_coefficient(p.p) == cplx(0.0));

    const auto q = primitive_pressure_quadrature(s);
    CHECK(max_diff(p.p, q.p) <= 1e-10 * std::max(1e-300, max_abs_coefficient(p.p)));

    const auto n = primitive_nonlinearity(s);
    const auto lhs = 2.0 * laplacian_h(p.p);
    const auto dn = div_h(n.x, n.y);
    double worst = 0.0;
    for (int i = 0; i < g.nh; ++i)
      for (int j = 0; j < g.nh; ++j)
        worst = std::max(worst, std::abs(lhs.coeffs()[g.index(i, j, 0)] + 2.0 * dn.coeffs()[g.index(i, j, 0)]));
    CHECK(worst <= 1e-12 * max_abs_coefficient(dn));

    const auto gp = grad_h(p.p);
    const double elim = inner(gp.x, s.v1) + inner(gp.y, s.v2);
    CHECK(std::abs(elim) <= 1e-10 * l2_norm(gp.x) * l2_norm(s.v1) + 1e-300);

    const auto proj = leray_hydrostatic(n);
    CHECK(max_diff(proj.x, n.x + gp.x) <= 1e-14 * max_abs_coefficient(n.x));
    CHECK(max_diff(proj.y, n.y + gp.y) <= 1e-14 * max_abs_coefficient(n.y));
  }
}

TEST_CASE("anisotropic pressure") {
  const auto& g = kGrid;
  SUBCASE("zero velocity") {
    VelocityState z{SpectralScalar(g, Parity::EvenZ), SpectralScalar(g, Parity::EvenZ),
                    SpectralScalar(g, Parity::OddZ), WRole::evolved_scaled(0.5)};
    CHECK(max_abs_coefficient(ans_pressure(z, AnisotropyScale(0.5)).p) == 0.0);
  }
  SUBCASE("isotropic case matches the classical pressure") {
    std::mt19937_64 rng(8);
    const auto s = as_scaled(random_admissible(g, rng), 1.0);
    const auto n = ans_nonlinearity(s);
    const auto dv = div_h(n.x, n.y) + d_z(n.z);
    SpectralScalar expect(g, Parity::EvenZ);
    for (int i = 0; i < g.nh; ++i)
      for (int j = 0; j < g.nh; ++j)
        for (int m = 0; m <= g.nz; ++m) {
          const double kx = g.wavenumber(i), ky = g.wavenumber(j);
          const double lam = pi * pi * (kx * kx + ky * ky + m * m);
          if (lam > 0) expect.coeffs()[g.index(i, j, m)] = dv.coeffs()[g.index(i, j, m)] / lam;
        }
    const auto p = ans_pressure(s, AnisotropyScale(1.0));
    CHECK(p.kind == PressureKind::Full3D);
    CHECK(max_diff(p.p, expect) <= 1e-13 * max_abs_coefficient(expect));
  }
  SUBCASE("Helmholtz consistency") {
    for (double e : {1.0, 0.1, 0.01}) {
      const AnisotropyScale eps(e);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = as_scaled(random_state(g, 700 + seed), e);
        const auto n = ans_nonlinearity(s);
        const auto p = ans_pressure(s, eps);
        const auto gp = grad_eps(p.p, eps);
        const auto pn = leray_aniso(n, eps);
        Vec3 back{pn.x - gp.x, pn.y - gp.y, pn.z - gp.z};
        CHECK(diff3(back, n) <= 1e-10 * std::max(max_abs_coefficient(n.x), max_abs_coefficient(n.z)));
      }
    }
  }
  SUBCASE("role and scale are checked") {
    const auto s = random_state(g, 3);
    CHECK_THROWS(ans_pressure(s, AnisotropyScale(0.5)));
    CHECK_THROWS(ans_pressure(as_scaled(s, 0.25), AnisotropyScale(0.5)));
  }
}

TEST_CASE("Poincare inequality for odd fields") {
  const auto& g = kGrid;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = random_field(g, Parity::OddZ, 1000 + seed);
    const double dz = l2_norm(d_z(f));
    CHECK(l2_norm(f) <= 2.0 * dz);
    CHECK(l2_norm(f) <= dz / pi * (1 + 1e-14));
  }
}

TEST_CASE("velocity state roles") {
  const auto s = random_state(kGrid, 9);
  const auto sc = as_scaled(s, 0.25);
  CHECK(sc.role.is_scaled());
  CHECK(max_diff(sc.w, 0.25 * s.w) == 0.0);
  CHECK(max_diff(sc.vertical_velocity(), s.w) < 1e-15 * std::max(1.0, max_abs_coefficient(s.w)));
  CHECK(max_diff(as_diagnosed(sc).w, s.w) < 1e-15 * std::max(1.0, max_abs_coefficient(s.w)));
  auto bad = s;
  bad.w = random_field(kGrid, Parity::EvenZ, 1);
  CHECK_THROWS_AS(bad.check_structure(), InadmissibleData);
}
