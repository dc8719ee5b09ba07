#include "hydrolim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hydrolim/errors.hpp"
#include "hydrolim/kernels.hpp"

namespace hydrolim {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// out(k, m) = fn(kx, ky, m, c(k, m)) on every non-Nyquist mode.
template <class Fn>
SpectralScalar map_modes(const SpectralScalar& f, Parity out_parity, Fn&& fn) {
  const Grid& g = f.grid();
  SpectralScalar out(g, out_parity);
  const auto src = f.coeffs();
  auto dst = out.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    if (g.is_nyquist(ix)) return;
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.nh; ++iy) {
      if (g.is_nyquist(iy)) continue;
      const int ky = g.wavenumber(iy);
      for (int m = 0; m <= g.nz; ++m) {
        const std::size_t i = g.index(ix, iy, m);
        dst[i] = fn(kx, ky, m, src[i]);
      }
    }
  });
  return out;
}

void require_parities(const Vec3& u, const char* what) {
  if (u.x.parity() != Parity::EvenZ || u.y.parity() != Parity::EvenZ ||
      u.z.parity() != Parity::OddZ) {
    throw ParityMismatch(std::string(what) + " needs parities (EvenZ, EvenZ, OddZ)");
  }
  require_same_grid(u.x, u.y);
  require_same_grid(u.x, u.z);
}

// Applies per-mode updates to the three components of an (Even, Even, Odd)
// vector at once.
template <class Fn>
Vec3 map_vec3(const Vec3& u, Fn&& fn) {
  const Grid& g = u.x.grid();
  Vec3 out{SpectralScalar(g, Parity::EvenZ), SpectralScalar(g, Parity::EvenZ),
           SpectralScalar(g, Parity::OddZ)};
  const auto a = u.x.coeffs();
  const auto b = u.y.coeffs();
  const auto c = u.z.coeffs();
  auto oa = out.x.coeffs();
  auto ob = out.y.coeffs();
  auto oc = out.z.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    if (g.is_nyquist(ix)) return;
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.nh; ++iy) {
      if (g.is_nyquist(iy)) continue;
      const int ky = g.wavenumber(iy);
      for (int m = 0; m <= g.nz; ++m) {
        const std::size_t i = g.index(ix, iy, m);
        cplx x = a[i], y = b[i], z = c[i];
        fn(kx, ky, m, x, y, z);
        oa[i] = x;
        ob[i] = y;
        oc[i] = z;
      }
    }
  });
  return out;
}

// cosine-basis coefficient of div_eps U
cplx div_eps_mode(int kx, int ky, int m, cplx x, cplx y, cplx z, double eps) {
  return kI * kPi * (static_cast<double>(kx) * x + static_cast<double>(ky) * y) +
         (kPi * m / eps) * z;
}

double aniso_modulus2(int kx, int ky, int m, double eps) {
  const double h = static_cast<double>(kx * kx + ky * ky);
  const double v = static_cast<double>(m) / eps;
  return kPi * kPi * (h + v * v);
}

PhysicalField combine(const PhysicalField& a, const PhysicalField& ga,
                      const PhysicalField& b, const PhysicalField& gb,
                      const PhysicalField& c, const PhysicalField& gc) {
  const Grid& g = a.grid;
  PhysicalField out(g);
  const std::size_t slab = static_cast<std::size_t>(g.nh) * g.mz();
  kernels::parallel_for(g.nh, [&](int ix) {
    const std::size_t lo = static_cast<std::size_t>(ix) * slab;
    for (std::size_t i = lo; i < lo + slab; ++i) {
      out.values[i] = a.values[i] * ga.values[i] + b.values[i] * gb.values[i] +
                      c.values[i] * gc.values[i];
    }
  });
  return out;
}

}  // namespace

HorizontalPair grad_h(const SpectralScalar& f) {
  auto dx = map_modes(f, f.parity(), [](int kx, int, int, cplx c) {
    return kI * (kPi * kx) * c;
  });
  auto dy = map_modes(f, f.parity(), [](int, int ky, int, cplx c) {
    return kI * (kPi * ky) * c;
  });
  return {std::move(dx), std::move(dy)};
}

SpectralScalar div_h(const SpectralScalar& a, const SpectralScalar& b) {
  require_same_grid(a, b);
  if (a.parity() != b.parity()) throw ParityMismatch("div_h of mixed-parity pair");
  const HorizontalPair ga = grad_h(a);
  const HorizontalPair gb = grad_h(b);
  return ga.x + gb.y;
}

SpectralScalar d_z(const SpectralScalar& f) {
  if (f.parity() == Parity::EvenZ) {
    return map_modes(f, Parity::OddZ, [](int, int, int m, cplx c) {
      return (-kPi * m) * c;
    });
  }
  return map_modes(f, Parity::EvenZ, [](int, int, int m, cplx c) {
    return (kPi * m) * c;
  });
}

SpectralScalar laplacian(const SpectralScalar& f) {
  return map_modes(f, f.parity(), [](int kx, int ky, int m, cplx c) {
    return -(kPi * kPi) * static_cast<double>(kx * kx + ky * ky + m * m) * c;
  });
}

SpectralScalar laplacian_h(const SpectralScalar& f) {
  return map_modes(f, f.parity(), [](int kx, int ky, int, cplx c) {
    return -(kPi * kPi) * static_cast<double>(kx * kx + ky * ky) * c;
  });
}

SpectralScalar div_eps(const Vec3& u, const AnisotropyScale& eps) {
  require_parities(u, "div_eps");
  const Grid& g = u.x.grid();
  SpectralScalar out(g, Parity::EvenZ);
  const auto a = u.x.coeffs();
  const auto b = u.y.coeffs();
  const auto c = u.z.coeffs();
  auto o = out.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    if (g.is_nyquist(ix)) return;
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.nh; ++iy) {
      if (g.is_nyquist(iy)) continue;
      const int ky = g.wavenumber(iy);
      for (int m = 0; m <= g.nz; ++m) {
        const std::size_t i = g.index(ix, iy, m);
        o[i] = div_eps_mode(kx, ky, m, a[i], b[i], c[i], eps.epsilon);
      }
    }
  });
  return out;
}

Vec3 grad_eps(const SpectralScalar& f, const AnisotropyScale& eps) {
  HorizontalPair h = grad_h(f);
  return {std::move(h.x), std::move(h.y), (1.0 / eps.epsilon) * d_z(f)};
}

SpectralScalar laplacian_eps(const SpectralScalar& f, const AnisotropyScale& eps) {
  const double e = eps.epsilon;
  return map_modes(f, f.parity(), [e](int kx, int ky, int m, cplx c) {
    return -aniso_modulus2(kx, ky, m, e) * c;
  });
}

std::array<cplx, 3> leray_symbol(const std::array<double, 3>& q,
                                 const std::array<cplx, 3>& a) {
  const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  if (q2 == 0.0) return a;
  const cplx qa = q[0] * a[0] + q[1] * a[1] + q[2] * a[2];
  return {a[0] - q[0] * qa / q2, a[1] - q[1] * qa / q2, a[2] - q[2] * qa / q2};
}

Vec3 leray_aniso(const Vec3& u, const AnisotropyScale& eps) {
  require_parities(u, "leray_aniso");
  const double e = eps.epsilon;
  return map_vec3(u, [e](int kx, int ky, int m, cplx& x, cplx& y, cplx& z) {
    const double lambda = aniso_modulus2(kx, ky, m, e);
    if (lambda == 0.0) return;
    const cplx d = div_eps_mode(kx, ky, m, x, y, z, e) / lambda;
    x += kI * (kPi * kx) * d;
    y += kI * (kPi * ky) * d;
    z -= (kPi * m / e) * d;
  });
}

HorizontalPair leray_hydrostatic(const HorizontalPair& n) {
  if (n.x.parity() != Parity::EvenZ || n.y.parity() != Parity::EvenZ) {
    throw ParityMismatch("leray_hydrostatic needs EvenZ components");
  }
  require_same_grid(n.x, n.y);
  const Grid& g = n.x.grid();
  HorizontalPair out = n;
  auto a = out.x.coeffs();
  auto b = out.y.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.nh; ++iy) {
      const int ky = g.wavenumber(iy);
      const int k2 = kx * kx + ky * ky;
      if (k2 == 0) continue;
      const std::size_t i = g.index(ix, iy, 0);
      const cplx kn = (static_cast<double>(kx) * a[i] + static_cast<double>(ky) * b[i]) /
                      static_cast<double>(k2);
      a[i] -= static_cast<double>(kx) * kn;
      b[i] -= static_cast<double>(ky) * kn;
    }
  });
  return out;
}

SpectralScalar diagnose_w(const SpectralScalar& v1, const SpectralScalar& v2, double tol) {
  const SpectralScalar div = div_h(v1, v2);
  if (div.parity() != Parity::EvenZ) throw ParityMismatch("diagnose_w needs EvenZ velocity");
  const Grid& g = div.grid();
  const double scale = std::max(1.0, max_abs_coefficient(div));
  double barotropic = 0.0;
  for (int ix = 0; ix < g.nh; ++ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      barotropic = std::max(barotropic, std::abs(div.coeffs()[g.index(ix, iy, 0)]));
    }
  }
  if (barotropic > tol * scale) {
    throw IncompatibleData(
        "z-mean of div_H v does not vanish (largest coefficient " +
        std::to_string(barotropic) + "); no odd vertical velocity exists");
  }
  return map_modes(div, Parity::OddZ, [](int, int, int m, cplx c) {
    return m == 0 ? cplx{} : -c / (kPi * m);
  });
}

Advection::Advection(const SpectralScalar& v1, const SpectralScalar& v2,
                     const SpectralScalar& w, Dealias mode)
    : u1_(to_physical(v1)), u2_(to_physical(v2)), u3_(to_physical(w)), mode_(mode) {
  if (v1.parity() != Parity::EvenZ || v2.parity() != Parity::EvenZ ||
      w.parity() != Parity::OddZ) {
    throw ParityMismatch("advecting velocity needs parities (EvenZ, EvenZ, OddZ)");
  }
  require_same_grid(v1, v2);
  require_same_grid(v1, w);
}

Advection::Advection(const VelocityState& s, Dealias mode)
    : Advection(s.v1, s.v2, s.vertical_velocity(), mode) {}

SpectralScalar Advection::operator()(const SpectralScalar& f) const {
  if (!(f.grid() == u1_.grid)) throw GridMismatch("advected field on a different grid");
  const HorizontalPair gh = grad_h(f);
  const PhysicalField gx = to_physical(gh.x);
  const PhysicalField gy = to_physical(gh.y);
  const PhysicalField gz = to_physical(d_z(f));
  const PhysicalField prod = combine(u1_, gx, u2_, gy, u3_, gz);
  SpectralScalar out = to_spectral(prod, f.parity());
  return mode_ == Dealias::TwoThirds ? dealias(std::move(out)) : out;
}

SpectralScalar nonlinear_term(const VelocityState& s, const SpectralScalar& f) {
  return Advection(s)(f);
}

Vec3 ans_nonlinearity(const VelocityState& s, Dealias mode) {
  const Advection adv(s, mode);
  return {adv(s.v1), adv(s.v2), adv(s.w)};
}

HorizontalPair primitive_nonlinearity(const VelocityState& s, Dealias mode) {
  const Advection adv(s, mode);
  return {adv(s.v1), adv(s.v2)};
}

PressureField primitive_pressure(const VelocityState& s) {
  const HorizontalPair n = primitive_nonlinearity(s);
  const Grid& g = s.grid();
  SpectralScalar p(g, Parity::EvenZ);
  const auto a = n.x.coeffs();
  const auto b = n.y.coeffs();
  auto c = p.coeffs();
  for (int ix = 0; ix < g.nh; ++ix) {
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.nh; ++iy) {
      const int ky = g.wavenumber(iy);
      const int k2 = kx * kx + ky * ky;
      if (k2 == 0 || g.is_nyquist(ix) || g.is_nyquist(iy)) continue;
      const std::size_t i = g.index(ix, iy, 0);
      c[i] = kI * (static_cast<double>(kx) * a[i] + static_cast<double>(ky) * b[i]) /
             (kPi * k2);
    }
  }
  return {std::move(p), PressureKind::Hydrostatic};
}

PressureField primitive_pressure_quadrature(const VelocityState& s) {
  const HorizontalPair n = primitive_nonlinearity(s);
  const Grid& g = s.grid();
  const PhysicalField div = to_physical(div_h(n.x, n.y));
  // int_{-1}^{1} dz by the periodic trapezoid rule, exact for the resolved modes
  PhysicalField column(g);
  const double dz = 2.0 / g.mz();
  kernels::parallel_for(g.nh, [&](int ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      double sum = 0.0;
      for (int l = 0; l < g.mz(); ++l) sum += div(ix, iy, l);
      for (int l = 0; l < g.mz(); ++l) column(ix, iy, l) = sum * dz;
    }
  });
  const SpectralScalar integral = to_spectral(column, Parity::EvenZ);
  SpectralScalar p = map_modes(integral, Parity::EvenZ, [](int kx, int ky, int m, cplx c) {
    const int k2 = kx * kx + ky * ky;
    if (m != 0 || k2 == 0) return cplx{};
    return 0.5 * c / (kPi * kPi * k2);
  });
  return {std::move(p), PressureKind::Hydrostatic};
}

PressureField ans_pressure(const VelocityState& s, const AnisotropyScale& eps) {
  if (!s.role.is_scaled() || s.role.epsilon != eps.epsilon) {
    throw InadmissibleData("ans_pressure needs a state scaled with the same epsilon");
  }
  const Vec3 n = ans_nonlinearity(s);
  const double e = eps.epsilon;
  SpectralScalar p = map_modes(div_eps(n, eps), Parity::EvenZ,
                               [e](int kx, int ky, int m, cplx d) {
                                 const double lambda = aniso_modulus2(kx, ky, m, e);
                                 return lambda == 0.0 ? cplx{} : d / lambda;
                               });
  return {std::move(p), PressureKind::Full3D};
}

double divergence_residual(const VelocityState& s) {
  return l2_norm(div_h(s.v1, s.v2) + d_z(s.vertical_velocity()));
}

}  // namespace hydrolim
