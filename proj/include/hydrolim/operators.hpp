#pragma once

// Spectral differential operators, the anisotropic Leray projector, pressure
// recovery and vertical-velocity diagnosis.
//
// Momentum convention for both systems:
//
//     d_t U + N + grad_eps p - Lap U = 0,   div_eps U = 0,
//
// with N the advection term. Hence Lap_eps p = -div_eps N, and
// P_eps N = N + grad_eps p, where P_eps = I - grad_eps Lap_eps^{-1} div_eps
// has the per-mode multiplier I - q q^T/|q|^2, q = (pi k_x, pi k_y, pi m/eps)
// in the complex-exponential basis.

#include <array>

#include "hydrolim/spectral.hpp"
#include "hydrolim/velocity.hpp"

namespace hydrolim {

struct HorizontalPair {
  SpectralScalar x;
  SpectralScalar y;
};

struct Vec3 {
  SpectralScalar x;  // EvenZ
  SpectralScalar y;  // EvenZ
  SpectralScalar z;  // OddZ
};

HorizontalPair grad_h(const SpectralScalar& f);
SpectralScalar div_h(const SpectralScalar& a, const SpectralScalar& b);
/// d_z cos(pi m z) = -pi m sin(pi m z), d_z sin(pi m z) = pi m cos(pi m z).
SpectralScalar d_z(const SpectralScalar& f);
SpectralScalar laplacian(const SpectralScalar& f);
SpectralScalar laplacian_h(const SpectralScalar& f);

SpectralScalar div_eps(const Vec3& u, const AnisotropyScale& eps);
Vec3 grad_eps(const SpectralScalar& f, const AnisotropyScale& eps);
/// Multiplier -(pi^2 |k|^2 + eps^-2 pi^2 m^2).
SpectralScalar laplacian_eps(const SpectralScalar& f, const AnisotropyScale& eps);

/// The projector matrix I - q q^T/|q|^2 applied to one complex-exponential
/// amplitude vector a; q = 0 returns a.
std::array<cplx, 3> leray_symbol(const std::array<double, 3>& q,
                                 const std::array<cplx, 3>& a);

/// Anisotropic Leray projector; the zero mode passes through unchanged.
Vec3 leray_aniso(const Vec3& u, const AnisotropyScale& eps);

/// Hydrostatic projection: 2-D Leray projection of the z-mean (m = 0) part,
/// z-varying parts untouched. Equals N + grad_H p for the hydrostatic p.
HorizontalPair leray_hydrostatic(const HorizontalPair& n);

/// w = -int_{-1}^z div_H v dz'. Throws IncompatibleData when the m = 0
/// coefficient of div_H v exceeds `tol` * max(1, largest coefficient).
SpectralScalar diagnose_w(const SpectralScalar& v1, const SpectralScalar& v2,
                          double tol = 1e-10);

enum class PressureKind { Hydrostatic, Full3D };

struct PressureField {
  SpectralScalar p;  // EvenZ, zero mean
  PressureKind kind = PressureKind::Full3D;
};

/// Evaluates u . grad f for many targets with one velocity; physical copies of
/// u are built once.
class Advection {
 public:
  /// u = (v1, v2, w) with w the actual vertical velocity.
  Advection(const SpectralScalar& v1, const SpectralScalar& v2,
            const SpectralScalar& w, Dealias mode = Dealias::TwoThirds);
  explicit Advection(const VelocityState& s, Dealias mode = Dealias::TwoThirds);

  /// Dealiased pseudo-spectral v . grad_H f + w d_z f; parity of f.
  SpectralScalar operator()(const SpectralScalar& f) const;

 private:
  PhysicalField u1_, u2_, u3_;
  Dealias mode_;
};

SpectralScalar nonlinear_term(const VelocityState& s, const SpectralScalar& f);

/// Hydrostatic pressure of the primitive system: solves
/// 2 Lap_H p = -int_{-1}^{1} div_H(u . grad v) dz' mode by mode, gauge zero.
PressureField primitive_pressure(const VelocityState& s);
/// Same pressure from the explicit formula p = 1/2 int (-Lap)^{-1} div_H N dz',
/// with the z-integral done by quadrature on the collocation grid.
PressureField primitive_pressure_quadrature(const VelocityState& s);

/// Full 3-D pressure of the rescaled anisotropic system, Lap_eps p = -div_eps N
/// with N = (u . grad v1, u . grad v2, u . grad (eps w)). The state must be in
/// the EvolvedScaled role with the same eps.
PressureField ans_pressure(const VelocityState& s, const AnisotropyScale& eps);

/// Advection vector of the rescaled system for a scaled state.
Vec3 ans_nonlinearity(const VelocityState& s, Dealias mode = Dealias::TwoThirds);
/// Advection pair of the primitive system (w taken from the state).
HorizontalPair primitive_nonlinearity(const VelocityState& s,
                                      Dealias mode = Dealias::TwoThirds);

/// ||div_H v + d_z w||_{L^2} using the actual vertical velocity.
double divergence_residual(const VelocityState& s);

}  // namespace hydrolim
