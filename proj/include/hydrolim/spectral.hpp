#pragma once

// Parity-aware spectral representation of real scalar fields on (-1,1)^3.
//
// A SpectralScalar with parity p holds coefficients c(k_x, k_y, m) of
//
//     f(x, y, z) = sum_{k, m} c(k, m) e^{i pi (k_x x + k_y y)} B_m(z),
//
// with B_m(z) = cos(pi m z) for EvenZ and sin(pi m z) for OddZ (m >= 1).
// Storage is row-major (k_x, k_y, m) with k in FFT order, m in [0, nz].
//
// Normalization: with the true measure of Omega = (-1,1)^3 (volume 8),
//
//     ||f||^2_{L^2} = 4 * sum_{k, m} w_m |c(k, m)|^2,   w_0 = 2, w_m = 1 (m >= 1),
//
// since each horizontal exponential has squared norm 4 on (-1,1)^2,
// int cos^2(pi m z) = int sin^2(pi m z) = 1 for m >= 1 and int 1 dz = 2.
// The transforms carry all 1/N factors in to_spectral; to_physical is a plain
// synthesis sum.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hydrolim/grid.hpp"

namespace hydrolim {

using cplx = std::complex<double>;

enum class Parity : std::uint8_t { EvenZ = 0, OddZ = 1 };

constexpr Parity flip(Parity p) noexcept {
  return p == Parity::EvenZ ? Parity::OddZ : Parity::EvenZ;
}
constexpr Parity product_parity(Parity a, Parity b) noexcept {
  return a == b ? Parity::EvenZ : Parity::OddZ;
}
const char* to_string(Parity p) noexcept;

class SpectralScalar {
 public:
  SpectralScalar() = default;
  /// Zero field.
  SpectralScalar(const Grid& grid, Parity parity);
  /// Takes ownership of FFT-ordered coefficients; size must match the grid.
  SpectralScalar(const Grid& grid, Parity parity, std::vector<cplx> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  Parity parity() const noexcept { return parity_; }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  /// Coefficient at signed horizontal wavenumbers (k_x, k_y) and vertical m.
  const cplx& at(int kx, int ky, int m) const;
  cplx& at(int kx, int ky, int m);

  /// Sets c(k, m) and its Hermitian partner c(-k, m) = conj(value) so the
  /// field stays real. For k = 0 only the real part is kept.
  void set_real_mode(int kx, int ky, int m, cplx value);

  SpectralScalar& operator+=(const SpectralScalar& rhs);
  SpectralScalar& operator-=(const SpectralScalar& rhs);
  SpectralScalar& operator*=(double s);

  friend SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) {
    return a += b;
  }
  friend SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) {
    return a -= b;
  }
  friend SpectralScalar operator*(double s, SpectralScalar a) { return a *= s; }
  friend SpectralScalar operator*(SpectralScalar a, double s) { return a *= s; }
  SpectralScalar operator-() const { return -1.0 * (*this); }

  friend bool operator==(const SpectralScalar&, const SpectralScalar&) = default;

 private:
  Grid grid_;
  Parity parity_ = Parity::EvenZ;
  std::vector<cplx> coeffs_;
};

/// Real samples on the collocation grid, indexed grid.physical_index(ix, iy, iz).
struct PhysicalField {
  Grid grid;
  std::vector<double> values;

  explicit PhysicalField(const Grid& g) : grid(g), values(g.physical_size(), 0.0) {}
  double& operator()(int ix, int iy, int iz) {
    return values[grid.physical_index(ix, iy, iz)];
  }
  double operator()(int ix, int iy, int iz) const {
    return values[grid.physical_index(ix, iy, iz)];
  }
};

/// Synthesis on the collocation grid; exact for every representable field.
PhysicalField to_physical(const SpectralScalar& f);

/// Largest |Im| of the synthesis sum on the grid; round-off for Hermitian
/// symmetric coefficients.
double imaginary_residue(const SpectralScalar& f);

/// Analysis of real samples. Rejects samples whose opposite-parity part
/// exceeds 1e-10 of the largest coefficient (ParityMismatch). Content at the
/// horizontal Nyquist index and the vertical index nz+1 is discarded.
SpectralScalar to_spectral(const PhysicalField& samples, Parity parity);

enum class Dealias { TwoThirds, None };

/// Zeroes every mode outside the 2/3-rule band of the grid.
SpectralScalar dealias(SpectralScalar f);
/// True when f has no content outside the 2/3-rule band.
bool within_dealias_band(const SpectralScalar& f);

/// Coefficients of f*g, truncated by the 2/3 rule unless disabled. Output
/// parity is EvenZ for equal parities and OddZ otherwise.
SpectralScalar pointwise_product(const SpectralScalar& f, const SpectralScalar& g,
                                 Dealias mode = Dealias::TwoThirds);

/// Friedrichs cutoff J_n: zeroes every coefficient with |k_x| > n, |k_y| > n
/// or m > n. An orthogonal projector in L^2.
SpectralScalar galerkin_truncate(SpectralScalar f, int n);

/// Integral of f*g over Omega.
double inner(const SpectralScalar& f, const SpectralScalar& g);
double l2_norm(const SpectralScalar& f);
/// Coefficient of the constant mode (zero for OddZ fields).
cplx mean_coefficient(const SpectralScalar& f);
double max_abs_coefficient(const SpectralScalar& f);
bool all_finite(const SpectralScalar& f);

/// Throws Error if f breaks a structural invariant: non-finite values,
/// Hermitian asymmetry beyond `tol`, Nyquist content, or an OddZ m = 0 entry.
void validate(const SpectralScalar& f, double tol = 1e-12);

/// Throws GridMismatch when the grids differ.
void require_same_grid(const SpectralScalar& a, const SpectralScalar& b);

}  // namespace hydrolim
