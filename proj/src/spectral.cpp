#include "hydrolim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hydrolim/errors.hpp"
#include "hydrolim/kernels.hpp"

namespace hydrolim {

namespace {

constexpr double kParityTolerance = 1e-10;
const cplx kI{0.0, 1.0};

kernels::Shape3 physical_shape(const Grid& g) { return {g.nh, g.nh, g.mz()}; }

// Synthesis without the real-part extraction; used by to_physical.
std::vector<cplx> synthesize(const SpectralScalar& f) {
  const Grid& g = f.grid();
  const int mz = g.mz();
  std::vector<cplx> buf(g.physical_size(), cplx{});
  const auto c = f.coeffs();
  const bool even = f.parity() == Parity::EvenZ;
  kernels::parallel_for(g.nh, [&](int ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      cplx* line = &buf[g.physical_index(ix, iy, 0)];
      const cplx* src = &c[g.index(ix, iy, 0)];
      if (even) {
        line[0] = src[0];
        for (int m = 1; m <= g.nz; ++m) {
          line[m] = 0.5 * src[m];
          line[mz - m] = 0.5 * src[m];
        }
      } else {
        for (int m = 1; m <= g.nz; ++m) {
          line[m] = -0.5 * kI * src[m];
          line[mz - m] = 0.5 * kI * src[m];
        }
      }
    }
  });
  const auto shape = physical_shape(g);
  kernels::fft_lines(buf, shape, 2, +1);
  kernels::fft_lines(buf, shape, 1, +1);
  kernels::fft_lines(buf, shape, 0, +1);
  return buf;
}

// Analysis into the requested parity. Returns the largest opposite-parity
// coefficient through `wrong_parity`.
SpectralScalar analyse(const PhysicalField& samples, Parity parity,
                       double* wrong_parity) {
  const Grid& g = samples.grid;
  const int mz = g.mz();
  std::vector<cplx> buf(samples.values.begin(), samples.values.end());
  const auto shape = physical_shape(g);
  kernels::fft_lines(buf, shape, 0, -1);
  kernels::fft_lines(buf, shape, 1, -1);
  kernels::fft_lines(buf, shape, 2, -1);
  const double scale = 1.0 / (static_cast<double>(g.nh) * g.nh * mz);

  SpectralScalar out(g, parity);
  auto c = out.coeffs();
  const bool even = parity == Parity::EvenZ;
  std::vector<double> wrong(static_cast<std::size_t>(g.nh), 0.0);
  kernels::parallel_for(g.nh, [&](int ix) {
    if (g.is_nyquist(ix)) return;
    double worst = 0.0;
    for (int iy = 0; iy < g.nh; ++iy) {
      if (g.is_nyquist(iy)) continue;
      const cplx* line = &buf[g.physical_index(ix, iy, 0)];
      cplx* dst = &c[g.index(ix, iy, 0)];
      if (even) {
        dst[0] = scale * line[0];
        for (int m = 1; m <= g.nz; ++m) {
          dst[m] = scale * (line[m] + line[mz - m]);
          worst = std::max(worst, scale * std::abs(line[m] - line[mz - m]));
        }
      } else {
        worst = std::max(worst, scale * std::abs(line[0]));
        for (int m = 1; m <= g.nz; ++m) {
          dst[m] = scale * kI * (line[m] - line[mz - m]);
          worst = std::max(worst, scale * std::abs(line[m] + line[mz - m]));
        }
      }
    }
    wrong[static_cast<std::size_t>(ix)] = worst;
  });
  if (wrong_parity != nullptr) {
    *wrong_parity = *std::max_element(wrong.begin(), wrong.end());
  }
  return out;
}

bool in_band(const Grid& g, int ix, int iy, int m) {
  const int kmax = g.dealias_kmax();
  return std::abs(g.wavenumber(ix)) <= kmax && std::abs(g.wavenumber(iy)) <= kmax &&
         m <= g.dealias_mmax();
}

}  // namespace

const char* to_string(Parity p) noexcept {
  return p == Parity::EvenZ ? "EvenZ" : "OddZ";
}

SpectralScalar::SpectralScalar(const Grid& grid, Parity parity)
    : grid_(grid), parity_(parity), coeffs_(grid.spectral_size(), cplx{}) {}

SpectralScalar::SpectralScalar(const Grid& grid, Parity parity,
                               std::vector<cplx> coeffs)
    : grid_(grid), parity_(parity), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.spectral_size()) {
    throw Error("SpectralScalar: coefficient count " +
                std::to_string(coeffs_.size()) + " does not match grid (" +
                std::to_string(grid_.spectral_size()) + ")");
  }
}

const cplx& SpectralScalar::at(int kx, int ky, int m) const {
  const int half = grid_.nh / 2;
  if (kx < -half || kx >= half || ky < -half || ky >= half || m < 0 ||
      m > grid_.nz) {
    throw std::out_of_range("SpectralScalar::at: mode outside the grid");
  }
  return coeffs_[grid_.index(grid_.slot(kx), grid_.slot(ky), m)];
}

cplx& SpectralScalar::at(int kx, int ky, int m) {
  return const_cast<cplx&>(std::as_const(*this).at(kx, ky, m));
}

void SpectralScalar::set_real_mode(int kx, int ky, int m, cplx value) {
  if (kx == 0 && ky == 0) {
    at(0, 0, m) = cplx{value.real(), 0.0};
    return;
  }
  at(kx, ky, m) = value;
  at(-kx, -ky, m) = std::conj(value);
}

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& rhs) {
  require_same_grid(*this, rhs);
  if (parity_ != rhs.parity_) throw ParityMismatch("cannot add fields of different parity");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& rhs) {
  require_same_grid(*this, rhs);
  if (parity_ != rhs.parity_) throw ParityMismatch("cannot subtract fields of different parity");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

void require_same_grid(const SpectralScalar& a, const SpectralScalar& b) {
  if (!(a.grid() == b.grid())) {
    throw GridMismatch("fields live on different grids (" +
                       std::to_string(a.grid().nh) + "x" +
                       std::to_string(a.grid().nz) + " vs " +
                       std::to_string(b.grid().nh) + "x" +
                       std::to_string(b.grid().nz) + ")");
  }
}

PhysicalField to_physical(const SpectralScalar& f) {
  const std::vector<cplx> buf = synthesize(f);
  PhysicalField out(f.grid());
  for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
  return out;
}

double imaginary_residue(const SpectralScalar& f) {
  double worst = 0.0;
  for (const auto& v : synthesize(f)) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

SpectralScalar to_spectral(const PhysicalField& samples, Parity parity) {
  double wrong = 0.0;
  SpectralScalar out = analyse(samples, parity, &wrong);
  const double scale = std::max(max_abs_coefficient(out), wrong);
  if (wrong > kParityTolerance * scale) {
    throw ParityMismatch(std::string("samples are not ") + to_string(parity) +
                         " in z (opposite-parity coefficient " +
                         std::to_string(wrong) + ")");
  }
  return out;
}

SpectralScalar dealias(SpectralScalar f) {
  const Grid& g = f.grid();
  auto c = f.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      for (int m = 0; m <= g.nz; ++m) {
        if (!in_band(g, ix, iy, m)) c[g.index(ix, iy, m)] = cplx{};
      }
    }
  });
  return f;
}

bool within_dealias_band(const SpectralScalar& f) {
  const Grid& g = f.grid();
  for (int ix = 0; ix < g.nh; ++ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      for (int m = 0; m <= g.nz; ++m) {
        if (!in_band(g, ix, iy, m) && f.coeffs()[g.index(ix, iy, m)] != cplx{}) {
          return false;
        }
      }
    }
  }
  return true;
}

SpectralScalar pointwise_product(const SpectralScalar& f, const SpectralScalar& g,
                                 Dealias mode) {
  require_same_grid(f, g);
  const PhysicalField pf = to_physical(f);
  const PhysicalField pg = to_physical(g);
  PhysicalField prod(f.grid());
  kernels::multiply(pf.values, pg.values, prod.values);
  SpectralScalar out = analyse(prod, product_parity(f.parity(), g.parity()), nullptr);
  return mode == Dealias::TwoThirds ? dealias(std::move(out)) : out;
}

SpectralScalar galerkin_truncate(SpectralScalar f, int n) {
  const Grid& g = f.grid();
  auto c = f.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    const bool kx_out = std::abs(g.wavenumber(ix)) > n;
    for (int iy = 0; iy < g.nh; ++iy) {
      const bool k_out = kx_out || std::abs(g.wavenumber(iy)) > n;
      for (int m = 0; m <= g.nz; ++m) {
        if (k_out || m > n) c[g.index(ix, iy, m)] = cplx{};
      }
    }
  });
  return f;
}

double inner(const SpectralScalar& f, const SpectralScalar& g) {
  require_same_grid(f, g);
  if (f.parity() != g.parity()) return 0.0;
  const Grid& grid = f.grid();
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  const bool even = f.parity() == Parity::EvenZ;
  return 4.0 * kernels::ordered_sum(grid.nh, [&](int ix) {
    double s = 0.0;
    for (int iy = 0; iy < grid.nh; ++iy) {
      const std::size_t base = grid.index(ix, iy, 0);
      for (int m = 0; m <= grid.nz; ++m) {
        const double w = (even && m == 0) ? 2.0 : 1.0;
        s += w * (a[base + m] * std::conj(b[base + m])).real();
      }
    }
    return s;
  });
}

double l2_norm(const SpectralScalar& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

cplx mean_coefficient(const SpectralScalar& f) {
  return f.parity() == Parity::EvenZ ? f.coeffs()[0] : cplx{};
}

double max_abs_coefficient(const SpectralScalar& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

bool all_finite(const SpectralScalar& f) {
  for (const auto& c : f.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

void validate(const SpectralScalar& f, double tol) {
  if (!all_finite(f)) throw Error("field has non-finite coefficients");
  const Grid& g = f.grid();
  const double scale = std::max(1.0, max_abs_coefficient(f));
  const auto c = f.coeffs();
  for (int ix = 0; ix < g.nh; ++ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      for (int m = 0; m <= g.nz; ++m) {
        const cplx v = c[g.index(ix, iy, m)];
        if (g.is_nyquist(ix) || g.is_nyquist(iy)) {
          if (std::abs(v) > tol * scale) throw Error("field has Nyquist content");
          continue;
        }
        if (f.parity() == Parity::OddZ && m == 0 && std::abs(v) > tol * scale) {
          throw Error("OddZ field has an m = 0 coefficient");
        }
        const int jx = g.slot(-g.wavenumber(ix));
        const int jy = g.slot(-g.wavenumber(iy));
        if (std::abs(v - std::conj(c[g.index(jx, jy, m)])) > tol * scale) {
          throw Error("field coefficients are not Hermitian symmetric");
        }
      }
    }
  }
}

}  // namespace hydrolim
