#pragma once

#include <cstddef>

namespace hydrolim {

/// Resolution of the periodic box (-1,1)^3.
///
/// Horizontal: nh modes per direction, wavenumbers pi*k with k in
/// {-nh/2, ..., nh/2-1} stored in FFT order (0, 1, ..., nh/2-1, -nh/2, ..., -1).
/// The Nyquist index k = -nh/2 is never populated.
///
/// Vertical: cosine (even) or sine (odd) modes cos(pi m z), sin(pi m z) for
/// m in {0, ..., nz}. The physical z-grid has mz() = 2(nz+1) uniform samples,
/// which resolves every one of these modes exactly.
///
/// Physical nodes are x_i = 2i/nh and z_l = 2l/mz(), i.e. the box is sampled
/// on its periodic copy [0,2)^3. z = 0 is a node, so even/odd symmetry maps
/// node l to node mz()-l.
struct Grid {
  int nh = 0;
  int nz = 0;

  Grid() = default;
  /// Throws ConfigError unless nh is even, nh >= 8 and nz >= 4.
  Grid(int nh, int nz);

  int mz() const noexcept { return 2 * (nz + 1); }
  int modes_z() const noexcept { return nz + 1; }

  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(nh) * nh * modes_z();
  }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(nh) * nh * mz();
  }

  /// Signed wavenumber of FFT-ordered index i.
  int wavenumber(int i) const noexcept { return i < nh / 2 ? i : i - nh; }
  /// FFT-ordered index of signed wavenumber k (|k| < nh/2, or k = -nh/2).
  int slot(int k) const noexcept { return k >= 0 ? k : k + nh; }
  bool is_nyquist(int i) const noexcept { return i == nh / 2; }

  std::size_t index(int ix, int iy, int m) const noexcept {
    return (static_cast<std::size_t>(ix) * nh + iy) * modes_z() + m;
  }
  std::size_t physical_index(int ix, int iy, int iz) const noexcept {
    return (static_cast<std::size_t>(ix) * nh + iy) * mz() + iz;
  }

  double x_node(int i) const noexcept { return 2.0 * i / nh; }
  double z_node(int l) const noexcept { return 2.0 * l / mz(); }

  /// Largest |k| kept by the 2/3 rule horizontally (3|k| < nh).
  int dealias_kmax() const noexcept { return (nh - 1) / 3; }
  /// Largest m kept by the 2/3 rule vertically (3m < mz).
  int dealias_mmax() const noexcept { return (mz() - 1) / 3; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace hydrolim
