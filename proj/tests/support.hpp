#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "hydrolim/initdata.hpp"
#include "hydrolim/spectral.hpp"

namespace testing {

using namespace hydrolim;

inline SpectralScalar mode(const Grid& g, Parity p, int kx, int ky, int m, cplx c) {
  SpectralScalar f(g, p);
  f.set_real_mode(kx, ky, m, c);
  return f;
}

/// cos(pi x) with EvenZ parity.
inline SpectralScalar cos_x(const Grid& g) { return mode(g, Parity::EvenZ, 1, 0, 0, 0.5); }

inline double max_diff(const SpectralScalar& a, const SpectralScalar& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return d;
}

inline double max_diff(const PhysicalField& a, const PhysicalField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

inline SpectralScalar random_field(const Grid& g, Parity p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_smooth_scalar(g, p, rng, 0.5);
}

/// Samples fn(x, y, z) on the collocation nodes.
template <class Fn>
PhysicalField sample(const Grid& g, Fn fn) {
  PhysicalField out(g);
  for (int i = 0; i < g.nh; ++i)
    for (int j = 0; j < g.nh; ++j)
      for (int l = 0; l < g.mz(); ++l) out(i, j, l) = fn(g.x_node(i), g.x_node(j), g.z_node(l));
  return out;
}

}  // namespace testing
