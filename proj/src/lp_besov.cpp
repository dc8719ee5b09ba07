#include "hydrolim/lp_besov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hydrolim/errors.hpp"
#include "hydrolim/kernels.hpp"

namespace hydrolim {

namespace {

constexpr double kChiFlat = 1.1;
constexpr double kChiZero = 4.0 / 3.0;
constexpr double kMeanTolerance = 1e-12;

int squared_index(const Grid& g, int ix, int iy, int m) {
  const int kx = g.wavenumber(ix);
  const int ky = g.wavenumber(iy);
  return kx * kx + ky * ky + m * m;
}

int max_squared_index(const Grid& g) {
  const int k = g.nh / 2 - 1;
  return 2 * k * k + g.nz * g.nz;
}

// phi(2^-j pi sqrt(n)) for every n on the lattice and every block j.
struct PhiTable {
  int j_min = 0;
  int blocks = 0;
  std::vector<double> values;  // [n * blocks + (j - j_min)]
  double operator()(int n, int jj) const {
    return values[static_cast<std::size_t>(n) * blocks + jj];
  }
};

PhiTable make_table(const Grid& g, const DyadicPartition& p) {
  const auto [j_min, j_max] = p.block_range(g);
  PhiTable t;
  t.j_min = j_min;
  t.blocks = j_max - j_min + 1;
  const int n_max = max_squared_index(g);
  t.values.assign(static_cast<std::size_t>(n_max + 1) * t.blocks, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double xi = std::numbers::pi * std::sqrt(static_cast<double>(n));
    for (int jj = 0; jj < t.blocks; ++jj) {
      t.values[static_cast<std::size_t>(n) * t.blocks + jj] =
          p.phi(std::ldexp(xi, -(j_min + jj)));
    }
  }
  return t;
}

}  // namespace

double smoothstep_chi(double r) {
  if (r <= kChiFlat) return 1.0;
  if (r >= kChiZero) return 0.0;
  const double t = (r - kChiFlat) / (kChiZero - kChiFlat);
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

const DyadicPartition& DyadicPartition::standard() {
  static const DyadicPartition partition(smoothstep_chi, kChiFlat, 2.0 * kChiZero);
  return partition;
}

DyadicPartition::DyadicPartition(Profile chi, double support_lo, double support_hi)
    : chi_(std::move(chi)), lo_(support_lo), hi_(support_hi) {}

std::pair<int, int> DyadicPartition::block_range(const Grid& g) const {
  // which squared moduli occur on the lattice
  const int n_max = max_squared_index(g);
  std::vector<bool> present(static_cast<std::size_t>(n_max + 1), false);
  const int kmax = g.nh / 2 - 1;
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = 0; ky <= kmax; ++ky) {
      for (int m = 0; m <= g.nz; ++m) present[kx * kx + ky * ky + m * m] = true;
    }
  }
  const double xi_min = std::numbers::pi;
  const double xi_max = std::numbers::pi * std::sqrt(static_cast<double>(n_max));
  const int lo = static_cast<int>(std::floor(std::log2(xi_min / hi_))) - 1;
  const int hi = static_cast<int>(std::ceil(std::log2(xi_max / lo_))) + 1;
  int j_min = hi + 1;
  int j_max = lo - 1;
  for (int j = lo; j <= hi; ++j) {
    for (int n = 1; n <= n_max; ++n) {
      if (!present[n]) continue;
      const double r = std::ldexp(std::numbers::pi * std::sqrt(static_cast<double>(n)), -j);
      if (phi(r) != 0.0) {
        j_min = std::min(j_min, j);
        j_max = std::max(j_max, j);
        break;
      }
    }
  }
  if (j_min > j_max) return {0, -1};
  return {j_min, j_max};
}

double lattice_modulus(const Grid& g, int ix, int iy, int m) {
  return std::numbers::pi * std::sqrt(static_cast<double>(squared_index(g, ix, iy, m)));
}

SpectralScalar dyadic_block(const SpectralScalar& f, int j, const DyadicPartition& p) {
  const Grid& g = f.grid();
  SpectralScalar out = f;
  auto c = out.coeffs();
  kernels::parallel_for(g.nh, [&](int ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      for (int m = 0; m <= g.nz; ++m) {
        const double r = std::ldexp(lattice_modulus(g, ix, iy, m), -j);
        c[g.index(ix, iy, m)] *= p.phi(r);
      }
    }
  });
  return out;
}

BlockNorms block_norms(const SpectralScalar& f, const DyadicPartition& p) {
  const cplx mean = mean_coefficient(f);
  if (std::abs(mean) > kMeanTolerance) {
    throw HomogeneousDomainError(
        "homogeneous Besov norm needs a zero-mean field (mean coefficient " +
        std::to_string(std::abs(mean)) + ")");
  }
  const Grid& g = f.grid();
  const PhiTable table = make_table(g, p);
  BlockNorms out;
  out.j_min = table.j_min;
  out.norms.assign(static_cast<std::size_t>(table.blocks), 0.0);
  if (table.blocks == 0) return out;

  const auto c = f.coeffs();
  const bool even = f.parity() == Parity::EvenZ;
  std::vector<double> partial(static_cast<std::size_t>(g.nh) * table.blocks, 0.0);
  kernels::parallel_for(g.nh, [&](int ix) {
    double* acc = &partial[static_cast<std::size_t>(ix) * table.blocks];
    for (int iy = 0; iy < g.nh; ++iy) {
      if (g.is_nyquist(ix) || g.is_nyquist(iy)) continue;
      for (int m = 0; m <= g.nz; ++m) {
        const int n = squared_index(g, ix, iy, m);
        if (n == 0) continue;
        const double w = (even && m == 0) ? 2.0 : 1.0;
        const double mag2 = std::norm(c[g.index(ix, iy, m)]);
        if (mag2 == 0.0) continue;
        for (int jj = 0; jj < table.blocks; ++jj) {
          const double ph = table(n, jj);
          if (ph != 0.0) acc[jj] += w * ph * ph * mag2;
        }
      }
    }
  });
  for (int jj = 0; jj < table.blocks; ++jj) {
    double s = 0.0;
    for (int ix = 0; ix < g.nh; ++ix) {
      s += partial[static_cast<std::size_t>(ix) * table.blocks + jj];
    }
    out.norms[static_cast<std::size_t>(jj)] = std::sqrt(4.0 * s);
  }
  return out;
}

double besov_from_blocks(const BlockNorms& b, double s) {
  double total = 0.0;
  for (std::size_t i = 0; i < b.norms.size(); ++i) {
    total += std::exp2((b.j_min + static_cast<int>(i)) * s) * b.norms[i];
  }
  return total;
}

BesovNormRecord besov_norm(const SpectralScalar& f, double s, const DyadicPartition& p) {
  const BlockNorms b = block_norms(f, p);
  BesovNormRecord rec;
  rec.s = s;
  for (std::size_t i = 0; i < b.norms.size(); ++i) {
    const int j = b.j_min + static_cast<int>(i);
    const double contribution = std::exp2(j * s) * b.norms[i];
    rec.per_block.emplace_back(j, contribution);
    rec.value += contribution;
  }
  return rec;
}

BesovPair besov_pair(const SpectralScalar& f, const DyadicPartition& p) {
  const BlockNorms b = block_norms(f, p);
  return {besov_from_blocks(b, 0.5) + besov_from_blocks(b, 1.5),
          besov_from_blocks(b, 2.5) + besov_from_blocks(b, 3.5)};
}

BesovPair besov_pair(const SpectralScalar& f, const SpectralScalar& g,
                     const DyadicPartition& p) {
  const BesovPair a = besov_pair(f, p);
  const BesovPair b = besov_pair(g, p);
  return {a.a + b.a, a.b + b.b};
}

}  // namespace hydrolim
