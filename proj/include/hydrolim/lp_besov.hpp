#pragma once

// Homogeneous Littlewood-Paley decomposition on the pi-lattice of (-1,1)^3
// and the Besov norms B^s_{2,1}.
//
// chi is the quintic-smoothstep cutoff
//
//     chi(r) = 1                          r <= 1.1
//            = 1 - S((r - 1.1)/(4/3 - 1.1))   1.1 < r < 4/3,   S(t) = t^3 (10 - 15 t + 6 t^2)
//            = 0                          r >= 4/3
//
// and phi(r) = chi(r/2) - chi(r), so supp phi = [1.1, 8/3] and phi = 1 on
// [4/3, 2.2]. Block j keeps the modes with 2^-j |xi| in the support of phi,
// |xi| = pi sqrt(k_x^2 + k_y^2 + m^2).

#include <functional>
#include <utility>
#include <vector>

#include "hydrolim/spectral.hpp"

namespace hydrolim {

class DyadicPartition {
 public:
  using Profile = std::function<double(double)>;

  /// The quintic-smoothstep partition described above.
  static const DyadicPartition& standard();

  /// Custom cutoff profile. phi must vanish outside [support_lo, support_hi].
  DyadicPartition(Profile chi, double support_lo, double support_hi);

  double chi(double r) const { return chi_(r); }
  double phi(double r) const { return chi_(0.5 * r) - chi_(r); }
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }

  /// Inclusive range of blocks that can be nonzero on `grid`.
  std::pair<int, int> block_range(const Grid& grid) const;

 private:
  Profile chi_;
  double lo_;
  double hi_;
};

/// Quintic smoothstep chi used by DyadicPartition::standard().
double smoothstep_chi(double r);

/// |xi| of the mode stored at FFT indices (ix, iy) and vertical m.
double lattice_modulus(const Grid& g, int ix, int iy, int m);

/// Delta_j f: coefficients multiplied by phi(2^-j |xi|).
SpectralScalar dyadic_block(const SpectralScalar& f, int j,
                            const DyadicPartition& p = DyadicPartition::standard());

/// ||Delta_j f||_{L^2} for every block in the grid's range.
struct BlockNorms {
  int j_min = 0;
  std::vector<double> norms;  // norms[j - j_min]
  int j_max() const noexcept { return j_min + static_cast<int>(norms.size()) - 1; }
};

/// Throws HomogeneousDomainError if |mean coefficient| > 1e-12.
BlockNorms block_norms(const SpectralScalar& f,
                       const DyadicPartition& p = DyadicPartition::standard());

/// sum_j 2^{js} norms_j.
double besov_from_blocks(const BlockNorms& b, double s);

struct BesovNormRecord {
  double s = 0.0;
  double value = 0.0;
  std::vector<std::pair<int, double>> per_block;  // (j, 2^{js} ||Delta_j f||)
};

BesovNormRecord besov_norm(const SpectralScalar& f, double s,
                           const DyadicPartition& p = DyadicPartition::standard());

/// The A- and B-functionals: a = B^{1/2} + B^{3/2}, b = B^{5/2} + B^{7/2}.
struct BesovPair {
  double a = 0.0;
  double b = 0.0;
};

BesovPair besov_pair(const SpectralScalar& f,
                     const DyadicPartition& p = DyadicPartition::standard());
/// Vector version: component norms are added.
BesovPair besov_pair(const SpectralScalar& f, const SpectralScalar& g,
                     const DyadicPartition& p = DyadicPartition::standard());

}  // namespace hydrolim
