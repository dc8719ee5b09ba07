#pragma once

// PEQS1 field snapshots.
//
// Layout (little-endian, no padding):
//
//   offset  size  content
//   0       5     magic "PEQS1"
//   5       1     parity: 0 = EvenZ, 1 = OddZ
//   6       4     u32 nh
//   10      4     u32 nz
//   14      16*N  N = nh*nh*(nz+1) coefficients, each (real, imag) as f64,
//                 row-major (k_x, k_y, m) with k_x, k_y in FFT order
//                 (0, 1, ..., nh/2-1, -nh/2, ..., -1) and m = 0..nz.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hydrolim/spectral.hpp"

namespace hydrolim::snapshot {

inline constexpr char kMagic[5] = {'P', 'E', 'Q', 'S', '1'};
inline constexpr std::size_t kHeaderBytes = 14;

void write(std::ostream& out, const SpectralScalar& f);
void write(const std::filesystem::path& path, const SpectralScalar& f);

/// Throws SnapshotError on bad magic, unknown parity, invalid grid, a
/// truncated body or trailing bytes.
SpectralScalar read(std::istream& in);
SpectralScalar read(const std::filesystem::path& path);

}  // namespace hydrolim::snapshot
