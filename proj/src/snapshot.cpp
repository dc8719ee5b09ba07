#include "hydrolim/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hydrolim/errors.hpp"

namespace hydrolim::snapshot {

namespace {

template <class UInt>
void put_le(std::ostream& out, UInt v) {
  std::array<char, sizeof(UInt)> bytes{};
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <class UInt>
UInt get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(UInt)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw SnapshotError(std::string("truncated snapshot while reading ") + what);
  }
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    v |= static_cast<UInt>(bytes[i]) << (8 * i);
  }
  return v;
}

}  // namespace

void write(std::ostream& out, const SpectralScalar& f) {
  out.write(kMagic, sizeof(kMagic));
  out.put(static_cast<char>(f.parity()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().nh));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().nz));
  for (const cplx& c : f.coeffs()) {
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c.real()));
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c.imag()));
  }
  if (!out) throw SnapshotError("failed writing snapshot");
}

void write(const std::filesystem::path& path, const SpectralScalar& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot open " + path.string() + " for writing");
  write(out, f);
}

SpectralScalar read(std::istream& in) {
  char magic[sizeof(kMagic)] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw SnapshotError("bad magic: not a PEQS1 snapshot");
  }
  const int parity_byte = in.get();
  if (parity_byte != 0 && parity_byte != 1) {
    throw SnapshotError("bad parity byte in snapshot header");
  }
  const auto nh = get_le<std::uint32_t>(in, "nh");
  const auto nz = get_le<std::uint32_t>(in, "nz");
  if (nh > 1u << 14 || nz > 1u << 14) throw SnapshotError("implausible grid size in header");
  Grid grid;
  try {
    grid = Grid(static_cast<int>(nh), static_cast<int>(nz));
  } catch (const ConfigError& e) {
    throw SnapshotError(std::string("invalid grid in snapshot header: ") + e.what());
  }
  std::vector<cplx> coeffs(grid.spectral_size());
  for (auto& c : coeffs) {
    const double re = std::bit_cast<double>(get_le<std::uint64_t>(in, "coefficients"));
    const double im = std::bit_cast<double>(get_le<std::uint64_t>(in, "coefficients"));
    c = cplx{re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw SnapshotError("trailing bytes after snapshot body");
  }
  return SpectralScalar(grid, static_cast<Parity>(parity_byte), std::move(coeffs));
}

SpectralScalar read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path.string());
  return read(in);
}

}  // namespace hydrolim::snapshot
