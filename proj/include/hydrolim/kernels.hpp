#pragma once

// Data-parallel kernels behind the spectral layer. Every kernel has a serial
// reference and an OpenMP version; the dispatching entry points pick one from
// exec::backend(). Work is split into independent slabs and reductions are
// summed in slab order, so both versions are bitwise identical for any thread
// count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hydrolim/exec.hpp"

namespace hydrolim::kernels {

using cplx = std::complex<double>;

/// Row-major 3-D extent (n0 slowest, n2 contiguous).
struct Shape3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n0) * n1 * n2;
  }
};

namespace serial {
void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign);
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
}  // namespace serial

namespace omp {
void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign);
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
}  // namespace omp

/// Unnormalized 1-D DFT of every line along `axis`. sign = -1 computes
/// sum_l f_l e^{-2 pi i n l / N}, sign = +1 the conjugate-kernel sum.
void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign);

/// out[i] = a[i] * b[i].
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);

/// Runs body(i) for every i in [0, n). Iterations must be independent.
template <class Body>
void parallel_for(int n, Body&& body) {
  if (exec::backend() == exec::Backend::Serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) body(i);
}

/// Sum of term(i) over [0, n): partials are computed in parallel and added in
/// index order.
template <class Term>
double ordered_sum(int n, Term&& term) {
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](int i) { partial[static_cast<std::size_t>(i)] = term(i); });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace hydrolim::kernels
