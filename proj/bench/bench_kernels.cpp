// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hydrolim/exec.hpp"
#include "hydrolim/initdata.hpp"
#include "hydrolim/kernels.hpp"
#include "hydrolim/operators.hpp"

namespace {

using hydrolim::kernels::cplx;
using hydrolim::kernels::Shape3;

std::vector<cplx> random_block(const Shape3& s) {
  std::mt19937_64 rng(1);
  std::vector<cplx> v(s.size());
  for (auto& x : v) x = {hydrolim::uniform01(rng), hydrolim::uniform01(rng)};
  return v;
}

template <void (*Fft)(std::span<cplx>, Shape3, int, int)>
void BM_fft_lines(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Shape3 shape{n, n, 2 * (n / 2 + 1)};
  auto data = random_block(shape);
  for (auto _ : state) {
    for (int axis = 0; axis < 3; ++axis) Fft(data, shape, axis, -1);
    benchmark::DoNotOptimize(data.data());
  }
}
BENCHMARK(BM_fft_lines<hydrolim::kernels::serial::fft_lines>)->Arg(32)->Arg(64);
BENCHMARK(BM_fft_lines<hydrolim::kernels::omp::fft_lines>)->Arg(32)->Arg(64);

template <void (*Mul)(std::span<const double>, std::span<const double>, std::span<double>)>
void BM_multiply(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n, 1.25), b(n, 0.5), out(n);
  for (auto _ : state) {
    Mul(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_multiply<hydrolim::kernels::serial::multiply>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_multiply<hydrolim::kernels::omp::multiply>)->Arg(1 << 16)->Arg(1 << 20);

void BM_advection(benchmark::State& state) {
  const auto backend = state.range(0) == 0 ? hydrolim::exec::Backend::Serial
                                           : hydrolim::exec::Backend::OpenMP;
  hydrolim::exec::ScopedBackend scoped(backend);
  const hydrolim::Grid g(32, 16);
  std::mt19937_64 rng(3);
  const auto s = hydrolim::random_admissible(g, rng);
  for (auto _ : state) {
    auto n = hydrolim::ans_nonlinearity(hydrolim::as_scaled(s, 0.1));
    benchmark::DoNotOptimize(n.x.coeffs().data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_advection)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
