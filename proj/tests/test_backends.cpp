#include <random>

#include "doctest.h"
#include "hydrolim/exec.hpp"
#include "hydrolim/kernels.hpp"
#include "hydrolim/lp_besov.hpp"
#include "hydrolim/solvers.hpp"
#include "support.hpp"

using namespace hydrolim;
using namespace testing;

namespace {

struct Outcome {
  VelocityState state;
  std::vector<DiagnosticsRecord> diagnostics;
};

Outcome simulate(exec::Backend b, int threads, const System& sys) {
  exec::ScopedBackend scope(b);
  const int saved = exec::thread_limit();
  exec::set_thread_limit(threads);
  InitSpec spec;
  spec.seed = 12;
  spec.alpha = 0.5;
  const Grid g(16, 8);
  SolverConfig c;
  c.dt = 2e-3;
  c.t_final = 0.04;
  Probes p;
  p.cadence = 5;
  p.store_states = true;
  auto tr = run(make_initial(spec, g), sys, c, p);
  exec::set_thread_limit(saved);
  return {tr.states.back(), tr.diagnostics};
}

bool same(const std::vector<DiagnosticsRecord>& a, const std::vector<DiagnosticsRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.t != y.t || x.A != y.A || x.B != y.B || x.intB != y.intB || x.l2 != y.l2 ||
        x.div_residual != y.div_residual || x.p_gradH_norm != y.p_gradH_norm || x.p_dz_norm != y.p_dz_norm ||
        x.intP != y.intP)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("kernels agree bitwise") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  const kernels::Shape3 shape{6, 10, 14};
  std::vector<kernels::cplx> data(shape.size());
  for (auto& v : data) v = {nd(rng), nd(rng)};
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {-1, 1}) {
      auto a = data, b = data;
      kernels::serial::fft_lines(a, shape, axis, sign);
      kernels::omp::fft_lines(b, shape, axis, sign);
      CHECK(a == b);
    }
  std::vector<double> x(1000), y(1000), o1(1000), o2(1000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = nd(rng);
    y[i] = nd(rng);
  }
  kernels::serial::multiply(x, y, o1);
  kernels::omp::multiply(x, y, o2);
  CHECK(o1 == o2);
}

TEST_CASE("unnormalized DFT convention") {
  const kernels::Shape3 shape{1, 1, 8};
  std::vector<kernels::cplx> d(8, 0.0);
  d[1] = 1.0;
  kernels::fft_lines(d, shape, 2, -1);
  for (int n = 0; n < 8; ++n)
    CHECK(std::abs(d[static_cast<std::size_t>(n)] - std::polar(1.0, -2 * std::numbers::pi * n / 8)) < 1e-15);
}

TEST_CASE("serial and OpenMP runs are bitwise identical") {
  for (const auto& sys : {System::primitive(), System::ans(0.1)}) {
    const auto ref = simulate(exec::Backend::Serial, 1, sys);
    for (int threads : {1, 2, 3, 4}) {
      const auto par = simulate(exec::Backend::OpenMP, threads, sys);
      CHECK(par.state.v1 == ref.state.v1);
      CHECK(par.state.v2 == ref.state.v2);
      CHECK(par.state.w == ref.state.w);
      CHECK(same(par.diagnostics, ref.diagnostics));
    }
  }
}

TEST_CASE("transforms and norms agree across backends") {
  const Grid g(20, 9);
  const auto f = random_field(g, Parity::OddZ, 5);
  PhysicalField a(g), b(g);
  SpectralScalar fa, fb;
  double na = 0.0, nb = 0.0;
  {
    exec::ScopedBackend s(exec::Backend::Serial);
    a = to_physical(f);
    fa = to_spectral(a, Parity::OddZ);
    na = besov_norm(f, 1.5).value;
  }
  {
    exec::ScopedBackend s(exec::Backend::OpenMP);
    b = to_physical(f);
    fb = to_spectral(b, Parity::OddZ);
    nb = besov_norm(f, 1.5).value;
  }
  CHECK(a.values == b.values);
  CHECK(fa == fb);
  CHECK(na == nb);
}

TEST_CASE("scoped backend restores the previous choice") {
  const auto before = exec::backend();
  {
    exec::ScopedBackend s(before == exec::Backend::Serial ? exec::Backend::OpenMP : exec::Backend::Serial);
    CHECK(exec::backend() != before);
  }
  CHECK(exec::backend() == before);
}
