#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hydrolim/errors.hpp"
#include "hydrolim/initdata.hpp"
#include "hydrolim/lp_besov.hpp"
#include "hydrolim/operators.hpp"
#include "hydrolim/solvers.hpp"
#include "support.hpp"

using namespace hydrolim;
using namespace testing;
using std::numbers::pi;

namespace {

const Grid kGrid(16, 8);

InitSpec deterministic(const std::string& name, double alpha = 0.01) {
  InitSpec s;
  s.kind = InitSpec::Kind::Deterministic;
  s.name = name;
  s.alpha = alpha;
  return s;
}

double a_of(const VelocityState& s) { return besov_pair(s.v1, s.v2).a; }

}  // namespace

TEST_CASE("catalog") {
  CHECK(init_catalog() == std::vector<std::string>{"shear", "vortexpair", "overturning"});
  CHECK_THROWS_AS(deterministic("tornado").validate(), ConfigError);
  InitSpec s;
  s.alpha = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.alpha = 0.01;
  s.spectral_decay = -1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("shear entry") {
  const auto s = make_initial(deterministic("shear"), kGrid);
  CHECK(a_of(s) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(max_abs_coefficient(s.w) == 0.0);
  CHECK(max_abs_coefficient(s.v2) == 0.0);
  // |xi| = pi sqrt(2) straddles blocks 1 and 2; ||sin(pi y) cos(pi z)|| = sqrt 2.
  const auto& part = DyadicPartition::standard();
  double weight = 0.0;
  for (int j = -2; j <= 5; ++j)
    weight += part.phi(std::ldexp(pi * std::sqrt(2.0), -j)) * (std::pow(2.0, 0.5 * j) + std::pow(2.0, 1.5 * j));
  const double c = 0.01 / (std::sqrt(2.0) * weight);
  const auto expect = sample(kGrid, [c](double, double y, double z) { return c * std::sin(pi * y) * std::cos(pi * z); });
  CHECK(max_diff(to_physical(s.v1), expect) < 1e-16);
}

TEST_CASE("vortexpair and overturning entries") {
  const auto vp = make_initial(deterministic("vortexpair", 0.02), kGrid);
  CHECK(a_of(vp) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(max_abs_coefficient(div_h(vp.v1, vp.v2)) < 1e-16);
  CHECK(max_abs_coefficient(vp.w) == 0.0);
  CHECK(max_diff(to_physical(vp.v1), to_physical(vp.v2)) > 1e-4);

  const auto ov = make_initial(deterministic("overturning"), kGrid);
  const double c = ov.v1.at(1, 0, 1).imag() * -2.0;
  const auto w = sample(kGrid, [c](double x, double, double z) { return -c * std::cos(pi * x) * std::sin(pi * z); });
  CHECK(max_diff(to_physical(ov.w), w) < 1e-15);
  CHECK_NOTHROW(check_admissible(ov));
}

TEST_CASE("random data with seed 42") {
  InitSpec spec;
  spec.seed = 42;
  const auto s = make_initial(spec, kGrid);
  CHECK_NOTHROW(check_admissible(s));
  CHECK(std::abs(a_of(s) - 0.01) <= 1e-12 * 0.01);
  CHECK(mean_coefficient(s.v1) == cplx(0.0));
  CHECK(mean_coefficient(s.v2) == cplx(0.0));
  CHECK(within_dealias_band(s.v1));
  CHECK(max_abs_coefficient(s.w) > 0.0);
  const auto again = make_initial(spec, kGrid);
  CHECK(again.v1 == s.v1);
  CHECK(again.v2 == s.v2);
  CHECK(again.w == s.w);
  spec.seed = 43;
  CHECK_FALSE(make_initial(spec, kGrid).v1 == s.v1);
}

TEST_CASE("every produced state is admissible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    InitSpec spec;
    spec.seed = seed;
    spec.alpha = 0.001 * (1 + seed);
    spec.spectral_decay = 0.3 + 0.1 * static_cast<double>(seed % 5);
    const auto s = make_initial(spec, Grid(8 + 2 * static_cast<int>(seed % 4), 4 + static_cast<int>(seed % 3)));
    CHECK_NOTHROW(check_admissible(s));
    CHECK(std::abs(a_of(s) - spec.alpha) <= 1e-12 * spec.alpha);
  }
}

TEST_CASE("random fields") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  const auto odd = random_smooth_scalar(kGrid, Parity::OddZ, rng);
  CHECK_NOTHROW(validate(odd));
  CHECK(within_dealias_band(odd));
  const auto even = random_smooth_scalar(kGrid, Parity::EvenZ, rng);
  CHECK(mean_coefficient(even) == cplx(0.0));
  CHECK(imaginary_residue(even) < 1e-14);
}

TEST_CASE("perturbations") {
  InitSpec spec;
  const auto base = make_initial(spec, kGrid);
  const auto same = perturb_initial(base, 0.0, 9);
  CHECK(same.v1 == base.v1);
  CHECK(same.v2 == base.v2);
  CHECK(same.w == base.w);
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const auto p = perturb_initial(base, eps, 9);
    CHECK_NOTHROW(check_admissible(p));
    CHECK(besov_pair(p.v1 - base.v1, p.v2 - base.v2).a == doctest::Approx(eps).epsilon(1e-12));
  }
}
