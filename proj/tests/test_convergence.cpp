#include <cmath>
#include <string>

#include "doctest.h"
#include "hydrolim/convergence.hpp"
#include "hydrolim/errors.hpp"

using namespace hydrolim;

namespace {

StudyConfig small_study() {
  StudyConfig c;
  c.grid = Grid(12, 6);
  c.solver.dt = 2e-3;
  c.solver.t_final = 0.1;
  c.init.alpha = 0.05;
  c.init.seed = 3;
  c.cadence = 5;
  c.epsilons = {0.4, 0.2, 0.1};
  return c;
}

}  // namespace

TEST_CASE("log-log slope") {
  const std::vector<double> x{0.2, 0.1, 0.05, 0.025};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v);
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-13));
  y = {1.0, 2.0, 0.0, 4.0};
  CHECK(std::isnan(fit_loglog_slope(x, y)));
  CHECK(std::isnan(fit_loglog_slope(x, {1.0, -1.0, 1.0, 1.0})));
}

TEST_CASE("trapezoid rule") {
  CHECK(trapezoid({0.0, 0.5, 2.0}, {1.0, 2.0, 5.0}) == doctest::Approx(0.75 + 5.25));
  CHECK(trapezoid({0.0}, {3.0}) == 0.0);
}

TEST_CASE("study config validation") {
  auto c = small_study();
  CHECK_NOTHROW(c.validate());
  c.epsilons = {0.2, 0.1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.epsilons = {0.1, 0.2, 0.05};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.epsilons = {1.5, 0.2, 0.05};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_study();
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(std::string(to_string(Coupling::SameData)) == "same_data");
  CHECK(std::string(to_string(Coupling::EpsPerturbed)) == "eps_perturbed");
}

TEST_CASE("self comparison gives zero error") {
  auto c = small_study();
  c.mode = StudyMode::PrimitiveSelf;
  const auto rep = convergence_study(c);
  REQUIRE(rep.errors.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rep.errors[i] == 0.0);
    CHECK(rep.sup_part[i] == 0.0);
    CHECK(rep.int_part[i] == 0.0);
  }
  CHECK(std::isnan(rep.slope));
}

TEST_CASE("anisotropic runs approach the primitive run") {
  auto c = small_study();
  const auto rep = convergence_study(c);
  REQUIRE(rep.errors.size() == 3);
  CHECK(rep.epsilons == c.epsilons);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rep.errors[i] > 0.0);
    CHECK(rep.errors[i] == doctest::Approx(rep.sup_part[i] + rep.int_part[i]).epsilon(1e-14));
    CHECK(rep.p_dz[i] > 0.0);
    CHECK(std::isfinite(rep.w_ratio[i]));
    if (i > 0) {
      CHECK(rep.errors[i] < rep.errors[i - 1]);
      CHECK(rep.p_dz[i] < rep.p_dz[i - 1]);
    }
    CHECK(rep.runs[i].epsilon == c.epsilons[i]);
    CHECK(rep.runs[i].system.is_ans());
  }
  CHECK(std::isfinite(rep.slope));
  CHECK(rep.slope > 0.5);
  CHECK(rep.slope_pdz > 0.8);
  CHECK_FALSE(rep.reference.system.is_ans());
  CHECK(rep.reference.trajectory.times == rep.runs[0].trajectory.times);

  auto parallel = c;
  parallel.workers = 3;
  const auto rep2 = convergence_study(parallel);
  CHECK(rep2.errors == rep.errors);
  CHECK(rep2.p_dz == rep.p_dz);
}

TEST_CASE("perturbed coupling separates the initial data") {
  auto c = small_study();
  c.coupling = Coupling::EpsPerturbed;
  const auto rep = convergence_study(c);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(rep.sup_part[i] >= c.init.alpha * c.epsilons[i] * (1 - 1e-9));
  CHECK(rep.slope == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("a diverged run names epsilon") {
  auto c = small_study();
  c.init.alpha = 1e4;
  c.solver.dt = 1e-2;
  c.solver.t_final = 1.0;
  try {
    convergence_study(c);
    FAIL("expected divergence");
  } catch (const DivergedRun& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}
