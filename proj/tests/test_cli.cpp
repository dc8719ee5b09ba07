#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "hydrolim/snapshot.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hydrolim;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("HYDROLIM_TEST_TMP");
  const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "hydrolim_cli_tests";
  const fs::path dir = root / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string run_config(const fs::path& out, const std::string& system, const std::string& extra = "") {
  return R"({"grid": {"nh": 12, "nz": 6}, "solver": {"dt": 0.002, "t_final": 0.05},
             "init": {"kind": "random_smooth", "seed": 5, "alpha": 0.01)" + extra + R"(},
             "system": )" + system + R"(, "probes": {"cadence": 5, "snapshot_every": 10},
             "output_dir": ")" + out.string() + "\"}";
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

template <class Fn>
Result capture(Fn fn) {
  std::ostringstream o, e;
  const int code = fn(o, e);
  return {code, o.str(), e.str()};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("run writes diagnostics, summary and snapshots") {
  const auto dir = scratch("run_ok");
  const auto cfg = write(dir / "run.json", run_config(dir / "out", R"({"type": "ans", "epsilon": 0.1})"));
  const auto r = capture([&](auto& o, auto& e) { return cli::cmd_run(cfg, o, e); });
  CHECK(r.code == 0);
  const auto csv = slurp(dir / "out" / "diagnostics.csv");
  CHECK(csv.rfind("t,A,B,intB,l2,div_residual,p_gradH_norm,p_dz_norm,intP\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 6);
  const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary["steps"] == 25);
  CHECK(fs::exists(dir / "out" / "config.json"));
  const auto snap = dir / "out" / "snapshots" / "step_00000010_v1.peqs";
  REQUIRE(fs::exists(snap));
  CHECK(snapshot::read(snap).parity() == Parity::EvenZ);
  CHECK(snapshot::read(dir / "out" / "snapshots" / "step_00000000_w.peqs").parity() == Parity::OddZ);
}

TEST_CASE("run config errors exit 1 with the field name") {
  const auto dir = scratch("run_bad");
  const auto cfg = write(dir / "run.json", run_config(dir / "out", R"({"type": "ans"})"));
  const auto r = capture([&](auto& o, auto& e) { return cli::cmd_run(cfg, o, e); });
  CHECK(r.code == 1);
  CHECK(r.err.find("system.epsilon") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));
  const auto missing = capture([&](auto& o, auto& e) { return cli::cmd_run(dir / "none.json", o, e); });
  CHECK(missing.code == 1);
}

TEST_CASE("blow-up exits 2 with the step") {
  const auto dir = scratch("run_blowup");
  const auto text = R"({"grid": {"nh": 16, "nz": 8}, "solver": {"dt": 0.01, "t_final": 1.0},
                        "init": {"seed": 1, "alpha": 10000}, "system": {"type": "primitive"},
                        "output_dir": ")" + (dir / "out").string() + "\"}";
  const auto r = capture([&](auto& o, auto& e) { return cli::cmd_run(write(dir / "run.json", text), o, e); });
  CHECK(r.code == 2);
  CHECK(r.err.find("diverged at step") != std::string::npos);
}

TEST_CASE("sweep") {
  const auto dir = scratch("sweep");
  auto sweep_text = [&](const fs::path& out, const std::string& eps) {
    return R"({"base": {"grid": {"nh": 12, "nz": 6}, "solver": {"dt": 0.002, "t_final": 0.04},
                        "init": {"seed": 9, "alpha": 0.02}, "probes": {"cadence": 4},
                        "output_dir": ")" + out.string() + R"("},
               "epsilons": )" + eps + R"(, "workers": 2})";
  };
  SUBCASE("single epsilon is rejected") {
    const auto cfg = write(dir / "one.json", sweep_text(dir / "one", "[0.1]"));
    const auto r = capture([&](auto& o, auto& e) { return cli::cmd_sweep(cfg, o, e); });
    CHECK(r.code == 1);
    CHECK(r.err.find("epsilons") != std::string::npos);
  }
  SUBCASE("outputs and determinism") {
    const auto a = write(dir / "a.json", sweep_text(dir / "a", "[0.2, 0.1, 0.05]"));
    const auto b = write(dir / "b.json", sweep_text(dir / "b", "[0.2, 0.1, 0.05]"));
    const auto ra = capture([&](auto& o, auto& e) { return cli::cmd_sweep(a, o, e); });
    const auto rb = capture([&](auto& o, auto& e) { return cli::cmd_sweep(b, o, e); });
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.out.find("slope") != std::string::npos);
    const auto rep = nlohmann::json::parse(slurp(dir / "a" / "convergence_report.json"));
    CHECK(rep.size() == 8);
    CHECK(rep["slope"].is_number());
    CHECK(rep["epsilons"].size() == 3);
    for (const char* sub : {"primitive", "eps_0.2", "eps_0.1", "eps_0.05"}) {
      const auto ca = slurp(dir / "a" / sub / "diagnostics.csv");
      CHECK_FALSE(ca.empty());
      CHECK(ca == slurp(dir / "b" / sub / "diagnostics.csv"));
    }
  }
}

TEST_CASE("check battery") {
  const auto ok = capture([](auto& o, auto& e) { return cli::cmd_check("", o, e); });
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("tol ") != std::string::npos);
  CHECK(ok.out.find("all checks passed") != std::string::npos);

  const auto bad = capture([](auto& o, auto& e) { return cli::cmd_check("broken-partition", o, e); });
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL  littlewood-paley reconstruction") != std::string::npos);
  CHECK(bad.out.find("FAIL  bernstein band") != std::string::npos);
  CHECK(bad.out.find("PASS  leray idempotence") != std::string::npos);

  const auto unknown = capture([](auto& o, auto& e) { return cli::cmd_check("gremlins", o, e); });
  CHECK(unknown.code == 1);
}

TEST_CASE("besov command") {
  const auto dir = scratch("besov");
  const Grid g(16, 8);
  snapshot::write(dir / "cos.peqs", cos_x(g));
  snapshot::write(dir / "zero.peqs", SpectralScalar(g, Parity::EvenZ));
  snapshot::write(dir / "mean.peqs", mode(g, Parity::EvenZ, 0, 0, 0, 1.0));
  write(dir / "junk.peqs", "PEQS2 not a field");

  const auto c = capture([&](auto& o, auto& e) { return cli::cmd_besov(dir / "cos.peqs", 0.5, o, e); });
  REQUIRE(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["value"].get<double>() == doctest::Approx(2.8284).epsilon(1e-4));
  CHECK(j["s"] == 0.5);
  CHECK(j["blocks"].size() >= 1);

  const auto z = capture([&](auto& o, auto& e) { return cli::cmd_besov(dir / "zero.peqs", 1.5, o, e); });
  CHECK(z.code == 0);
  CHECK(nlohmann::json::parse(z.out)["value"] == 0.0);

  const auto m = capture([&](auto& o, auto& e) { return cli::cmd_besov(dir / "mean.peqs", 0.5, o, e); });
  CHECK(m.code == 1);
  CHECK(m.err.find("mean") != std::string::npos);

  const auto bad = capture([&](auto& o, auto& e) { return cli::cmd_besov(dir / "junk.peqs", 0.5, o, e); });
  CHECK(bad.code == 1);
}
