#include "hydrolim/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hydrolim/errors.hpp"

namespace hydrolim {

namespace {

using json = nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError((path.empty() ? "config" : path) + ": expected an object");
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError(join(path, it.key()) + ": unknown key");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path + ": must be finite");
  return d;
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError(path + ": out of range");
  return static_cast<int>(x);
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

Grid parse_grid(const json& j) {
  require_object(j, "grid");
  reject_unknown(j, "grid", {"nh", "nz"});
  const json* nh = find(j, "nh");
  const json* nz = find(j, "nz");
  if (!nh) throw ConfigError("grid.nh: required");
  if (!nz) throw ConfigError("grid.nz: required");
  try {
    return Grid(get_int(*nh, "grid.nh"), get_int(*nz, "grid.nz"));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

void parse_solver(const json& j, RunConfig& cfg) {
  require_object(j, "solver");
  reject_unknown(j, "solver",
                 {"dt", "t_final", "integrator", "dealias", "galerkin_n", "nonlinear"});
  SolverConfig& s = cfg.solver;
  cfg.dt_auto = true;
  if (const json* v = find(j, "dt")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "auto") throw ConfigError("solver.dt: expected a number or \"auto\"");
    } else {
      s.dt = get_number(*v, "solver.dt");
      cfg.dt_auto = false;
    }
  }
  if (const json* v = find(j, "t_final")) s.t_final = get_number(*v, "solver.t_final");
  if (const json* v = find(j, "integrator")) {
    const std::string name = get_string(*v, "solver.integrator");
    if (name == "exp_rk2") {
      s.integrator = Integrator::ExpRK2;
    } else if (name == "exp_euler") {
      s.integrator = Integrator::ExpEuler;
    } else {
      throw ConfigError("solver.integrator: expected \"exp_euler\" or \"exp_rk2\"");
    }
  }
  if (const json* v = find(j, "dealias")) s.dealias = get_bool(*v, "solver.dealias");
  if (const json* v = find(j, "galerkin_n"); v && !v->is_null()) {
    s.galerkin_n = get_int(*v, "solver.galerkin_n");
  }
  if (const json* v = find(j, "nonlinear")) s.nonlinear = get_bool(*v, "solver.nonlinear");
}

InitSpec parse_init(const json& j) {
  require_object(j, "init");
  reject_unknown(j, "init", {"kind", "name", "seed", "alpha", "spectral_decay"});
  InitSpec spec;
  if (const json* v = find(j, "kind")) {
    const std::string kind = get_string(*v, "init.kind");
    if (kind == "random_smooth") {
      spec.kind = InitSpec::Kind::RandomSmooth;
    } else if (kind == "deterministic") {
      spec.kind = InitSpec::Kind::Deterministic;
    } else {
      throw ConfigError("init.kind: expected \"random_smooth\" or \"deterministic\"");
    }
  }
  if (const json* v = find(j, "name")) spec.name = get_string(*v, "init.name");
  if (spec.kind == InitSpec::Kind::Deterministic && spec.name.empty()) {
    throw ConfigError("init.name: required for deterministic data");
  }
  if (const json* v = find(j, "seed")) {
    if (!v->is_number_unsigned()) throw ConfigError("init.seed: expected a nonnegative integer");
    spec.seed = v->get<std::uint64_t>();
  }
  if (const json* v = find(j, "alpha")) spec.alpha = get_number(*v, "init.alpha");
  if (const json* v = find(j, "spectral_decay")) {
    spec.spectral_decay = get_number(*v, "init.spectral_decay");
  }
  spec.validate();
  return spec;
}

System parse_system(const json& j) {
  require_object(j, "system");
  reject_unknown(j, "system", {"type", "epsilon"});
  const json* type = find(j, "type");
  if (!type) throw ConfigError("system.type: required");
  const std::string name = get_string(*type, "system.type");
  const json* eps = find(j, "epsilon");
  if (name == "primitive") {
    if (eps && !eps->is_null()) throw ConfigError("system.epsilon: only allowed for ans");
    return System::primitive();
  }
  if (name != "ans") throw ConfigError("system.type: expected \"primitive\" or \"ans\"");
  if (!eps || eps->is_null()) throw ConfigError("system.epsilon: required when system.type is ans");
  const double e = get_number(*eps, "system.epsilon");
  if (!(e > 0.0) || !(e <= 1.0)) throw ConfigError("system.epsilon: must lie in (0, 1]");
  return System::ans(e);
}

RunConfig parse_run(const json& j, bool system_required) {
  require_object(j, "");
  reject_unknown(j, "", {"grid", "solver", "init", "system", "probes", "output_dir"});
  RunConfig cfg;
  cfg.dt_auto = false;
  if (const json* v = find(j, "grid")) cfg.grid = parse_grid(*v);
  if (const json* v = find(j, "solver")) {
    parse_solver(*v, cfg);
  } else {
    cfg.dt_auto = true;
  }
  if (const json* v = find(j, "init")) cfg.init = parse_init(*v);
  if (const json* v = find(j, "system")) {
    cfg.system = parse_system(*v);
  } else if (system_required) {
    throw ConfigError("system: required");
  }
  if (const json* v = find(j, "probes")) {
    require_object(*v, "probes");
    reject_unknown(*v, "probes", {"cadence", "snapshot_every"});
    if (const json* c = find(*v, "cadence")) cfg.cadence = get_int(*c, "probes.cadence");
    if (cfg.cadence < 1) throw ConfigError("probes.cadence: must be positive");
    if (const json* s = find(*v, "snapshot_every"); s && !s->is_null()) {
      cfg.snapshot_every = get_int(*s, "probes.snapshot_every");
      if (*cfg.snapshot_every < 1) throw ConfigError("probes.snapshot_every: must be positive");
    }
  }
  if (const json* v = find(j, "output_dir")) {
    cfg.output_dir = get_string(*v, "output_dir");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir: must not be empty");
  }
  SolverConfig probe = cfg.solver;
  if (cfg.dt_auto && probe.t_final > 0.0) probe.dt = std::min(probe.dt, probe.t_final);
  probe.validate(cfg.grid);
  return cfg;
}

json run_to_json(const RunConfig& cfg) {
  json j;
  j["grid"] = {{"nh", cfg.grid.nh}, {"nz", cfg.grid.nz}};
  json s;
  if (cfg.dt_auto) {
    s["dt"] = "auto";
  } else {
    s["dt"] = cfg.solver.dt;
  }
  s["t_final"] = cfg.solver.t_final;
  s["integrator"] = to_string(cfg.solver.integrator);
  s["dealias"] = cfg.solver.dealias;
  s["galerkin_n"] = cfg.solver.galerkin_n ? json(*cfg.solver.galerkin_n) : json(nullptr);
  s["nonlinear"] = cfg.solver.nonlinear;
  j["solver"] = s;
  json in;
  in["kind"] = cfg.init.kind == InitSpec::Kind::RandomSmooth ? "random_smooth" : "deterministic";
  in["name"] = cfg.init.name;
  in["seed"] = cfg.init.seed;
  in["alpha"] = cfg.init.alpha;
  in["spectral_decay"] = cfg.init.spectral_decay;
  j["init"] = in;
  json sys;
  sys["type"] = cfg.system.name();
  sys["epsilon"] = cfg.system.is_ans() ? json(cfg.system.epsilon) : json(nullptr);
  j["system"] = sys;
  j["probes"] = {{"cadence", cfg.cadence},
                 {"snapshot_every", cfg.snapshot_every ? json(*cfg.snapshot_every) : json(nullptr)}};
  j["output_dir"] = cfg.output_dir.generic_string();
  return j;
}

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) { return parse_run(parse_text(text), true); }

SweepConfig parse_sweep_config(const std::string& text) {
  const json j = parse_text(text);
  require_object(j, "");
  reject_unknown(j, "", {"base", "epsilons", "coupling", "workers", "mode"});
  SweepConfig cfg;
  const json* base = find(j, "base");
  if (!base) throw ConfigError("base: required");
  cfg.base = parse_run(*base, false);
  cfg.base.system = System::primitive();
  const json* eps = find(j, "epsilons");
  if (!eps) throw ConfigError("epsilons: required");
  if (!eps->is_array()) throw ConfigError("epsilons: expected an array");
  cfg.epsilons.clear();
  for (std::size_t i = 0; i < eps->size(); ++i) {
    cfg.epsilons.push_back(get_number((*eps)[i], "epsilons[" + std::to_string(i) + "]"));
  }
  if (cfg.epsilons.empty()) throw ConfigError("epsilons: must not be empty");
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    if (!(cfg.epsilons[i] > 0.0) || !(cfg.epsilons[i] <= 1.0)) {
      throw ConfigError("epsilons: values must lie in (0, 1]");
    }
    if (i > 0 && !(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
      throw ConfigError("epsilons: must be strictly decreasing");
    }
  }
  if (cfg.epsilons.size() < 3) throw ConfigError("epsilons: need at least 3 values for a slope");
  if (const json* v = find(j, "coupling")) {
    const std::string c = get_string(*v, "coupling");
    if (c == "same_data") {
      cfg.coupling = Coupling::SameData;
    } else if (c == "eps_perturbed") {
      cfg.coupling = Coupling::EpsPerturbed;
    } else {
      throw ConfigError("coupling: expected \"same_data\" or \"eps_perturbed\"");
    }
  }
  if (const json* v = find(j, "workers")) cfg.workers = get_int(*v, "workers");
  if (cfg.workers < 1) throw ConfigError("workers: must be positive");
  if (const json* v = find(j, "mode")) {
    const std::string m = get_string(*v, "mode");
    if (m == "ans_vs_primitive") {
      cfg.mode = StudyMode::AnsVsPrimitive;
    } else if (m == "primitive_self") {
      cfg.mode = StudyMode::PrimitiveSelf;
    } else {
      throw ConfigError("mode: expected \"ans_vs_primitive\" or \"primitive_self\"");
    }
  }
  return cfg;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text(path));
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return parse_sweep_config(read_text(path));
}

std::string to_json(const RunConfig& cfg) { return run_to_json(cfg).dump(2); }

std::string to_json(const SweepConfig& cfg) {
  json j;
  json base = run_to_json(cfg.base);
  base.erase("system");
  j["base"] = base;
  j["epsilons"] = cfg.epsilons;
  j["coupling"] = to_string(cfg.coupling);
  j["workers"] = cfg.workers;
  j["mode"] = cfg.mode == StudyMode::AnsVsPrimitive ? "ans_vs_primitive" : "primitive_self";
  return j.dump(2);
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

StudyConfig to_study(const SweepConfig& cfg, double dt) {
  StudyConfig s;
  s.grid = cfg.base.grid;
  s.solver = cfg.base.solver;
  s.solver.dt = dt;
  s.init = cfg.base.init;
  s.cadence = cfg.base.cadence;
  s.epsilons = cfg.epsilons;
  s.coupling = cfg.coupling;
  s.mode = cfg.mode;
  s.workers = cfg.workers;
  return s;
}

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols{"t", "A", "B", "intB", "l2", "div_residual",
                                             "p_gradH_norm", "p_dz_norm", "intP"};
  return cols;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& series) {
  const auto& cols = diagnostics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : series) {
    const double row[] = {r.t, r.A, r.B, r.intB, r.l2, r.div_residual,
                          r.p_gradH_norm, r.p_dz_norm, r.intP};
    for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << fmt17(row[i]);
    out << '\n';
  }
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_diagnostics_csv(out, series);
  if (!out) throw Error("failed writing " + path.string());
}

std::string report_json(const ConvergenceReport& report) {
  json j;
  j["epsilons"] = report.epsilons;
  j["errors"] = report.errors;
  j["sup_part"] = report.sup_part;
  j["int_part"] = report.int_part;
  j["p_dz"] = report.p_dz;
  j["slope"] = nullable(report.slope);
  j["slope_pdz"] = nullable(report.slope_pdz);
  j["config_hash"] = report.config_hash;
  return j.dump(2);
}

std::string summary_json(const System& system, const Trajectory& traj, double wall_seconds) {
  json j;
  j["system"] = system.name();
  j["epsilon"] = system.is_ans() ? json(system.epsilon) : json(nullptr);
  j["steps"] = traj.total_steps;
  j["dt"] = traj.dt;
  j["probes"] = traj.diagnostics.size();
  if (!traj.diagnostics.empty()) {
    const DiagnosticsRecord& first = traj.diagnostics.front();
    const DiagnosticsRecord& last = traj.diagnostics.back();
    double div_max = 0.0;
    for (const auto& r : traj.diagnostics) div_max = std::max(div_max, r.div_residual);
    j["t_final"] = last.t;
    j["A0"] = first.A;
    j["A"] = last.A;
    j["B"] = last.B;
    j["intB"] = last.intB;
    j["intP"] = last.intP;
    j["l2"] = last.l2;
    j["div_residual_max"] = div_max;
  }
  j["wall_time_s"] = wall_seconds;
  return j.dump(2);
}

}  // namespace hydrolim
