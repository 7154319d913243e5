// SPDX-License-Identifier: Apache-2.0
#include "thermo/config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "json.hpp"
#include "thermo/error.hpp"

namespace thermo {

using nlohmann::json;

void RunConfig::validate() const {
  domain.validate();
  params.validate();
  stepper.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::Config, "run.t_end must be positive");
  }
  if (stability) {
    if (stability->deltas.empty()) throw Error(ErrorKind::Config, "run.stability.deltas is empty");
    for (double d : stability->deltas) {
      if (!(d > 0.0)) throw Error(ErrorKind::Config, "run.stability.deltas must be > 0");
    }
  }
  make_initial(SpectralBasis::create(domain), initial);
}

namespace {

// --- presets ----------------------------------------------------------------

InitialSpec small_data_initial() {
  InitialSpec s;
  s.u_modes = {{VectorKind::Gradient, 1, 0, 0.05},
               {VectorKind::Rotational, 1, 1, 0.05},
               {VectorKind::Gradient, 1, 1, 0.025}};
  s.v_modes = {{VectorKind::Gradient, 0, 1, 0.05}, {VectorKind::Rotational, 2, 1, 0.025}};
  s.theta_base = 1.0;
  s.theta_modes = {{1, 1, 0.05}, {2, 0, 0.025}};
  return s;
}

RunConfig base_config(std::string name, double t_end, int sample_every) {
  RunConfig c;
  c.preset = std::move(name);
  c.t_end = t_end;
  c.stepper.sample_every = sample_every;
  return c;
}

struct PresetEntry {
  const char* name;
  const char* description;
  RunConfig (*make)();
};

const std::vector<PresetEntry>& preset_table() {
  static const std::vector<PresetEntry> table = {
      {"equilibrium", "u = v = 0, theta = 1: the stationary state, t_end = 10",
       [] { return base_config("equilibrium", 10.0, 100); }},
      {"decoupled_wave", "nu = 0 with divergence-free displacement only, t_end = 10",
       [] {
         RunConfig c = base_config("decoupled_wave", 10.0, 10);
         c.params.nu = 0.0;
         c.initial.u_modes = {{VectorKind::Rotational, 1, 1, 0.1}, {VectorKind::Rotational, 2, 3, 0.02}};
         c.initial.v_modes = {{VectorKind::Rotational, 2, 1, 0.05}};
         return c;
       }},
      {"pure_heat", "nu = 0, u = v = 0, theta = 1 + 0.5 cos x: heat equation alone, t_end = 10",
       [] {
         RunConfig c = base_config("pure_heat", 10.0, 10);
         c.params.nu = 0.0;
         c.initial.theta_modes = {{1, 0, 0.5}};
         return c;
       }},
      {"small_data", "coupled small data in the regime where F is nonincreasing, t_end = 50",
       [] {
         RunConfig c = base_config("small_data", 50.0, 10);
         c.initial = small_data_initial();
         return c;
       }},
      {"gamma_oscillation",
       "coupled run with two divergence-free modes over more than 10 periods, t_end = 50",
       [] {
         RunConfig c = base_config("gamma_oscillation", 50.0, 100);
         c.initial.u_modes = {{VectorKind::Rotational, 1, 1, 0.1}, {VectorKind::Gradient, 1, 0, 0.05}};
         c.initial.v_modes = {{VectorKind::Rotational, 2, 1, 0.05}};
         c.initial.theta_modes = {{1, 1, 0.05}};
         return c;
       }},
      {"stability_pair",
       "small_data base against perturbations delta in {1e-2, 1e-3, 1e-4}, t_end = 5",
       [] {
         RunConfig c = base_config("stability_pair", 5.0, 10);
         c.initial = small_data_initial();
         StabilitySpec st;
         st.deltas = {1e-2, 1e-3, 1e-4};
         st.direction.theta_base = 0.0;
         st.direction.u_modes = {{VectorKind::Gradient, 1, 0, 1.0}, {VectorKind::Rotational, 1, 1, 1.0}};
         st.direction.v_modes = {{VectorKind::Gradient, 1, 1, 1.0}};
         st.direction.theta_modes = {{1, 0, 1.0}};
         c.stability = st;
         return c;
       }},
      {"theta_limit", "small_data over a long horizon for the constant temperature limit, t_end = 200",
       [] {
         RunConfig c = base_config("theta_limit", 200.0, 100);
         c.initial = small_data_initial();
         return c;
       }},
  };
  return table;
}

// --- JSON parsing -------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Config, path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

VectorKind parse_kind(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected \"gradient\" or \"rotational\"");
  const std::string s = v.get<std::string>();
  if (s == "gradient") return VectorKind::Gradient;
  if (s == "rotational") return VectorKind::Rotational;
  fail(path, "expected \"gradient\" or \"rotational\", got \"" + s + "\"");
}

std::vector<VectorModeAmplitude> parse_vector_modes(const json& arr, const std::string& path) {
  if (!arr.is_array()) fail(path, "expected an array");
  std::vector<VectorModeAmplitude> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& m = arr[i];
    reject_unknown(m, p, {"kind", "k", "l", "amplitude"});
    for (const char* key : {"kind", "k", "l", "amplitude"}) {
      if (!m.contains(key)) fail(p + "." + key, "missing");
    }
    out.push_back({parse_kind(m.at("kind"), p + ".kind"), get_int(m, p, "k", 0), get_int(m, p, "l", 0),
                   get_number(m, p, "amplitude", 0.0)});
  }
  return out;
}

std::vector<ScalarModeAmplitude> parse_scalar_modes(const json& arr, const std::string& path) {
  if (!arr.is_array()) fail(path, "expected an array");
  std::vector<ScalarModeAmplitude> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& m = arr[i];
    reject_unknown(m, p, {"k", "l", "amplitude"});
    for (const char* key : {"k", "l", "amplitude"}) {
      if (!m.contains(key)) fail(p + "." + key, "missing");
    }
    out.push_back({get_int(m, p, "k", 0), get_int(m, p, "l", 0), get_number(m, p, "amplitude", 0.0)});
  }
  return out;
}

void apply_domain(DomainSpec& d, const json& obj, const std::string& path) {
  reject_unknown(obj, path, {"lx", "ly", "cutoff", "grid_n"});
  d.lx = get_number(obj, path, "lx", d.lx);
  d.ly = get_number(obj, path, "ly", d.ly);
  d.cutoff = get_int(obj, path, "cutoff", d.cutoff);
  d.grid_n = get_int(obj, path, "grid_n", d.grid_n);
}

void apply_initial(InitialSpec& s, const json& obj, const std::string& path) {
  reject_unknown(obj, path, {"u_modes", "v_modes", "theta_base", "theta_modes"});
  if (obj.contains("u_modes")) s.u_modes = parse_vector_modes(obj.at("u_modes"), path + ".u_modes");
  if (obj.contains("v_modes")) s.v_modes = parse_vector_modes(obj.at("v_modes"), path + ".v_modes");
  s.theta_base = get_number(obj, path, "theta_base", s.theta_base);
  if (obj.contains("theta_modes")) {
    s.theta_modes = parse_scalar_modes(obj.at("theta_modes"), path + ".theta_modes");
  }
}

json vector_modes_json(const std::vector<VectorModeAmplitude>& modes) {
  json arr = json::array();
  for (const auto& m : modes) {
    arr.push_back({{"kind", m.kind == VectorKind::Gradient ? "gradient" : "rotational"},
                   {"k", m.k},
                   {"l", m.l},
                   {"amplitude", m.amplitude}});
  }
  return arr;
}

json initial_json(const InitialSpec& s) {
  json theta = json::array();
  for (const auto& m : s.theta_modes) theta.push_back({{"k", m.k}, {"l", m.l}, {"amplitude", m.amplitude}});
  return {{"u_modes", vector_modes_json(s.u_modes)},
          {"v_modes", vector_modes_json(s.v_modes)},
          {"theta_base", s.theta_base},
          {"theta_modes", theta}};
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& e : preset_table()) out.push_back({e.name, e.description});
  return out;
}

RunConfig preset_config(std::string_view name) {
  for (const auto& e : preset_table()) {
    if (name == e.name) return e.make();
  }
  throw Error(ErrorKind::Config, "unknown preset \"" + std::string(name) + "\"");
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("$: invalid JSON: ") + e.what());
  }
  reject_unknown(root, "$", {"domain", "params", "initial", "stepper", "run"});

  const json run = root.contains("run") ? root.at("run") : json::object();
  reject_unknown(run, "$.run", {"preset", "t_end", "csv_path", "summary_path", "stability"});

  RunConfig c;
  if (run.contains("preset")) c = preset_config(get_string(run, "$.run", "preset", ""));

  if (root.contains("domain")) apply_domain(c.domain, root.at("domain"), "$.domain");
  if (root.contains("params")) {
    const json& p = root.at("params");
    reject_unknown(p, "$.params", {"mu", "lambda", "nu"});
    c.params.mu = get_number(p, "$.params", "mu", c.params.mu);
    c.params.lambda = get_number(p, "$.params", "lambda", c.params.lambda);
    c.params.nu = get_number(p, "$.params", "nu", c.params.nu);
  }
  if (root.contains("initial")) apply_initial(c.initial, root.at("initial"), "$.initial");
  if (root.contains("stepper")) {
    const json& s = root.at("stepper");
    reject_unknown(s, "$.stepper", {"dt", "scheme", "sample_every"});
    c.stepper.dt = get_number(s, "$.stepper", "dt", c.stepper.dt);
    c.stepper.sample_every = get_int(s, "$.stepper", "sample_every", c.stepper.sample_every);
    if (s.contains("scheme")) {
      const std::string scheme = get_string(s, "$.stepper", "scheme", "");
      if (scheme == "strang_exact") c.stepper.scheme = Scheme::StrangExact;
      else if (scheme == "rk4_reference") c.stepper.scheme = Scheme::Rk4Reference;
      else fail("$.stepper.scheme", "expected \"strang_exact\" or \"rk4_reference\"");
    }
  }
  c.t_end = get_number(run, "$.run", "t_end", c.t_end);
  if (!run.contains("t_end") && !c.preset) fail("$.run.t_end", "required when no preset is given");
  c.csv_path = get_string(run, "$.run", "csv_path", c.csv_path);
  c.summary_path = get_string(run, "$.run", "summary_path", c.summary_path);
  if (run.contains("stability")) {
    const json& st = run.at("stability");
    reject_unknown(st, "$.run.stability", {"deltas", "direction"});
    StabilitySpec spec = c.stability.value_or(StabilitySpec{});
    if (st.contains("deltas")) {
      const json& d = st.at("deltas");
      if (!d.is_array()) fail("$.run.stability.deltas", "expected an array");
      spec.deltas.clear();
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_number()) fail("$.run.stability.deltas[" + std::to_string(i) + "]", "expected a number");
        spec.deltas.push_back(d[i].get<double>());
      }
    }
    if (st.contains("direction")) {
      spec.direction = InitialSpec{};
      spec.direction.theta_base = 0.0;
      apply_initial(spec.direction, st.at("direction"), "$.run.stability.direction");
    }
    c.stability = spec;
  }

  try {
    c.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw Error(ErrorKind::Config, e.what());
    throw;
  }
  return c;
}

DomainSpec parse_domain(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("$: invalid JSON: ") + e.what());
  }
  DomainSpec d;
  apply_domain(d, root, "$");
  try {
    d.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  return d;
}

std::string config_to_json(const RunConfig& c) {
  json run = {{"t_end", c.t_end}, {"csv_path", c.csv_path}, {"summary_path", c.summary_path}};
  if (c.stability) {
    run["stability"] = {{"deltas", c.stability->deltas}, {"direction", initial_json(c.stability->direction)}};
  }
  json root = {
      {"domain", {{"lx", c.domain.lx}, {"ly", c.domain.ly}, {"cutoff", c.domain.cutoff}, {"grid_n", c.domain.grid_n}}},
      {"params", {{"mu", c.params.mu}, {"lambda", c.params.lambda}, {"nu", c.params.nu}}},
      {"initial", initial_json(c.initial)},
      {"stepper",
       {{"dt", c.stepper.dt},
        {"scheme", c.stepper.scheme == Scheme::StrangExact ? "strang_exact" : "rk4_reference"},
        {"sample_every", c.stepper.sample_every}}},
      {"run", run}};
  return root.dump(2);
}

}  // namespace thermo
