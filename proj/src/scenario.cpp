#include "swarm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "swarm/errors.hpp"
#include "swarm/random.hpp"

namespace swarm {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("key '" + path + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key '" + join(path, key) + "'");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + join(path, key) + "'");
  return obj.at(key);
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("key '" + where + "' must be a number");
  return v.get<double>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError("key '" + where + "' must be true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError("key '" + where + "' must be a string");
  return v.get<std::string>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError("key '" + where + "' must be an integer");
  return v.get<std::int64_t>();
}

Vec2 as_vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("key '" + where + "' must be a pair of numbers [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

ojson vec2_json(Vec2 v) { return ojson::array({v.x, v.y}); }

const char* to_string(InitMode m) {
  switch (m) {
    case InitMode::point: return "point";
    case InitMode::uniform: return "uniform";
    case InitMode::explicit_list: return "explicit";
  }
  return "?";
}

const char* to_string(LawKind k) {
  switch (k) {
    case LawKind::signal_coverage: return "signal_coverage";
    case LawKind::electrostatic: return "electrostatic";
    case LawKind::scalar_field: return "scalar_field";
  }
  return "?";
}

Scenario from_json(const json& doc) {
  check_keys(doc, "",
             {"name", "region", "agents", "sensing_range", "delta", "Delta", "noise", "noise_sampling",
              "dynamics", "baseline", "targets", "random_targets", "completion_radius", "targets_disappear",
              "seed", "metrics_grid"});
  Scenario s;
  if (doc.contains("name")) s.name = as_string(doc["name"], "name");

  const json& region = require(doc, "", "region");
  check_keys(region, "region", {"min", "max"});
  s.region = Region(as_vec2(require(region, "region", "min"), "region.min"),
                    as_vec2(require(region, "region", "max"), "region.max"));

  s.sensing_range = as_number(require(doc, "", "sensing_range"), "sensing_range");
  if (!(s.sensing_range > 0.0) || !std::isfinite(s.sensing_range)) {
    throw ConfigError("constraint violated: sensing_range > 0");
  }

  const json& agents = require(doc, "", "agents");
  check_keys(agents, "agents", {"count", "init", "point", "positions"});
  const std::string init = agents.contains("init") ? as_string(agents["init"], "agents.init") : "uniform";
  if (init == "point") {
    s.init = InitMode::point;
    s.init_point = agents.contains("point") ? as_vec2(agents["point"], "agents.point") : s.region.center();
  } else if (init == "uniform") {
    s.init = InitMode::uniform;
  } else if (init == "explicit") {
    s.init = InitMode::explicit_list;
    const json& list = require(agents, "agents", "positions");
    if (!list.is_array()) throw ConfigError("key 'agents.positions' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      s.init_positions.push_back(as_vec2(list[i], "agents.positions[" + std::to_string(i) + "]"));
    }
  } else {
    throw ConfigError("key 'agents.init' must be one of point, uniform, explicit");
  }
  if (s.init != InitMode::point && agents.contains("point")) {
    throw ConfigError("key 'agents.point' requires init 'point'");
  }
  if (s.init != InitMode::explicit_list && agents.contains("positions")) {
    throw ConfigError("key 'agents.positions' requires init 'explicit'");
  }
  if (agents.contains("count") || s.init != InitMode::explicit_list) {
    const auto count = as_integer(require(agents, "agents", "count"), "agents.count");
    if (count < 1) throw ConfigError("constraint violated: agents.count >= 1");
    s.agent_count = static_cast<std::size_t>(count);
  } else {
    s.agent_count = s.init_positions.size();
  }

  s.delta = doc.contains("delta") ? as_number(doc["delta"], "delta") : s.sensing_range / 50.0;
  s.Delta = doc.contains("Delta") ? as_number(doc["Delta"], "Delta") : 2.0 * s.delta;
  if (doc.contains("noise")) s.noise = as_bool(doc["noise"], "noise");
  if (doc.contains("noise_sampling")) s.noise_sampling = as_string(doc["noise_sampling"], "noise_sampling");

  const json& dyn = require(doc, "", "dynamics");
  check_keys(dyn, "dynamics",
             {"law", "signal", "cutoff", "hard_cutoff", "kernel_truncation", "kernel_grid_step",
              "quad_resolution", "field"});
  const std::string law = as_string(require(dyn, "dynamics", "law"), "dynamics.law");
  if (law == "signal_coverage") {
    s.law = LawKind::signal_coverage;
  } else if (law == "electrostatic") {
    s.law = LawKind::electrostatic;
  } else if (law == "scalar_field") {
    s.law = LawKind::scalar_field;
  } else {
    throw ConfigError("key 'dynamics.law' must be one of signal_coverage, electrostatic, scalar_field");
  }

  if (s.law != LawKind::signal_coverage) {
    for (const char* key : {"signal", "cutoff", "hard_cutoff", "kernel_truncation", "kernel_grid_step",
                            "quad_resolution"}) {
      if (dyn.contains(key)) {
        throw ConfigError("key 'dynamics." + std::string(key) + "' only applies to law signal_coverage");
      }
    }
  }
  if (s.law != LawKind::scalar_field && dyn.contains("field")) {
    throw ConfigError("key 'dynamics.field' only applies to law scalar_field");
  }

  if (s.law == LawKind::signal_coverage) {
    if (dyn.contains("signal")) {
      const json& sig = dyn["signal"];
      check_keys(sig, "dynamics.signal", {"shape", "lambda", "samples"});
      if (sig.contains("shape")) s.signal.shape = as_string(sig["shape"], "dynamics.signal.shape");
      if (s.signal.shape == "gaussian") {
        if (sig.contains("samples")) throw ConfigError("key 'dynamics.signal.samples' requires shape 'tabulated'");
        if (sig.contains("lambda")) s.signal.lambda = as_number(sig["lambda"], "dynamics.signal.lambda");
      } else if (s.signal.shape == "tabulated") {
        if (sig.contains("lambda")) throw ConfigError("key 'dynamics.signal.lambda' requires shape 'gaussian'");
        const json& samples = require(sig, "dynamics.signal", "samples");
        if (!samples.is_array()) throw ConfigError("key 'dynamics.signal.samples' must be an array");
        for (std::size_t i = 0; i < samples.size(); ++i) {
          const Vec2 p = as_vec2(samples[i], "dynamics.signal.samples[" + std::to_string(i) + "]");
          s.signal.samples.emplace_back(p.x, p.y);
        }
      } else {
        throw ConfigError("key 'dynamics.signal.shape' must be gaussian or tabulated");
      }
    }
    if (dyn.contains("cutoff")) {
      const json& c = dyn["cutoff"];
      if (c.is_string() && c.get<std::string>() == "half_sensing") {
        s.cutoff = CutoffKind::half_sensing;
      } else if (c.is_string() && c.get<std::string>() == "none") {
        s.cutoff = CutoffKind::none;
      } else if (c.is_number()) {
        s.cutoff = CutoffKind::value;
        s.cutoff_value = c.get<double>();
      } else {
        throw ConfigError("key 'dynamics.cutoff' must be \"half_sensing\", \"none\" or a number");
      }
    }
    s.hard_cutoff = dyn.contains("hard_cutoff") ? as_bool(dyn["hard_cutoff"], "dynamics.hard_cutoff")
                                                : s.cutoff == CutoffKind::none;
    if (dyn.contains("kernel_truncation")) {
      s.kernel_truncation = as_number(dyn["kernel_truncation"], "dynamics.kernel_truncation");
    }
    s.kernel_grid_step = dyn.contains("kernel_grid_step")
                             ? as_number(dyn["kernel_grid_step"], "dynamics.kernel_grid_step")
                             : s.sensing_range / 512.0;
    if (dyn.contains("quad_resolution")) {
      s.quad_resolution = static_cast<int>(as_integer(dyn["quad_resolution"], "dynamics.quad_resolution"));
    }
  }

  if (s.law == LawKind::scalar_field) {
    const json& field = require(dyn, "dynamics", "field");
    check_keys(field, "dynamics.field", {"kind", "a", "b", "c", "lambda", "center"});
    const std::string kind = as_string(require(field, "dynamics.field", "kind"), "dynamics.field.kind");
    if (kind == "linear") {
      s.field.kind = FieldKind::linear;
      for (const char* key : {"c", "lambda", "center"}) {
        if (field.contains(key)) {
          throw ConfigError("key 'dynamics.field." + std::string(key) + "' requires kind 'exponential'");
        }
      }
      s.field.a = as_number(require(field, "dynamics.field", "a"), "dynamics.field.a");
      s.field.b = as_number(require(field, "dynamics.field", "b"), "dynamics.field.b");
    } else if (kind == "exponential") {
      s.field.kind = FieldKind::exponential;
      for (const char* key : {"a", "b"}) {
        if (field.contains(key)) {
          throw ConfigError("key 'dynamics.field." + std::string(key) + "' requires kind 'linear'");
        }
      }
      if (field.contains("c")) s.field.c = as_number(field["c"], "dynamics.field.c");
      if (field.contains("lambda")) s.field.lambda = as_number(field["lambda"], "dynamics.field.lambda");
      s.field.center = field.contains("center") ? as_vec2(field["center"], "dynamics.field.center")
                                                : s.region.center();
    } else {
      throw ConfigError("key 'dynamics.field.kind' must be linear or exponential");
    }
  }

  s.baseline = doc.contains("baseline") ? as_number(doc["baseline"], "baseline")
                                        : (s.law == LawKind::signal_coverage ? 1.0 : 0.0);

  if (doc.contains("targets")) {
    const json& list = doc["targets"];
    if (!list.is_array()) throw ConfigError("key 'targets' must be an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string path = "targets[" + std::to_string(k) + "]";
      check_keys(list[k], path, {"position", "demand", "lambda"});
      TargetSpec t;
      t.position = as_vec2(require(list[k], path, "position"), path + ".position");
      if (list[k].contains("demand")) t.demand = static_cast<int>(as_integer(list[k]["demand"], path + ".demand"));
      if (list[k].contains("lambda")) {
        if (s.law != LawKind::signal_coverage) {
          throw ConfigError("key '" + path + ".lambda' only applies to law signal_coverage");
        }
        t.lambda = as_number(list[k]["lambda"], path + ".lambda");
      }
      s.targets.push_back(t);
    }
  }
  if (doc.contains("random_targets")) {
    const json& rt = doc["random_targets"];
    check_keys(rt, "random_targets", {"demands", "margin"});
    const json& demands = require(rt, "random_targets", "demands");
    if (!demands.is_array()) throw ConfigError("key 'random_targets.demands' must be an array");
    RandomTargetsSpec spec;
    for (std::size_t k = 0; k < demands.size(); ++k) {
      spec.demands.push_back(
          static_cast<int>(as_integer(demands[k], "random_targets.demands[" + std::to_string(k) + "]")));
    }
    if (rt.contains("margin")) {
      spec.margin = as_number(rt["margin"], "random_targets.margin");
    } else if (s.law == LawKind::signal_coverage) {
      const double v = agent_signal(s).support_radius();
      spec.margin = agent_signal(s).has_compact_support() ? v : 0.0;
    }
    s.random_targets = spec;
  }

  s.completion_radius = doc.contains("completion_radius") ? as_number(doc["completion_radius"], "completion_radius")
                                                          : s.sensing_range / 4.0;
  if (doc.contains("targets_disappear")) s.targets_disappear = as_bool(doc["targets_disappear"], "targets_disappear");
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw ConfigError("key 'seed' must be a non-negative integer");
    }
    s.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("metrics_grid")) {
    const json& g = doc["metrics_grid"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer() ||
        g[0].get<std::int64_t>() < 1 || g[1].get<std::int64_t>() < 1) {
      throw ConfigError("key 'metrics_grid' must be a pair of positive integers [nx, ny]");
    }
    s.grid_nx = g[0].get<std::size_t>();
    s.grid_ny = g[1].get<std::size_t>();
  }

  if (s.law == LawKind::signal_coverage && !s.kernel_truncation && !agent_signal(s).has_compact_support()) {
    s.kernel_truncation = s.sensing_range;
  }
  validate_scenario(s);
  return s;
}

ojson to_json(const Scenario& s) {
  ojson doc;
  doc["name"] = s.name;
  doc["region"] = {{"min", vec2_json(s.region.min)}, {"max", vec2_json(s.region.max)}};
  ojson agents;
  agents["count"] = s.agent_count;
  agents["init"] = to_string(s.init);
  if (s.init == InitMode::point) agents["point"] = vec2_json(s.init_point);
  if (s.init == InitMode::explicit_list) {
    ojson list = ojson::array();
    for (Vec2 p : s.init_positions) list.push_back(vec2_json(p));
    agents["positions"] = list;
  }
  doc["agents"] = agents;
  doc["sensing_range"] = s.sensing_range;
  doc["delta"] = s.delta;
  doc["Delta"] = s.Delta;
  doc["noise"] = s.noise;
  doc["noise_sampling"] = s.noise_sampling;

  ojson dyn;
  dyn["law"] = to_string(s.law);
  if (s.law == LawKind::signal_coverage) {
    ojson sig;
    sig["shape"] = s.signal.shape;
    if (s.signal.shape == "gaussian") {
      sig["lambda"] = s.signal.lambda;
    } else {
      ojson samples = ojson::array();
      for (const auto& [r, v] : s.signal.samples) samples.push_back({r, v});
      sig["samples"] = samples;
    }
    dyn["signal"] = sig;
    switch (s.cutoff) {
      case CutoffKind::half_sensing: dyn["cutoff"] = "half_sensing"; break;
      case CutoffKind::none: dyn["cutoff"] = "none"; break;
      case CutoffKind::value: dyn["cutoff"] = s.cutoff_value; break;
    }
    dyn["hard_cutoff"] = s.hard_cutoff;
    if (s.kernel_truncation) dyn["kernel_truncation"] = *s.kernel_truncation;
    dyn["kernel_grid_step"] = s.kernel_grid_step;
    dyn["quad_resolution"] = s.quad_resolution;
  }
  if (s.law == LawKind::scalar_field) {
    if (s.field.kind == FieldKind::linear) {
      dyn["field"] = {{"kind", "linear"}, {"a", s.field.a}, {"b", s.field.b}};
    } else {
      dyn["field"] = {{"kind", "exponential"},
                      {"c", s.field.c},
                      {"lambda", s.field.lambda},
                      {"center", vec2_json(s.field.center)}};
    }
  }
  doc["dynamics"] = dyn;
  doc["baseline"] = s.baseline;

  ojson targets = ojson::array();
  for (const TargetSpec& t : s.targets) {
    ojson tj;
    tj["position"] = vec2_json(t.position);
    tj["demand"] = t.demand;
    if (t.lambda) tj["lambda"] = *t.lambda;
    targets.push_back(tj);
  }
  doc["targets"] = targets;
  if (s.random_targets) {
    doc["random_targets"] = {{"demands", s.random_targets->demands}, {"margin", s.random_targets->margin}};
  }
  doc["completion_radius"] = s.completion_radius;
  doc["targets_disappear"] = s.targets_disappear;
  doc["seed"] = s.seed;
  doc["metrics_grid"] = {s.grid_nx, s.grid_ny};
  return doc;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("constraint violated: ") + what + " > 0");
}

SignalFunction target_signal(const Scenario& s, const TargetSpec& t) {
  if (t.lambda) return SignalFunction::gaussian(*t.lambda, s.signal_cutoff());
  return agent_signal(s);
}

std::vector<TargetSpec> resolve_targets(const Scenario& s) {
  std::vector<TargetSpec> out = s.targets;
  if (!s.random_targets) return out;
  const double m = s.random_targets->margin;
  for (std::size_t k = 0; k < s.random_targets->demands.size(); ++k) {
    RngStream rng(s.seed, StreamDomain::target_placement, k, 0);
    TargetSpec t;
    t.position = {rng.next_uniform(s.region.min.x + m, s.region.max.x - m),
                  rng.next_uniform(s.region.min.y + m, s.region.max.y - m)};
    t.demand = s.random_targets->demands[k];
    out.push_back(t);
  }
  return out;
}

std::string signal_key(const SignalFunction& f) {
  std::ostringstream os;
  os.precision(17);
  os << static_cast<int>(f.shape()) << ':' << f.lambda() << ':' << f.cutoff();
  for (const auto& [r, v] : f.samples()) os << ':' << r << '/' << v;
  return os.str();
}

KernelTable cached_kernel(const SignalFunction& target, const SignalFunction& agent, const KernelOptions& opts) {
  static std::mutex mu;
  static std::map<std::string, KernelTable> cache;
  std::ostringstream key;
  key.precision(17);
  key << signal_key(target) << '|' << signal_key(agent) << '|' << opts.grid_step << '|' << opts.quad_resolution
      << '|' << opts.truncation_radius.value_or(-1) << '|' << opts.hard_cutoff.value_or(-1);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key.str()); it != cache.end()) return it->second;
  }
  KernelTable table = derive_cross_kernel(target, agent, opts);
  std::lock_guard lock(mu);
  return cache.emplace(key.str(), std::move(table)).first->second;
}

}  // namespace

double Scenario::signal_cutoff() const {
  switch (cutoff) {
    case CutoffKind::half_sensing: return sensing_range / 2.0;
    case CutoffKind::none: return kInfinity;
    case CutoffKind::value: return cutoff_value;
  }
  return kInfinity;
}

SignalFunction agent_signal(const Scenario& s) {
  if (s.signal.shape == "tabulated") return SignalFunction::tabulated(s.signal.samples, s.signal_cutoff());
  return SignalFunction::gaussian(s.signal.lambda, s.signal_cutoff());
}

void validate_scenario(const Scenario& s) {
  (void)Region(s.region.min, s.region.max);
  require_positive(s.sensing_range, "sensing_range");
  require_positive(s.delta, "delta");
  if (!(s.delta <= s.Delta) || !std::isfinite(s.Delta)) {
    throw ConfigError("constraint violated: δ ≤ Δ (delta = " + format_number(s.delta) +
                      ", Delta = " + format_number(s.Delta) + ")");
  }
  if (s.noise_sampling != "disk_uniform") throw ConfigError("key 'noise_sampling' must be \"disk_uniform\"");
  if (s.agent_count < 1) throw ConfigError("constraint violated: agents.count >= 1");
  if (s.init == InitMode::point && !s.region.contains(s.init_point)) {
    throw ConfigError("constraint violated: agents.point inside the region");
  }
  if (s.init == InitMode::explicit_list) {
    if (s.init_positions.size() != s.agent_count) {
      throw ConfigError("constraint violated: agents.count equals the number of agents.positions");
    }
    for (std::size_t i = 0; i < s.init_positions.size(); ++i) {
      if (!s.region.contains(s.init_positions[i])) {
        throw ConfigError("constraint violated: agents.positions[" + std::to_string(i) + "] inside the region");
      }
    }
  }
  require_positive(s.completion_radius, "completion_radius");
  if (!(s.baseline >= 0.0) || !std::isfinite(s.baseline)) throw ConfigError("constraint violated: baseline >= 0");
  if (s.grid_nx < 1 || s.grid_ny < 1) throw ConfigError("constraint violated: metrics_grid >= 1");

  if (s.law == LawKind::signal_coverage) {
    if (s.signal.shape == "gaussian") require_positive(s.signal.lambda, "dynamics.signal.lambda");
    if (s.cutoff == CutoffKind::value) require_positive(s.cutoff_value, "dynamics.cutoff");
    require_positive(s.kernel_grid_step, "dynamics.kernel_grid_step");
    if (s.quad_resolution < 64) throw ConfigError("constraint violated: dynamics.quad_resolution >= 64");
    if (s.kernel_truncation) require_positive(*s.kernel_truncation, "dynamics.kernel_truncation");
    const SignalFunction f = agent_signal(s);
    if (!f.has_compact_support() && !s.kernel_truncation) {
      throw ConfigError("key 'dynamics.kernel_truncation' is required for infinite-support signals");
    }
  }
  if (s.law == LawKind::scalar_field) {
    if (!s.targets.empty() || s.random_targets) {
      throw ConfigError("key 'targets' does not apply to law scalar_field");
    }
    if (s.field.kind == FieldKind::exponential) require_positive(s.field.lambda, "dynamics.field.lambda");
    if (!std::isfinite(s.field.a) || !std::isfinite(s.field.b) || !std::isfinite(s.field.c)) {
      throw ConfigError("constraint violated: field coefficients finite");
    }
  }
  if (s.random_targets) {
    const double m = s.random_targets->margin;
    if (!(m >= 0.0) || 2.0 * m >= s.region.width() || 2.0 * m >= s.region.height()) {
      throw ConfigError("constraint violated: 0 <= random_targets.margin < half the region size");
    }
    for (int d : s.random_targets->demands) {
      if (d < 1) throw ConfigError("constraint violated: random_targets.demands >= 1");
    }
  }
  const auto targets = resolve_targets(s);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const TargetSpec& t = targets[k];
    const std::string path = "targets[" + std::to_string(k) + "]";
    if (t.demand < 1) throw ConfigError("constraint violated: " + path + ".demand >= 1");
    if (t.lambda) require_positive(*t.lambda, (path + ".lambda").c_str());
    if (!s.region.contains(t.position)) throw ConfigError("constraint violated: " + path + " inside the region");
    if (s.law == LawKind::signal_coverage) {
      const SignalFunction f = target_signal(s, t);
      if (f.has_compact_support() && s.region.inset_distance(t.position) < f.support_radius()) {
        throw ConfigError("constraint violated: " + path + " signal disk inside the region");
      }
    }
  }
}

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  return from_json(doc);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

World build_world(const Scenario& s) {
  validate_scenario(s);
  const auto specs = resolve_targets(s);
  std::vector<Target> targets;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    Target t;
    t.id = k;
    t.position = specs[k].position;
    t.demand = specs[k].demand;
    if (specs[k].lambda) t.signal = SignalFunction::gaussian(*specs[k].lambda, s.signal_cutoff());
    targets.push_back(std::move(t));
  }

  std::vector<Agent> agents;
  for (std::size_t i = 0; i < s.agent_count; ++i) {
    Agent a;
    a.id = static_cast<AgentId>(i);
    switch (s.init) {
      case InitMode::point: a.position = s.init_point; break;
      case InitMode::explicit_list: a.position = s.init_positions[i]; break;
      case InitMode::uniform: {
        RngStream rng(s.seed, StreamDomain::agent_init, i, 0);
        a.position = rng.next_in_region(s.region);
        break;
      }
    }
    agents.push_back(a);
  }

  DynamicsConfig cfg;
  cfg.sensing_range = s.sensing_range;
  cfg.delta = s.delta;
  cfg.Delta = s.Delta;
  cfg.noise_enabled = s.noise;
  ProfileSpec profile = ElectrostaticProfileSpec{};
  switch (s.law) {
    case LawKind::signal_coverage: {
      const SignalFunction f = agent_signal(s);
      KernelOptions opts;
      opts.grid_step = s.kernel_grid_step;
      opts.quad_resolution = s.quad_resolution;
      opts.truncation_radius = s.kernel_truncation;
      if (s.hard_cutoff) opts.hard_cutoff = s.sensing_range;
      SignalCoverageLaw law{cached_kernel(f, f, opts), {}};
      for (const Target& t : targets) {
        KernelTable k = cached_kernel(t.signal.value_or(f), f, opts);
        k.demand_scale = t.demand;
        law.target_kernels.push_back(std::move(k));
      }
      cfg.law = std::move(law);
      profile = SignalCoverageProfileSpec{f, s.baseline};
      break;
    }
    case LawKind::electrostatic:
      cfg.law = ElectrostaticLaw{};
      profile = ElectrostaticProfileSpec{};
      break;
    case LawKind::scalar_field:
      cfg.law = ScalarFieldLaw{};
      if (s.field.kind == FieldKind::linear) {
        profile = LinearFieldSpec{s.field.a, s.field.b, s.baseline};
      } else {
        profile = ExponentialFieldSpec{s.field.c, s.field.lambda, s.field.center, s.baseline};
      }
      break;
  }
  return World(s.region, std::move(agents), std::move(targets), std::move(profile), std::move(cfg),
               s.completion_radius, s.targets_disappear, s.seed, s.grid_nx, s.grid_ny);
}

std::string save_state(const Scenario& s, const World& world) {
  ojson doc;
  doc["format"] = "swarm-state v1";
  doc["scenario"] = to_json(s);
  doc["step"] = world.step();
  ojson agents = ojson::array();
  for (const Agent& a : world.agents()) agents.push_back({{"id", a.id}, {"x", a.position.x}, {"y", a.position.y}});
  doc["agents"] = agents;
  ojson targets = ojson::array();
  for (const Target& t : world.targets()) {
    targets.push_back({{"active", t.active}, {"completed_step", t.completed_step}});
  }
  doc["targets"] = targets;
  return doc.dump(2) + "\n";
}

std::pair<Scenario, World> load_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed state: ") + e.what());
  }
  check_keys(doc, "", {"format", "scenario", "step", "agents", "targets"});
  if (as_string(require(doc, "", "format"), "format") != "swarm-state v1") {
    throw ConfigError("unsupported state format");
  }
  Scenario s = from_json(require(doc, "", "scenario"));
  World world = build_world(s);
  const auto step = as_integer(require(doc, "", "step"), "step");
  std::vector<Agent> agents;
  for (const json& a : require(doc, "", "agents")) {
    agents.push_back({static_cast<AgentId>(as_integer(require(a, "agents[]", "id"), "agents[].id")),
                      {as_number(require(a, "agents[]", "x"), "agents[].x"),
                       as_number(require(a, "agents[]", "y"), "agents[].y")}});
  }
  std::vector<Target> targets = world.targets();
  const json& tlist = require(doc, "", "targets");
  if (!tlist.is_array() || tlist.size() != targets.size()) throw ConfigError("state target count mismatch");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    targets[k].active = as_bool(require(tlist[k], "targets[]", "active"), "targets[].active");
    targets[k].completed_step = as_integer(require(tlist[k], "targets[]", "completed_step"), "targets[].completed_step");
  }
  world.restore(step, std::move(agents), targets);
  return {std::move(s), std::move(world)};
}

}  // namespace swarm
