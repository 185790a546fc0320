// ============================================================================
// config.cpp -- experiment configuration parsing, validation and canonical form
// ============================================================================
#include "byzfuse/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace byzfuse {

using nlohmann::json;

namespace {

struct KeySpec {
  bool numeric;
  std::function<json(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const json&)> set;
};

double as_double(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, "expected a number, got " + v.dump());
  return v.get<double>();
}

long long as_integer(const std::string& key, const json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<long long>(d);
  }
  throw ConfigError(key, "expected an integer, got " + v.dump());
}

int as_int(const std::string& key, const json& v) {
  const long long x = as_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key, "integer out of range");
  return static_cast<int>(x);
}

bool as_bool(const std::string& key, const json& v) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false, got " + v.dump());
  return v.get<bool>();
}

std::string as_string(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

std::string bits_name(BaselineHumanBits b) { return b == BaselineHumanBits::raw ? "raw" : "belief"; }
std::string draw_name(ThresholdDraw d) { return d == ThresholdDraw::trial ? "trial" : "window"; }

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = [] {
    std::map<std::string, KeySpec> t;
    auto real = [&t](const std::string& name, auto getter) {
      t[name] = {true, [getter](const ExperimentConfig& c) { return json(getter(c)); },
                 [getter, name](ExperimentConfig& c, const json& v) { getter(c) = as_double(name, v); }};
    };
    auto integer = [&t](const std::string& name, auto getter) {
      t[name] = {true, [getter](const ExperimentConfig& c) { return json(getter(c)); },
                 [getter, name](ExperimentConfig& c, const json& v) { getter(c) = as_int(name, v); }};
    };
    auto flag = [&t](const std::string& name, auto getter) {
      t[name] = {false, [getter](const ExperimentConfig& c) { return json(getter(c)); },
                 [getter, name](ExperimentConfig& c, const json& v) { getter(c) = as_bool(name, v); }};
    };
    auto optional_real = [&t](const std::string& name, auto getter) {
      t[name] = {true,
                 [getter](const ExperimentConfig& c) {
                   const auto& o = getter(c);
                   return o ? json(*o) : json(nullptr);
                 },
                 [getter, name](ExperimentConfig& c, const json& v) {
                   if (v.is_null())
                     getter(c).reset();
                   else
                     getter(c) = as_double(name, v);
                 }};
    };

    integer("N", [](auto& c) -> auto& { return c.n_sensors; });
    integer("M", [](auto& c) -> auto& { return c.n_humans; });
    integer("T", [](auto& c) -> auto& { return c.window_length; });
    real("alpha", [](auto& c) -> auto& { return c.alpha; });
    optional_real("alpha_e", [](auto& c) -> auto& { return c.alpha_e; });
    real("delta", [](auto& c) -> auto& { return c.delta_step; });
    real("eta", [](auto& c) -> auto& { return c.eta; });
    optional_real("kappa", [](auto& c) -> auto& { return c.kappa; });
    real("kappa_prime", [](auto& c) -> auto& { return c.kappa_prime; });
    real("mu0", [](auto& c) -> auto& { return c.model.mu0; });
    real("mu1", [](auto& c) -> auto& { return c.model.mu1; });
    real("var0", [](auto& c) -> auto& { return c.model.var0; });
    real("var1", [](auto& c) -> auto& { return c.model.var1; });
    real("mu_tau", [](auto& c) -> auto& { return c.human_dist.mu_tau; });
    real("sigma_tau", [](auto& c) -> auto& { return c.human_dist.sigma_tau; });
    real("tau", [](auto& c) -> auto& { return c.sensor_tau; });
    real("window_prior", [](auto& c) -> auto& { return c.window_prior; });
    flag("allow_quadrature", [](auto& c) -> auto& { return c.allow_quadrature; });
    integer("sensor_degree", [](auto& c) -> auto& { return c.topology.sensor_degree; });
    integer("human_degree", [](auto& c) -> auto& { return c.topology.human_degree; });
    flag("exclude_identified", [](auto& c) -> auto& { return c.exclude_identified; });
    integer("trials", [](auto& c) -> auto& { return c.trials; });
    integer("windows", [](auto& c) -> auto& { return c.windows; });
    flag("simulate_network", [](auto& c) -> auto& { return c.simulate_network; });
    real("beta_side", [](auto& c) -> auto& { return c.beta_side; });
    real("gamma_side", [](auto& c) -> auto& { return c.gamma_side; });
    integer("side_info_draws", [](auto& c) -> auto& { return c.side_info_draws; });

    t["seed"] = {true, [](const ExperimentConfig& c) { return json(c.seed); },
                 [](ExperimentConfig& c, const json& v) {
                   if (v.is_number_unsigned()) {
                     c.seed = v.get<std::uint64_t>();
                     return;
                   }
                   const long long x = as_integer("seed", v);
                   if (x < 0) throw ConfigError("seed", "must be non-negative");
                   c.seed = static_cast<std::uint64_t>(x);
                 }};
    t["topology"] = {false, [](const ExperimentConfig& c) { return json(to_string(c.topology.kind)); },
                     [](ExperimentConfig& c, const json& v) {
                       c.topology.kind = topology_kind_from_string(as_string("topology", v));
                     }};
    t["reputation_rule"] = {false,
                            [](const ExperimentConfig& c) { return json(to_string(c.reputation_rule)); },
                            [](ExperimentConfig& c, const json& v) {
                              c.reputation_rule =
                                  reputation_rule_from_string(as_string("reputation_rule", v));
                            }};
    t["baseline_human_bits"] = {
        false, [](const ExperimentConfig& c) { return json(bits_name(c.baseline_human_bits)); },
        [](ExperimentConfig& c, const json& v) {
          const std::string s = as_string("baseline_human_bits", v);
          if (s == "raw")
            c.baseline_human_bits = BaselineHumanBits::raw;
          else if (s == "belief")
            c.baseline_human_bits = BaselineHumanBits::belief;
          else
            throw ConfigError("baseline_human_bits", "expected raw or belief, got '" + s + "'");
        }};
    t["threshold_draw"] = {
        false, [](const ExperimentConfig& c) { return json(draw_name(c.threshold_draw)); },
        [](ExperimentConfig& c, const json& v) {
          const std::string s = as_string("threshold_draw", v);
          if (s == "trial")
            c.threshold_draw = ThresholdDraw::trial;
          else if (s == "window")
            c.threshold_draw = ThresholdDraw::window;
          else
            throw ConfigError("threshold_draw", "expected trial or window, got '" + s + "'");
        }};
    t["sweep_axis"] = {false, [](const ExperimentConfig& c) { return json(c.sweep_axis); },
                       [](ExperimentConfig& c, const json& v) { c.sweep_axis = as_string("sweep_axis", v); }};
    t["sweep_values"] = {false, [](const ExperimentConfig& c) { return json(c.sweep_values); },
                         [](ExperimentConfig& c, const json& v) {
                           if (!v.is_array()) throw ConfigError("sweep_values", "expected an array of numbers");
                           std::vector<double> out;
                           for (const auto& x : v) out.push_back(as_double("sweep_values", x));
                           c.sweep_values = std::move(out);
                         }};
    return t;
  }();
  return table;
}

const KeySpec& lookup(std::string_view key) {
  const auto& t = key_table();
  const auto it = t.find(std::string(key));
  if (it == t.end()) throw ConfigError(std::string(key), "unknown configuration key");
  return it->second;
}

void check(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }
bool open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, spec] : key_table()) k.push_back(name);
    return k;
  }();
  return keys;
}

bool is_numeric_key(std::string_view key) {
  const auto& t = key_table();
  const auto it = t.find(std::string(key));
  return it != t.end() && it->second.numeric;
}

void ExperimentConfig::validate() const {
  check(n_sensors >= 1, "N", "must be at least 1");
  check(n_humans >= 1, "M", "must be at least 1");
  check(window_length >= 1, "T", "must be at least 1");
  check(in_unit(alpha), "alpha", "must lie in [0, 1], got " + std::to_string(alpha));
  if (alpha_e)
    check(open_unit(*alpha_e), "alpha_e", "must lie strictly between 0 and 1");
  else
    check(open_unit(alpha), "alpha_e",
          "defaults to alpha, which must then lie strictly between 0 and 1; set alpha_e");
  check(delta_step > 0.0 && std::isfinite(delta_step), "delta", "must be positive");
  check(std::isfinite(eta), "eta", "must be finite");
  if (kappa) check(*kappa >= 0.0 && std::isfinite(*kappa), "kappa", "must be non-negative");
  check(kappa_prime > 0.0 && std::isfinite(kappa_prime), "kappa_prime", "must be positive");
  check(model.var0 > 0.0, "var0", "must be positive");
  check(model.var1 > 0.0, "var1", "must be positive");
  check(model.mu0 != model.mu1, "mu1", "must differ from mu0");
  check(std::isfinite(model.mu0) && std::isfinite(model.mu1), "mu1", "means must be finite");
  check(model.equal_variance() || allow_quadrature, "var1",
        "unequal variances need allow_quadrature = true");
  check(human_dist.sigma_tau > 0.0 && std::isfinite(human_dist.sigma_tau), "sigma_tau",
        "must be positive");
  check(std::isfinite(human_dist.mu_tau), "mu_tau", "must be finite");
  check(sensor_tau > 0.0 && std::isfinite(sensor_tau), "tau", "must be positive");
  check(open_unit(window_prior), "window_prior", "must lie strictly between 0 and 1");
  check(trials >= 1, "trials", "must be at least 1");
  check(windows >= 1, "windows", "must be at least 1");
  check(in_unit(beta_side), "beta_side", "must lie in [0, 1]");
  check(in_unit(gamma_side), "gamma_side", "must lie in [0, 1]");
  check(side_info_draws >= 0, "side_info_draws", "must be non-negative");
  if (!sweep_axis.empty())
    check(is_numeric_key(sweep_axis), "sweep_axis", "unknown sweep axis '" + sweep_axis + "'");
  check(topology.human_degree >= 0, "human_degree", "must be non-negative (0 derives it)");
  if (topology.kind == TopologyKind::partition) {
    check(n_sensors % n_humans == 0, "topology",
          "partition needs N divisible by M (N = " + std::to_string(n_sensors) +
              ", M = " + std::to_string(n_humans) + ")");
  } else {
    resolved_human_degree(topology, n_sensors, n_humans);
  }
}

ExperimentConfig apply_config_text(std::string_view text, ExperimentConfig cfg) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (doc.is_null()) return cfg;
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object of key/value pairs");
  for (const auto& [key, value] : doc.items()) lookup(key).set(cfg, value);
  return cfg;
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError(std::string(assignment), "override must look like key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  const KeySpec& spec = lookup(key);
  json value;
  if (key == "sweep_values" && !raw.empty() && raw.front() != '[') {
    value = json::array();
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        value.push_back(json::parse(item));
      } catch (const json::parse_error&) {
        throw ConfigError(key, "'" + item + "' is not a number");
      }
    }
  } else if (raw.empty() && key == "sweep_values") {
    value = json::array();
  } else {
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;
    }
  }
  spec.set(cfg, value);
}

void set_numeric(ExperimentConfig& cfg, std::string_view key, double value) {
  const KeySpec& spec = lookup(key);
  if (!spec.numeric) throw ConfigError(std::string(key), "not a numeric key");
  spec.set(cfg, json(value));
}

ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides, ExperimentConfig cfg) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = apply_config_text(buf.str(), std::move(cfg));
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

std::string emit_config(const ExperimentConfig& cfg) {
  json doc = json::object();
  for (const auto& [name, spec] : key_table()) doc[name] = spec.get(cfg);
  return doc.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : emit_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace byzfuse
