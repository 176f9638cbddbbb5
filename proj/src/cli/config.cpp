#include <json.hpp>

#include <array>
#include <charconv>
#include <set>
#include <string>

#include "config_json.hpp"
#include "ncchain/cli.hpp"
#include "ncchain/errors.hpp"

namespace ncchain::cli {

using nlohmann::json;

namespace {

enum class ConstantGroup { kNone, kUniform, kMassScaled, kMoments };

ConstantGroup group_of(const std::string& key) {
  if (key == "c_theta" || key == "c_eta") return ConstantGroup::kUniform;
  if (key == "gamma_tilde" || key == "alpha_tilde") return ConstantGroup::kMassScaled;
  if (key == "theta_sq" || key == "eta_sq") return ConstantGroup::kMoments;
  return ConstantGroup::kNone;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "N",      "m",    "omega",       "k",           "hbar",    "planck_length", "omega_osc",
      "c_theta", "c_eta", "gamma_tilde", "alpha_tilde", "theta_sq", "eta_sq",       "format",
      "tol",    "seed", "samples",     "verify",      "quanta",  "sweep"};
  return keys;
}

Rational rational_of(const json& v, const std::string& key) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    // dump() prints the shortest decimal that reads back as the same double,
    // so 0.1 in a config file becomes exactly 1/10
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
  throw ConfigError(key + ": expected a number or a string such as \"3/2\"");
}

long integer_of(const json& v, const std::string& key) {
  const Rational r = rational_of(v, key);
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw ConfigError(key + ": expected an integer");
  return r.get_num().get_si();
}

std::vector<Rational> rational_list(const json& v, const std::string& key) {
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(rational_of(e, key));
  return out;
}

json rational_json(const Rational& r) { return to_string(r); }

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kPretty:
      return "pretty";
    case OutputFormat::kCsv:
      break;
  }
  return "csv";
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  if (name == "pretty") return OutputFormat::kPretty;
  throw ConfigError("format must be csv, json or pretty, got '" + name + "'");
}

const json& config_object(const json& root) {
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  if (auto it = root.find("params"); it != root.end() && it->is_object()) return *it;
  return root;
}

void merge_override(json& config, const std::string& key, json value) {
  const ConstantGroup g = group_of(key);
  if (g != ConstantGroup::kNone) {
    for (auto it = config.begin(); it != config.end();) {
      const ConstantGroup other = group_of(it.key());
      it = other != ConstantGroup::kNone && other != g ? config.erase(it) : std::next(it);
    }
  }
  config[key] = std::move(value);
}

RunConfig config_from_json(const json& root) {
  const json& j = config_object(root);
  ConstantGroup group = ConstantGroup::kNone;
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    const ConstantGroup g = group_of(key);
    if (g == ConstantGroup::kNone) continue;
    if (group != ConstantGroup::kNone && group != g)
      throw ConfigError("give only one of (c_theta, c_eta), (gamma_tilde, alpha_tilde) or (theta_sq, eta_sq)");
    group = g;
  }

  RunConfig c;
  ModelParams& m = c.model;
  auto rat = [&](const char* key, Rational& target) {
    if (auto it = j.find(key); it != j.end()) target = rational_of(*it, key);
  };
  if (auto it = j.find("N"); it != j.end()) {
    const long n = integer_of(*it, "N");
    if (n < 1 || n > 0xFFFF) throw ConfigError("N must be in 1..65535");
    m.particle_count = static_cast<int>(n);
  }
  rat("m", m.mass);
  rat("omega", m.omega);
  rat("k", m.coupling);
  rat("hbar", m.nc.hbar);
  rat("planck_length", m.nc.planck_length);
  if (auto it = j.find("omega_osc"); it != j.end() && !it->is_null()) m.omega_osc = rational_of(*it, "omega_osc");

  switch (group) {
    case ConstantGroup::kUniform: {
      const json theta = j.value("c_theta", json(0));
      const json eta = j.value("c_eta", json(0));
      if (theta.is_array() || eta.is_array()) {
        PerParticleConstants per;
        per.c_theta = theta.is_array() ? rational_list(theta, "c_theta")
                                       : std::vector<Rational>(static_cast<std::size_t>(m.particle_count),
                                                               rational_of(theta, "c_theta"));
        per.c_eta = eta.is_array() ? rational_list(eta, "c_eta")
                                   : std::vector<Rational>(static_cast<std::size_t>(m.particle_count),
                                                           rational_of(eta, "c_eta"));
        m.nc.constants = std::move(per);
      } else {
        m.nc.constants = UniformConstants{rational_of(theta, "c_theta"), rational_of(eta, "c_eta")};
      }
      break;
    }
    case ConstantGroup::kMassScaled:
      m.nc.constants = MassScaledConstants{rational_of(j.value("gamma_tilde", json(0)), "gamma_tilde"),
                                           rational_of(j.value("alpha_tilde", json(0)), "alpha_tilde")};
      break;
    case ConstantGroup::kMoments:
      m.moments_override = Moments{rational_of(j.value("theta_sq", json(0)), "theta_sq"),
                                   rational_of(j.value("eta_sq", json(0)), "eta_sq")};
      break;
    case ConstantGroup::kNone:
      break;
  }

  if (auto it = j.find("format"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("format must be a string");
    c.format = parse_format(it->get<std::string>());
  }
  if (auto it = j.find("tol"); it != j.end()) c.tol = to_double(rational_of(*it, "tol"));
  if (auto it = j.find("seed"); it != j.end()) {
    const long seed = integer_of(*it, "seed");
    if (seed < 0) throw ConfigError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto it = j.find("samples"); it != j.end()) {
    const long samples = integer_of(*it, "samples");
    if (samples < 0 || samples > 1000000) throw ConfigError("samples must be in 0..1000000");
    c.samples = static_cast<int>(samples);
  }
  if (auto it = j.find("verify"); it != j.end()) {
    if (!it->is_boolean()) throw ConfigError("verify must be true or false");
    c.verify = it->get<bool>();
  }
  if (auto it = j.find("quanta"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("quanta must be a string");
    c.quanta = it->get<std::string>();
  }
  if (auto it = j.find("sweep"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ConfigError("sweep must be an object");
    SweepSpec s;
    for (const auto& [key, value] : it->items()) {
      if (key == "param") {
        if (!value.is_string()) throw ConfigError("sweep.param must be a string");
        s.param = value.get<std::string>();
      } else if (key == "from") {
        s.from = rational_of(value, "sweep.from");
      } else if (key == "to") {
        s.to = rational_of(value, "sweep.to");
      } else if (key == "steps") {
        const long steps = integer_of(value, "sweep.steps");
        if (steps < 0 || steps > 1000000) throw ConfigError("sweep.steps must be in 2..1000000");
        s.steps = static_cast<int>(steps);
      } else {
        throw ConfigError("unknown sweep key '" + key + "'");
      }
    }
    c.sweep = std::move(s);
  }
  c.validate();
  return c;
}

json config_json_value(const RunConfig& c) {
  const ModelParams& m = c.model;
  json j;
  j["N"] = m.particle_count;
  j["m"] = rational_json(m.mass);
  j["omega"] = rational_json(m.omega);
  j["k"] = rational_json(m.coupling);
  j["hbar"] = rational_json(m.nc.hbar);
  j["planck_length"] = rational_json(m.nc.planck_length);
  if (m.omega_osc) j["omega_osc"] = rational_json(*m.omega_osc);
  if (m.moments_override) {
    j["theta_sq"] = rational_json(m.moments_override->theta_sq);
    j["eta_sq"] = rational_json(m.moments_override->eta_sq);
  } else if (const auto* u = std::get_if<UniformConstants>(&m.nc.constants)) {
    j["c_theta"] = rational_json(u->c_theta);
    j["c_eta"] = rational_json(u->c_eta);
  } else if (const auto* s = std::get_if<MassScaledConstants>(&m.nc.constants)) {
    j["gamma_tilde"] = rational_json(s->gamma_tilde);
    j["alpha_tilde"] = rational_json(s->alpha_tilde);
  } else if (const auto* p = std::get_if<PerParticleConstants>(&m.nc.constants)) {
    json theta = json::array();
    json eta = json::array();
    for (const auto& v : p->c_theta) theta.push_back(rational_json(v));
    for (const auto& v : p->c_eta) eta.push_back(rational_json(v));
    j["c_theta"] = std::move(theta);
    j["c_eta"] = std::move(eta);
  }
  j["format"] = format_name(c.format);
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["verify"] = c.verify;
  if (!c.quanta.empty()) j["quanta"] = c.quanta;
  if (c.sweep) {
    j["sweep"] = {{"param", c.sweep->param},
                  {"from", rational_json(c.sweep->from)},
                  {"to", rational_json(c.sweep->to)},
                  {"steps", c.sweep->steps}};
  }
  return j;
}

void SweepSpec::validate() const {
  static const std::set<std::string> params{"k", "omega", "m", "theta_sq", "eta_sq", "N"};
  if (!params.count(param)) throw ConfigError("sweep.param must be one of k, omega, m, theta_sq, eta_sq, N");
  if (steps < 2) throw ConfigError("sweep needs at least 2 points");
  if (from == to) throw ConfigError("sweep range has zero width");
  if (param == "N") {
    if (from.get_den() != 1 || to.get_den() != 1) throw ConfigError("sweep over N needs integer end points");
    const Rational step = (to - from) / (steps - 1);
    if (step.get_den() != 1) throw ConfigError("sweep over N needs an integer step; adjust steps");
  }
}

std::vector<Rational> SweepSpec::points() const {
  validate();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out.push_back(Rational(from + (to - from) * i / (steps - 1)));
  return out;
}

void RunConfig::validate() const {
  model.validate();
  if (!(tol > 0.0) || !(tol < 1.0)) throw ConfigError("tol must be in (0, 1)");
  if (sweep) sweep->validate();
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::string config_to_json(const RunConfig& config) { return config_json_value(config).dump(2); }

ModelParams apply_sweep_value(const ModelParams& model, const std::string& param, const Rational& value) {
  ModelParams m = model;
  if (param == "k") {
    m.coupling = value;
  } else if (param == "omega") {
    m.omega = value;
  } else if (param == "m") {
    m.mass = value;
  } else if (param == "N") {
    if (value.get_den() != 1 || !value.get_num().fits_sint_p()) throw ConfigError("N must be an integer");
    m.particle_count = static_cast<int>(value.get_num().get_si());
  } else if (param == "theta_sq" || param == "eta_sq") {
    if (!m.moments_override) m.moments_override = model.moments();
    (param == "theta_sq" ? m.moments_override->theta_sq : m.moments_override->eta_sq) = value;
  } else {
    throw ConfigError("cannot sweep '" + param + "'");
  }
  m.validate();
  return m;
}

EnergyQuery parse_quanta(std::string_view spec) {
  EnergyQuery q;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  auto number = [](std::string_view token, std::string_view whole) {
    unsigned long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || v > 1000000)
      throw ConfigError("bad quanta token '" + std::string(whole) + "': expected a:n1,n2,n3");
    return v;
  };
  spec = trim(spec);
  while (!spec.empty()) {
    const auto semi = spec.find(';');
    const std::string_view token = trim(spec.substr(0, semi));
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (token.empty()) continue;
    const auto colon = token.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("bad quanta token '" + std::string(token) + "': expected a:n1,n2,n3");
    const auto mode = number(trim(token.substr(0, colon)), token);
    std::array<unsigned, 3> n{};
    std::string_view rest = token.substr(colon + 1);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto comma = rest.find(',');
      if ((i < 2) == (comma == std::string_view::npos))
        throw ConfigError("bad quanta token '" + std::string(token) + "': expected three occupation numbers");
      n[i] = static_cast<unsigned>(number(trim(rest.substr(0, comma)), token));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (mode < 1) throw ConfigError("bad quanta token '" + std::string(token) + "': mode index starts at 1");
    if (!q.quanta.emplace(static_cast<int>(mode), n).second)
      throw ConfigError("bad quanta token '" + std::string(token) + "': mode given twice");
  }
  return q;
}

}  // namespace ncchain::cli
