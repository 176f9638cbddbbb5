#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <variant>

#include "config_json.hpp"
#include "ncchain/cli.hpp"
#include "ncchain/errors.hpp"
#include "ncchain/spectrum.hpp"

namespace ncchain::cli {

using nlohmann::json;

namespace {

using Cell = std::variant<long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// What a subcommand produced, before formatting.
struct Result {
  Table table;
  bool table_is_report = false;  // verify: the table lists checks, not modes
  std::vector<std::pair<std::string, Cell>> summary;
  json energies = json::object();
  json report = nullptr;
  bool passed = true;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pretty_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string cell_text(const Cell& c, bool pretty) {
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  if (const auto* d = std::get_if<double>(&c)) return pretty ? pretty_double(*d) : format_double(*d);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& os, const Result& r) {
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
  os << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i], false));
    os << '\n';
  }
  for (const auto& [key, value] : r.summary) os << "# " << key << '=' << cell_text(value, false) << '\n';
}

void write_pretty(std::ostream& os, const Result& r) {
  const auto& t = r.table;
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i], true));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - cells[i].size(), ' ') + cells[i];
    }
    os << line << '\n';
  };
  emit(t.columns);
  for (const auto& line : text) emit(line);
  if (!r.summary.empty()) os << '\n';
  for (const auto& [key, value] : r.summary) os << key << ": " << cell_text(value, true) << '\n';
}

void write_json(std::ostream& os, const RunConfig& config, const Result& r) {
  json j;
  j["params"] = config_json_value(config);
  j["modes"] = r.table_is_report ? json::array() : table_json(r.table);
  j["energies"] = r.energies;
  j["report"] = r.report;
  if (r.table_is_report) j["report"]["checks"] = table_json(r.table);
  os << j.dump(2) << '\n';
}

void write_result(std::ostream& os, const RunConfig& config, const Result& r) {
  switch (config.format) {
    case OutputFormat::kCsv:
      write_csv(os, r);
      break;
    case OutputFormat::kPretty:
      write_pretty(os, r);
      break;
    case OutputFormat::kJson:
      write_json(os, config, r);
      break;
  }
}

json oracle_json(const OracleReport& o, double tol) {
  return {{"max_relative_error", o.max_relative_error},
          {"pairing_defect", o.pairing_defect},
          {"zero_mode_count", o.zero_mode_count},
          {"multiplicities_match", o.multiplicities_match},
          {"tol", tol},
          {"passed", o.passed}};
}

// Oracle frequencies come sorted in triples; hand them to modes in the order of
// the analytic frequencies (degenerate modes a, N − a share a value anyway).
std::vector<double> oracle_by_mode(const OracleReport& o, const std::vector<double>& exact) {
  std::vector<std::size_t> order(exact.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exact[a] < exact[b]; });
  std::vector<double> out(exact.size(), 0.0);
  for (std::size_t r = 0; r < order.size() && 3 * r + 2 < o.oracle_frequencies.size(); ++r) {
    const auto* f = &o.oracle_frequencies[3 * r];
    out[order[r]] = (f[0] + f[1] + f[2]) / 3.0;
  }
  return out;
}

struct ModeColumns {
  ModeSpectrum exact;
  ModeSpectrum rederived;
  ModeSpectrum verbatim;
  std::optional<OracleReport> oracle;
  std::vector<double> oracle_per_mode;
};

ModeColumns mode_columns(const ModelParams& m, bool verify, double tol) {
  ModeColumns c{mode_frequencies_exact(m), mode_frequencies_expanded(m, ExpansionVariant::kRederived),
                mode_frequencies_expanded(m, ExpansionVariant::kVerbatim), std::nullopt, {}};
  if (verify) {
    c.oracle = cross_validate(m, tol);
    c.oracle_per_mode = oracle_by_mode(*c.oracle, c.exact.frequencies);
  }
  return c;
}

std::vector<std::string> mode_header(bool verify) {
  std::vector<std::string> h{"a", "sin2", "omega_exact", "omega_rederived", "omega_verbatim"};
  if (verify) h.emplace_back("omega_oracle");
  return h;
}

std::vector<Cell> mode_row(const ModeColumns& c, int n, int a) {
  const auto i = static_cast<std::size_t>(a - 1);
  std::vector<Cell> row{static_cast<long>(a), mode_sin_sq(a, n), c.exact.frequencies[i], c.rederived.frequencies[i],
                        c.verbatim.frequencies[i]};
  if (c.oracle) row.emplace_back(c.oracle_per_mode[i]);
  return row;
}

Result cmd_spectrum(const RunConfig& config) {
  const ModelParams& m = config.model;
  const ModeColumns c = mode_columns(m, config.verify, config.tol);
  Result r;
  r.table.columns = mode_header(config.verify);
  for (int a = 1; a <= m.particle_count; ++a) r.table.rows.push_back(mode_row(c, m.particle_count, a));
  const double ground = c.exact.ground_energy();
  r.summary.emplace_back("ground_energy", ground);
  r.energies = {{"ground", ground}};
  if (c.exact.auxiliary_offset != 0.0) {
    r.summary.emplace_back("auxiliary_offset", c.exact.auxiliary_offset);
    r.energies["auxiliary_offset"] = c.exact.auxiliary_offset;
  }
  if (c.oracle) {
    r.report = oracle_json(*c.oracle, config.tol);
    r.passed = c.oracle->passed;
    r.summary.emplace_back("oracle_max_relative_error", c.oracle->max_relative_error);
    r.summary.emplace_back("oracle", std::string(r.passed ? "pass" : "fail"));
  }
  return r;
}

Result cmd_energy(const RunConfig& config) {
  const ModelParams& m = config.model;
  const EnergyQuery query = parse_quanta(config.quanta);
  const ModeSpectrum s = mode_frequencies_exact(m);
  const double total = energy_levels(s, query);
  Result r;
  r.table.columns = {"a", "omega", "n1", "n2", "n3", "energy"};
  json per_mode = json::array();
  for (int a = 1; a <= m.particle_count; ++a) {
    std::array<unsigned, 3> n{};
    if (auto it = query.quanta.find(a); it != query.quanta.end()) n = it->second;
    const double w = s.frequencies[static_cast<std::size_t>(a - 1)];
    const double e = s.hbar * w * (static_cast<double>(n[0]) + n[1] + n[2] + 1.5);
    r.table.rows.push_back({static_cast<long>(a), w, static_cast<long>(n[0]), static_cast<long>(n[1]),
                            static_cast<long>(n[2]), e});
  }
  r.summary.emplace_back("energy", total);
  r.energies = {{"total", total}, {"ground", s.ground_energy()}};
  if (s.auxiliary_offset != 0.0) {
    r.summary.emplace_back("auxiliary_offset", s.auxiliary_offset);
    r.energies["auxiliary_offset"] = s.auxiliary_offset;
  }
  return r;
}

// Operator-level suites need tensors; a moments-only config is checked with unit constants.
ModelParams operator_model(const ModelParams& m, bool& substituted) {
  ModelParams out = m;
  substituted = m.moments_override.has_value();
  if (substituted) {
    out.moments_override.reset();
    out.nc.constants = UniformConstants{Rational(1), Rational(1)};
  }
  return out;
}

void add_check(Result& r, const std::string& suite, const std::string& check, Cell count, Cell error, bool ok) {
  r.table.rows.push_back({suite, check, std::move(count), std::move(error), std::string(ok ? "pass" : "fail")});
  r.passed = r.passed && ok;
}

void suite_algebra(const RunConfig& config, Result& r) {
  bool substituted = false;
  const ModelParams m = operator_model(config.model, substituted);
  const std::vector<Rational> masses(static_cast<std::size_t>(m.particle_count), m.mass);
  const VerificationReport v = verify_nc_relations(m.nc, m.particle_count, masses);
  const std::string label = substituted ? "bopp relations (unit constants)" : "bopp relations";
  add_check(r, "algebra", label, static_cast<long>(v.checked), static_cast<long>(v.failures.size()), v.passed());
  for (const auto& f : v.failures) {
    std::ostringstream os;
    os << f.relation << " n=" << f.particle_n << " m=" << f.particle_m << " i=" << f.axis_i << " j=" << f.axis_j;
    add_check(r, "algebra", os.str(), 1L, f.value.to_string(), false);
  }
}

void suite_average(const RunConfig& config, Result& r) {
  bool substituted = false;
  const ModelParams m = operator_model(config.model, substituted);
  const std::string note = substituted ? " (unit constants)" : "";
  const OperatorPoly h = build_chain_hamiltonian(m);
  add_check(r, "average", "H_s hermitian" + note, static_cast<long>(h.size()), static_cast<long>((adjoint(h) - h).size()),
            adjoint(h) == h);
  const OperatorPoly dh = delta_hamiltonian(m);
  const OperatorPoly avg = vacuum_expectation(dh);
  add_check(r, "average", "<dH> = 0" + note, static_cast<long>(dh.size()), static_cast<long>(avg.size()), avg.is_zero());
  const OperatorPoly diff = delta_hamiltonian_explicit(m) - dh;
  add_check(r, "average", "dH explicit form" + note, static_cast<long>(dh.size()), static_cast<long>(diff.size()),
            diff.is_zero());
  try {
    const EffectiveHamiltonian eh = effective_hamiltonian(m);
    add_check(r, "average", "<H_s> form = template" + note, static_cast<long>(eh.form.dimension()), 0L, true);
  } catch (const InternalConsistencyError& e) {
    add_check(r, "average", "<H_s> form = template" + note, 0L, std::string(e.what()), false);
  } catch (const ConfigError& e) {
    r.table.rows.push_back({std::string("average"), "<H_s> form = template" + note, 0L, std::string(e.what()),
                            std::string("skipped")});
  }
}

void suite_oracle(const RunConfig& config, Result& r) {
  const OracleReport o = cross_validate(config.model, config.tol);
  add_check(r, "oracle", "config point", static_cast<long>(o.oracle_frequencies.size()), o.max_relative_error,
            o.passed);
  std::mt19937_64 rng(config.seed);
  double worst = 0.0;
  int failed = 0;
  for (int s = 0; s < config.samples; ++s) {
    const ModelParams p = sample_model(rng, 16);
    const OracleReport q = cross_validate(p, config.tol);
    worst = std::max(worst, q.max_relative_error);
    if (!q.passed) {
      ++failed;
      std::ostringstream os;
      os << "sample " << s << " N=" << p.particle_count << " m=" << p.mass << " omega=" << p.omega
         << " k=" << p.coupling << " theta_sq=" << p.moments_override->theta_sq
         << " eta_sq=" << p.moments_override->eta_sq;
      add_check(r, "oracle", os.str(), static_cast<long>(q.oracle_frequencies.size()), q.max_relative_error, false);
    }
  }
  add_check(r, "oracle", "random sweep seed=" + std::to_string(config.seed), static_cast<long>(config.samples), worst,
            failed == 0);
}

Result cmd_verify(const RunConfig& config, const std::string& suite) {
  Result r;
  r.table_is_report = true;
  r.table.columns = {"suite", "check", "count", "error", "status"};
  if (suite == "algebra" || suite == "all") suite_algebra(config, r);
  if (suite == "average" || suite == "all") suite_average(config, r);
  if (suite == "oracle" || suite == "all") suite_oracle(config, r);
  r.report = {{"suite", suite}, {"passed", r.passed}};
  r.summary.emplace_back("passed", std::string(r.passed ? "true" : "false"));
  return r;
}

Result cmd_sweep(const RunConfig& config) {
  if (!config.sweep) throw ConfigError("sweep needs param, from, to and steps (flags or the config 'sweep' object)");
  const SweepSpec& spec = *config.sweep;
  Result r;
  r.table.columns = {"point", spec.param};
  for (const auto& h : mode_header(config.verify)) r.table.columns.push_back(h);
  r.table.columns.emplace_back("ground_energy");
  json grounds = json::array();
  double worst = 0.0;
  const auto points = spec.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ModelParams m = apply_sweep_value(config.model, spec.param, points[i]);
    const ModeColumns c = mode_columns(m, config.verify, config.tol);
    const double ground = c.exact.ground_energy();
    for (int a = 1; a <= m.particle_count; ++a) {
      std::vector<Cell> row{static_cast<long>(i), to_double(points[i])};
      for (auto& cell : mode_row(c, m.particle_count, a)) row.push_back(std::move(cell));
      row.emplace_back(ground);
      r.table.rows.push_back(std::move(row));
    }
    grounds.push_back({{"point", i}, {"value", to_double(points[i])}, {"ground", ground}});
    if (c.oracle) {
      worst = std::max(worst, c.oracle->max_relative_error);
      r.passed = r.passed && c.oracle->passed;
    }
  }
  r.energies = {{"ground", std::move(grounds)}};
  if (config.verify) {
    r.report = {{"points", points.size()}, {"max_relative_error", worst}, {"tol", config.tol}, {"passed", r.passed}};
    r.summary.emplace_back("oracle_max_relative_error", worst);
    r.summary.emplace_back("oracle", std::string(r.passed ? "pass" : "fail"));
  }
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Flag name, config key.
constexpr std::array<std::pair<const char*, const char*>, 13> kModelFlags{{
    {"-N,--particles", "N"},
    {"-m,--mass", "m"},
    {"--omega", "omega"},
    {"-k,--coupling", "k"},
    {"--hbar", "hbar"},
    {"--planck-length", "planck_length"},
    {"--omega-osc", "omega_osc"},
    {"--c-theta", "c_theta"},
    {"--c-eta", "c_eta"},
    {"--gamma-tilde", "gamma_tilde"},
    {"--alpha-tilde", "alpha_tilde"},
    {"--theta-sq", "theta_sq"},
    {"--eta-sq", "eta_sq"},
}};

int group_index(const std::string& key) {
  if (key == "c_theta" || key == "c_eta") return 1;
  if (key == "gamma_tilde" || key == "alpha_tilde") return 2;
  if (key == "theta_sq" || key == "eta_sq") return 3;
  return 0;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal modes of a harmonic-oscillator chain in noncommutative phase space", "ncchain"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  std::array<std::string, kModelFlags.size()> model_values;
  std::array<CLI::Option*, kModelFlags.size()> model_options{};
  for (std::size_t i = 0; i < kModelFlags.size(); ++i)
    model_options[i] = app.add_option(kModelFlags[i].first, model_values[i],
                                      std::string("config key ") + kModelFlags[i].second + " (number or p/q)");
  std::string format, tol, seed, samples;
  auto* format_opt = app.add_option("--format", format, "csv, json or pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));
  auto* tol_opt = app.add_option("--tol", tol, "oracle tolerance (default 1e-9)");
  auto* seed_opt = app.add_option("--seed", seed, "seed of the random oracle sweep");
  auto* samples_opt = app.add_option("--samples", samples, "points in the random oracle sweep (default 200)");
  bool verify_flag = false;
  app.add_flag("--verify", verify_flag, "add the symplectic oracle column");

  auto* spectrum = app.add_subcommand("spectrum", "mode frequencies and ground energy");
  auto* energy = app.add_subcommand("energy", "energy of a state given by mode occupations");
  std::string quanta;
  auto* quanta_opt = energy->add_option("quanta", quanta, "occupations as a:n1,n2,n3;... (empty: ground state)");
  auto* verify = app.add_subcommand("verify", "exact algebra, averaging and oracle checks");
  std::string suite = "all";
  verify->add_option("suite", suite, "algebra, average, oracle or all")
      ->check(CLI::IsMember({"algebra", "average", "oracle", "all"}));
  auto* sweep = app.add_subcommand("sweep", "spectrum over a parameter range");
  std::string sweep_param, sweep_from, sweep_to, sweep_steps;
  auto* param_opt = sweep->add_option("--param", sweep_param, "k, omega, m, theta_sq, eta_sq or N");
  auto* from_opt = sweep->add_option("--from", sweep_from, "first value");
  auto* to_opt = sweep->add_option("--to", sweep_to, "last value");
  auto* steps_opt = sweep->add_option("--steps", sweep_steps, "number of points (>= 2)");

  std::vector<std::string> argv_storage{"ncchain"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nrun 'ncchain --help' for usage\n";
    return kExitUsage;
  }

  try {
    json merged = json::object();
    if (!config_path.empty()) {
      json root;
      try {
        root = json::parse(read_file(config_path));
      } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      merged = config_object(root);
    }
    int flag_group = 0;
    for (std::size_t i = 0; i < kModelFlags.size(); ++i) {
      if (model_options[i]->count() == 0) continue;
      const std::string key = kModelFlags[i].second;
      if (const int g = group_index(key)) {
        if (flag_group && flag_group != g) throw ConfigError("flags mix different noncommutativity constant groups");
        flag_group = g;
      }
      merge_override(merged, key, model_values[i]);
    }
    if (format_opt->count()) merged["format"] = format;
    if (tol_opt->count()) merged["tol"] = tol;
    if (seed_opt->count()) merged["seed"] = seed;
    if (samples_opt->count()) merged["samples"] = samples;
    if (verify_flag) merged["verify"] = true;
    if (quanta_opt->count()) merged["quanta"] = quanta;
    const std::array<std::pair<CLI::Option*, std::pair<const char*, std::string*>>, 4> sweep_flags{{
        {param_opt, {"param", &sweep_param}},
        {from_opt, {"from", &sweep_from}},
        {to_opt, {"to", &sweep_to}},
        {steps_opt, {"steps", &sweep_steps}},
    }};
    for (const auto& [opt, entry] : sweep_flags) {
      if (!opt->count()) continue;
      if (!merged.contains("sweep") || !merged["sweep"].is_object()) merged["sweep"] = json::object();
      merged["sweep"][entry.first] = *entry.second;
    }

    const RunConfig config = config_from_json(merged);
    Result result;
    if (*spectrum) {
      result = cmd_spectrum(config);
    } else if (*energy) {
      result = cmd_energy(config);
    } else if (*verify) {
      result = cmd_verify(config, suite);
    } else {
      result = cmd_sweep(config);
    }
    std::ostringstream buffer;
    write_result(buffer, config, result);
    out << buffer.str();
    return result.passed ? kExitOk : kExitVerificationFailed;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const InternalConsistencyError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ncchain::cli
