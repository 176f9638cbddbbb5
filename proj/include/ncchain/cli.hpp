#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncchain/effective_model.hpp"
#include "ncchain/spectrum.hpp"
#include "ncchain/symplectic_oracle.hpp"

namespace ncchain::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitVerificationFailed = 2,
  kExitDomainError = 3,
};

enum class OutputFormat { kCsv, kJson, kPretty };

/// Parameter sweep over `steps` evenly spaced points from `from` to `to` inclusive.
struct SweepSpec {
  std::string param;  // k, omega, m, theta_sq, eta_sq or N
  Rational from{0};
  Rational to{0};
  int steps = 0;

  void validate() const;
  std::vector<Rational> points() const;
};

/// Everything a run needs. Config files are JSON objects with the keys
///   N, m, omega, k, hbar, planck_length, omega_osc,
///   c_theta, c_eta  |  gamma_tilde, alpha_tilde  |  theta_sq, eta_sq,
///   format, tol, seed, samples, verify, quanta, sweep {param, from, to, steps}.
/// At most one of the three constant groups may appear; none means the
/// commutative chain. Numbers may be JSON numbers (read as the decimal they
/// print as) or strings such as "3/2" for exact rationals.
struct RunConfig {
  ModelParams model;
  OutputFormat format = OutputFormat::kCsv;
  double tol = kDefaultOracleTolerance;
  std::uint64_t seed = 1;
  int samples = 200;
  bool verify = false;
  std::string quanta;
  std::optional<SweepSpec> sweep;

  void validate() const;
};

/// Reads a config object, or the "params" object of a previous JSON output.
RunConfig parse_config(std::string_view json_text);

/// The config in the schema parse_config reads, with exact rationals as strings.
std::string config_to_json(const RunConfig& config);

/// Copy of model with one swept parameter set. Sweeping a moment on a model
/// without an override first pins both moments to their current values.
ModelParams apply_sweep_value(const ModelParams& model, const std::string& param, const Rational& value);

/// Parses "a:n1,n2,n3;..." (empty means the ground state). Errors name the token.
EnergyQuery parse_quanta(std::string_view spec);

/// Shortest round-trip decimal form, independent of locale.
std::string format_double(double value);

/// Runs the command line args (without the program name); returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncchain::cli
