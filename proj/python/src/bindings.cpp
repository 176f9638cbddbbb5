// Python bindings. Models are passed as JSON config text in the CLI schema; the
// Python package converts dicts and Fractions before calling in.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "ncchain/cli.hpp"
#include "ncchain/errors.hpp"

namespace py = pybind11;
using namespace ncchain;

namespace {

ModelParams model_of(const std::string& config_json) { return cli::parse_config(config_json).model; }

// Rationals cross the boundary as "p/q" strings; the Python side wraps them in Fraction.
std::string rational_text(const Rational& q) { return q.get_str(); }

std::vector<double> frequencies_of(const std::string& config_json, const std::string& variant) {
  const ModelParams p = model_of(config_json);
  if (variant == "exact") return mode_frequencies_exact(p).frequencies;
  if (variant == "rederived") return mode_frequencies_expanded(p, ExpansionVariant::kRederived).frequencies;
  if (variant == "verbatim") return mode_frequencies_expanded(p, ExpansionVariant::kVerbatim).frequencies;
  throw std::invalid_argument("unknown variant '" + variant + "' (exact, rederived or verbatim)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Harmonic-oscillator chain in noncommutative phase space";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InternalConsistencyError>(m, "InternalConsistencyError", PyExc_RuntimeError);

  m.def("normalize_config", [](const std::string& text) { return cli::config_to_json(cli::parse_config(text)); },
        py::arg("config_json"));

  m.def("frequencies", &frequencies_of, py::arg("config_json"), py::arg("variant") = "exact");

  m.def(
      "ground_energy", [](const std::string& text) { return mode_frequencies_exact(model_of(text)).ground_energy(); },
      py::arg("config_json"));

  m.def(
      "energy",
      [](const std::string& text, const std::string& quanta) {
        return energy_levels(model_of(text), cli::parse_quanta(quanta));
      },
      py::arg("config_json"), py::arg("quanta") = "");

  m.def(
      "moments",
      [](const std::string& text) {
        const Moments mo = model_of(text).moments();
        return py::make_tuple(rational_text(mo.theta_sq), rational_text(mo.eta_sq));
      },
      py::arg("config_json"));

  m.def(
      "effective_params",
      [](const std::string& text) {
        const EffectiveHamiltonian h = effective_hamiltonian(model_of(text));
        return py::make_tuple(rational_text(h.params.m_eff), rational_text(h.params.omega_eff_sq));
      },
      py::arg("config_json"));

  m.def(
      "hessian", [](const std::string& text) { return effective_hamiltonian(model_of(text)).form.matrix(); },
      py::arg("config_json"));

  m.def(
      "oracle",
      [](const std::string& text, double tol) {
        const OracleReport r = cross_validate(model_of(text), tol);
        py::dict d;
        d["oracle_frequencies"] = r.oracle_frequencies;
        d["analytic_frequencies"] = r.analytic_frequencies;
        d["max_relative_error"] = r.max_relative_error;
        d["zero_mode_count"] = r.zero_mode_count;
        d["multiplicities_match"] = r.multiplicities_match;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("config_json"), py::arg("tol") = kDefaultOracleTolerance);

  m.def(
      "verify_relations",
      [](const std::string& text) {
        const ModelParams p = model_of(text);
        const VerificationReport r = verify_nc_relations(p.nc, p.particle_count);
        return py::make_tuple(r.checked, r.failures.size());
      },
      py::arg("config_json"));

  m.def(
      "sample_model",
      [](std::uint64_t seed, int max_particles) {
        std::mt19937_64 rng(seed);
        cli::RunConfig c;
        c.model = sample_model(rng, max_particles);
        return cli::config_to_json(c);
      },
      py::arg("seed"), py::arg("max_particles") = 16);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
