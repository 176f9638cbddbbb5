#include "ncchain/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ncchain/errors.hpp"

namespace ncchain {

namespace {

struct Inputs {
  double m, omega, k, theta_sq, eta_sq;
};

Inputs inputs_of(const ModelParams& params, const Moments& mom) {
  return {to_double(params.mass), to_double(params.omega), to_double(params.coupling), to_double(mom.theta_sq),
          to_double(mom.eta_sq)};
}

ModeSpectrum spectrum_from_squares(const ModelParams& params, const std::vector<double>& squares) {
  ModeSpectrum out;
  out.hbar = to_double(params.nc.hbar);
  if (params.omega_osc) out.auxiliary_offset = 3.0 * out.hbar * to_double(*params.omega_osc);
  out.frequencies.reserve(squares.size());
  for (std::size_t a = 0; a < squares.size(); ++a) {
    if (!(squares[a] >= 0.0))
      throw DomainError("negative squared frequency " + std::to_string(squares[a]) + " for mode " +
                        std::to_string(a + 1));
    out.frequencies.push_back(std::sqrt(squares[a]));
  }
  return out;
}

void require_zero(const Rational& value, const char* what) {
  if (sgn(value) != 0) throw ConfigError(std::string("special case requires ") + what + " = 0");
}

}  // namespace

double ModeSpectrum::ground_energy() const {
  return 1.5 * hbar * std::accumulate(frequencies.begin(), frequencies.end(), 0.0) + auxiliary_offset;
}

double mode_sin_sq(int a, int particle_count) {
  if (particle_count < 1) throw std::invalid_argument("particle count must be >= 1");
  int r = a % particle_count;
  if (r < 0) r += particle_count;
  r = std::min(r, particle_count - r);
  const double s = std::sin(std::numbers::pi * r / particle_count);
  return s * s;
}

std::vector<double> mode_frequencies_sq_exact(const ModelParams& params) {
  const Moments mom = params.moments();
  const EffectiveParams eff = effective_params(params.mass, params.omega, mom);
  const double m_eff = to_double(eff.m_eff);
  const double w_eff_sq = to_double(eff.omega_eff_sq);
  const double k = to_double(params.coupling);
  const double theta_sq = to_double(mom.theta_sq);
  std::vector<double> out;
  for (int a = 1; a <= params.particle_count; ++a) {
    const double s = mode_sin_sq(a, params.particle_count);
    out.push_back((w_eff_sq + 8.0 * k / m_eff * s) * (1.0 + 4.0 * k * m_eff * theta_sq / 3.0 * s));
  }
  return out;
}

std::vector<double> mode_frequencies_sq_expanded(const ModelParams& params, ExpansionVariant variant) {
  const auto in = inputs_of(params, params.moments());
  const double w2 = in.omega * in.omega;
  const double eta_term = in.eta_sq / (6.0 * in.m * in.m);
  const double dressing = in.m * in.m * w2 * in.theta_sq / 6.0;
  std::vector<double> out;
  for (int a = 1; a <= params.particle_count; ++a) {
    const double s = mode_sin_sq(a, params.particle_count);
    const double bond = 8.0 * in.k / in.m * s;
    double value = 0.0;
    if (variant == ExpansionVariant::kVerbatim) {
      value = (w2 + eta_term) * (1.0 + dressing + 4.0 * in.k * in.k * in.m * in.theta_sq / 3.0 * s) + bond +
              32.0 * in.k * in.k * in.theta_sq / 3.0 * s * s;
    } else {
      // exact: (ω² + <η²>/6m² + 8ks/m)(1 + m²ω²<θ²>/6 + 4km<θ²>s/3); drop the <η²><θ²> part
      value = (w2 + bond) * (1.0 + dressing + 4.0 * in.k * in.m * in.theta_sq / 3.0 * s) + eta_term;
    }
    out.push_back(value);
  }
  return out;
}

ModeSpectrum mode_frequencies_exact(const ModelParams& params) {
  return spectrum_from_squares(params, mode_frequencies_sq_exact(params));
}

ModeSpectrum mode_frequencies_expanded(const ModelParams& params, ExpansionVariant variant) {
  return spectrum_from_squares(params, mode_frequencies_sq_expanded(params, variant));
}

ModeSpectrum special_case_frequencies(const ModelParams& params, SpecialCase which) {
  const Moments mom = params.moments();
  require_zero(params.omega, "omega");
  const auto in = inputs_of(params, mom);
  if (which == SpecialCase::kCenterOfMass) {
    std::vector<double> squares{in.eta_sq / (6.0 * in.m * in.m)};
    return spectrum_from_squares(params, squares);
  }
  if (which == SpecialCase::kEtaZero) require_zero(mom.eta_sq, "<eta^2>");
  std::vector<double> squares;
  for (int a = 1; a <= params.particle_count; ++a) {
    const double s = mode_sin_sq(a, params.particle_count);
    double value = 8.0 * in.k / in.m * s + 32.0 * in.k * in.k * in.theta_sq / 3.0 * s * s;
    if (which == SpecialCase::kOmegaZero) value += in.eta_sq / (6.0 * in.m * in.m);
    squares.push_back(value);
  }
  return spectrum_from_squares(params, squares);
}

double center_of_mass_frequency(const ModelParams& params) {
  return special_case_frequencies(params, SpecialCase::kCenterOfMass).frequencies.front();
}

double energy_levels(const ModeSpectrum& spectrum, const EnergyQuery& query) {
  const auto count = static_cast<int>(spectrum.frequencies.size());
  for (const auto& [a, n] : query.quanta) {
    if (a < 1 || a > count)
      throw ConfigError("mode index " + std::to_string(a) + " outside 1.." + std::to_string(count));
  }
  double energy = spectrum.auxiliary_offset;
  for (int a = 1; a <= count; ++a) {
    double occupation = 1.5;
    if (auto it = query.quanta.find(a); it != query.quanta.end())
      occupation += static_cast<double>(it->second[0]) + it->second[1] + it->second[2];
    energy += spectrum.hbar * spectrum.frequencies[static_cast<std::size_t>(a - 1)] * occupation;
  }
  return energy;
}

double energy_levels(const ModelParams& params, const EnergyQuery& query) {
  return energy_levels(mode_frequencies_exact(params), query);
}

}  // namespace ncchain
