#pragma once

#include <array>
#include <map>
#include <vector>

#include "ncchain/effective_model.hpp"

namespace ncchain {

/// Mode frequencies ω_a, a = 1..N (each triply degenerate in space).
struct ModeSpectrum {
  std::vector<double> frequencies;  // index a−1
  double hbar = 1.0;
  /// 3ħω_osc when the auxiliary oscillator frequency is known, else 0.
  double auxiliary_offset = 0.0;

  /// (3/2) ħ Σ_a ω_a (+ auxiliary offset).
  double ground_energy() const;
};

/// sin²(πa/N), evaluated on the reduced angle min(a mod N, N − a mod N) so that
/// a = N is exactly 0 and the a ↔ N − a symmetry is exact.
double mode_sin_sq(int a, int particle_count);

/// ω_a² = (ω_eff² + (8k/m_eff) s_a)(1 + (4k m_eff <θ²>/3) s_a), s_a = sin²(πa/N).
/// Throws DomainError naming the mode on a negative radicand.
ModeSpectrum mode_frequencies_exact(const ModelParams& params);

enum class ExpansionVariant {
  /// The expanded frequency formula in its originally stated form, including its (4k²m<θ²>/3)s cross term.
  kVerbatim,
  /// First-order expansion of the exact product in <θ²>, <η²>.
  kRederived,
};

ModeSpectrum mode_frequencies_expanded(const ModelParams& params, ExpansionVariant variant);

/// Squared frequencies of each variant, exposed for the term-by-term comparison.
std::vector<double> mode_frequencies_sq_exact(const ModelParams& params);
std::vector<double> mode_frequencies_sq_expanded(const ModelParams& params, ExpansionVariant variant);

enum class SpecialCase {
  /// ω = 0: ω_a² = (8k/m)s + <η²>/6m² + (32k²<θ²>/3)s².
  kOmegaZero,
  /// ω = 0 and <η²> = 0: ω_a² = (8k/m)s + (32k²<θ²>/3)s².
  kEtaZero,
  /// ω = 0: the a = N mode alone, ω_N = √(<η²>/6m²).
  kCenterOfMass,
};

/// Special-case closed forms. kCenterOfMass returns a one-entry spectrum.
/// Throws ConfigError when params do not satisfy the case.
ModeSpectrum special_case_frequencies(const ModelParams& params, SpecialCase which);

double center_of_mass_frequency(const ModelParams& params);

/// Quantum numbers (n₁, n₂, n₃) per mode; unspecified modes are in the ground state.
struct EnergyQuery {
  std::map<int, std::array<unsigned, 3>> quanta;
};

/// E = Σ_a ħω_a (n₁⁽ᵃ⁾ + n₂⁽ᵃ⁾ + n₃⁽ᵃ⁾ + 3/2) (+ 3ħω_osc when known).
double energy_levels(const ModelParams& params, const EnergyQuery& query);

/// Same, from an already computed spectrum. Throws ConfigError on unknown modes.
double energy_levels(const ModeSpectrum& spectrum, const EnergyQuery& query);

}  // namespace ncchain
