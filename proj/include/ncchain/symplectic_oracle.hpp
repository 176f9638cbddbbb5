#pragma once

#include <Eigen/Core>

#include <random>
#include <vector>

#include "ncchain/effective_model.hpp"

namespace ncchain {

inline constexpr double kDefaultOracleTolerance = 1e-9;

enum class OracleBackend {
  /// General (nonsymmetric) dense eigensolver on S = M^{1/2} J M^{1/2}.
  kGeneral,
  /// Hermitian eigensolver on iS, whose squared spectrum is that of −S².
  kSymmetricReduction,
};

/// Normal-mode data of a quadratic Hamiltonian H = ½ zᵀ M z, z = (x, p).
struct SymplecticSpectrum {
  std::vector<double> frequencies;  // d/2 values, ascending; values below tol·‖M‖ are exactly 0
  double pairing_defect = 0.0;      // relative failure of the eigenvalues to form ±iω pairs
  int zero_mode_count = 0;
};

/// Eigenvalues of J·M occur as ±iω; S = M^{1/2} J M^{1/2} has the same nonzero
/// spectrum but is normal, so zero modes of a free (Jordan) block come out clean.
/// Throws std::invalid_argument for odd dimension, asymmetric or indefinite M.
SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& hessian, double tol = kDefaultOracleTolerance,
                                       OracleBackend backend = OracleBackend::kGeneral);

/// The d/2 frequencies of a quadratic form. Throws InternalConsistencyError when
/// the pairing defect exceeds tol.
std::vector<double> symplectic_frequencies(const QuadraticForm& form, double tol = kDefaultOracleTolerance,
                                           OracleBackend backend = OracleBackend::kGeneral);

/// Frequencies of a translation-invariant chain form via the discrete Fourier
/// transform over the particle index: each mode a and axis reduces to
/// H = αp² + βx² with frequency 2√(αβ). Requires no x–p or cross-axis coupling.
std::vector<double> circulant_frequencies(const QuadraticForm& form);

struct OracleReport {
  std::vector<double> oracle_frequencies;    // ascending, 3N values
  std::vector<double> analytic_frequencies;  // ascending, each ω_a three times
  double max_relative_error = 0.0;
  double pairing_defect = 0.0;
  int zero_mode_count = 0;
  bool multiplicities_match = false;
  bool passed = false;
};

/// effective_hamiltonian → symplectic_spectrum, compared with mode_frequencies_exact.
OracleReport cross_validate(const ModelParams& params, double tol = kDefaultOracleTolerance);

/// Random chain with N ∈ [1, max_particles], m ∈ [1/2, 2], ω, k ∈ [0, 2] and
/// <θ²>, <η²> ∈ [0, 1/10], all on a 10⁻⁶ rational grid. Draws only raw engine
/// output, so a seed gives the same points with every standard library.
ModelParams sample_model(std::mt19937_64& rng, int max_particles);

}  // namespace ncchain
