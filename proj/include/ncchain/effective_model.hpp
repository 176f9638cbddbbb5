#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "ncchain/gaussian_moments.hpp"
#include "ncchain/nc_algebra.hpp"
#include "ncchain/scalar.hpp"
#include "ncchain/weyl_algebra.hpp"

namespace ncchain {

/// Closed periodic chain of N equal-mass oscillators with nearest-neighbour
/// coupling k (X⁽ᴺ⁺¹⁾ = X⁽¹⁾). mass, omega and coupling are exact rationals.
/// When moments_override is set the spectrum path uses it directly and
/// ignores the c_θ/c_η constants in nc; operator-level builders then reject.
struct ModelParams {
  int particle_count = 1;
  Rational mass{1};
  Rational omega{0};
  Rational coupling{0};
  NcParams nc;
  std::optional<Moments> moments_override;
  /// Auxiliary oscillator frequency; only used to report the 3ħω_osc offset.
  std::optional<Rational> omega_osc;

  void validate() const;

  /// <θ²>, <η²> for the chain. Without an override every particle must carry
  /// identical tensors (the spectrum assumes a single θ, η pair).
  Moments moments() const;
};

/// Bopp-shifted X⁽ⁿ⁾, P⁽ⁿ⁾ for every particle, n = 1..N.
std::vector<PhaseSpaceOperators> chain_operators(const WeylAlgebra& algebra, const ModelParams& params);

/// H_s = Σ P²/2m + Σ mω²X²/2 + k Σ (X⁽ⁿ⁺¹⁾ − X⁽ⁿ⁾)² in Bopp-shifted variables.
OperatorPoly build_chain_hamiltonian(const ModelParams& params);

/// The nine-term expansion of H_s in canonical variables, assembled term by term:
/// kinetic, potential, coupling, −η·[x×p]/2m, −mω²θ·[x×p]/2, −kθ·[Δx×Δp],
/// [η×x]²/8m, mω²[θ×p]²/8, (k/4)[θ×Δp]².
OperatorPoly expanded_hamiltonian(const ModelParams& params);

/// <H_s>_ab, a polynomial in principal generators only.
OperatorPoly averaged_hamiltonian(const ModelParams& params);

/// ΔH = H_s − <H_s>_ab.
OperatorPoly delta_hamiltonian(const ModelParams& params);

/// ΔH written out explicitly as nine terms (averaged counter-terms included),
/// with the difference in the θ·[Δx×Δp] term taken as p⁽ⁿ⁺¹⁾ − p⁽ⁿ⁾.
OperatorPoly delta_hamiltonian_explicit(const ModelParams& params);

struct EffectiveParams {
  Rational m_eff;
  Rational omega_eff_sq;

  double omega_eff() const;
};

/// m_eff = m (1 + m²ω²<θ²>/6)⁻¹,  ω_eff² = (ω² + <η²>/6m²)(1 + m²ω²<θ²>/6).
EffectiveParams effective_params(const Rational& mass, const Rational& omega, const Moments& moments);

/// H = ½ zᵀ M z + offset with z = (x⁽¹⁾₁, x⁽¹⁾₂, x⁽¹⁾₃, …, x⁽ᴺ⁾₃, p⁽¹⁾₁, …, p⁽ᴺ⁾₃)
/// and symmetric (Weyl) ordering of the bilinears.
class QuadraticForm {
 public:
  explicit QuadraticForm(int particle_count);

  int particle_count() const { return particle_count_; }
  std::size_t dimension() const { return dim_; }

  std::size_t position_index(int particle, int axis) const;
  std::size_t momentum_index(int particle, int axis) const;

  const Rational& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  const Rational& offset() const { return offset_; }

  /// Adds v to M(row, col) and, off the diagonal, to M(col, row).
  void add_symmetric(std::size_t row, std::size_t col, const Rational& v);
  void add_offset(const Rational& v) { offset_ += v; }

  bool is_symmetric() const;

  Eigen::MatrixXd matrix() const;
  /// J with J(x_i, p_j) = δ_ij, J(p_i, x_j) = −δ_ij.
  Eigen::MatrixXd symplectic_form() const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.particle_count_ == b.particle_count_ && a.entries_ == b.entries_ && a.offset_ == b.offset_;
  }

 private:
  int particle_count_;
  std::size_t dim_;
  std::vector<Rational> entries_;
  Rational offset_{0};
};

/// Reads a Hermitian polynomial of degree ≤ 2 in x, p of N particles into a form.
/// Throws std::invalid_argument on auxiliary generators, linear or cubic terms,
/// or non-real coefficients.
QuadraticForm extract_quadratic_form(const OperatorPoly& poly, int particle_count);

/// Form of Σ p²/2m_eff + m_eff ω_eff² x²/2 + k Σ(Δx)² + (k/6)<θ²> Σ(Δp)²,
/// assembled directly from the closed-form coefficients.
QuadraticForm effective_template(const ModelParams& params);

struct EffectiveHamiltonian {
  QuadraticForm form;
  EffectiveParams params;
  Moments moments;
};

/// Averages H_s, extracts its quadratic form and checks it against
/// effective_template entrywise (exact). Throws InternalConsistencyError on mismatch.
EffectiveHamiltonian effective_hamiltonian(const ModelParams& params);

}  // namespace ncchain
