#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ncchain/scalar.hpp"
#include "ncchain/weyl_algebra.hpp"

namespace ncchain {

/// Same dimensionless c_θ, c_η for every particle.
struct UniformConstants {
  Rational c_theta{0};
  Rational c_eta{0};
};

/// Explicit c_θ⁽ⁿ⁾, c_η⁽ⁿ⁾ per particle (index 0 is particle 1).
struct PerParticleConstants {
  std::vector<Rational> c_theta;
  std::vector<Rational> c_eta;
};

/// Mass-determined constants: c_θ⁽ⁿ⁾ mₙ = γ̃ and c_η⁽ⁿ⁾ / mₙ = α̃.
struct MassScaledConstants {
  Rational gamma_tilde{0};
  Rational alpha_tilde{0};
};

using NcConstants = std::variant<UniformConstants, PerParticleConstants, MassScaledConstants>;

/// Noncommutativity configuration. hbar is in action units, planck_length in
/// length units; the c constants are dimensionless.
struct NcParams {
  Rational hbar{1};
  Rational planck_length{1};
  NcConstants constants{UniformConstants{}};

  void validate() const;

  /// c_θ⁽ⁿ⁾ and c_η⁽ⁿ⁾ for particle n (1-based) of mass m.
  std::pair<Rational, Rational> constants_for(int particle, const Rational& mass) const;
};

/// Operator-valued tensors of one particle:
///   θ_ij = (c_θ l_P²/ħ) Σ_k ε_ijk ã_k,   η_ij = (c_η ħ/l_P²) Σ_k ε_ijk p̃ᵇ_k.
/// Vector components θ_i = Σ_jk ε_ijk θ_jk / 2, so θ_i = (c_θ l_P²/ħ) ã_i.
struct NcTensors {
  Rational theta_scale;
  Rational eta_scale;
  std::array<OperatorPoly, 3> theta_vec;
  std::array<OperatorPoly, 3> eta_vec;
  std::array<std::array<OperatorPoly, 3>, 3> theta_mat;
  std::array<std::array<OperatorPoly, 3>, 3> eta_mat;

  friend bool operator==(const NcTensors& a, const NcTensors& b) {
    return a.theta_vec == b.theta_vec && a.eta_vec == b.eta_vec && a.theta_mat == b.theta_mat &&
           a.eta_mat == b.eta_mat;
  }
};

/// Levi-Civita symbol on 1-based axes.
int levi_civita(int i, int j, int k);

NcTensors build_tensors(const WeylAlgebra& algebra, const NcParams& params, int particle, const Rational& mass);

/// Tensors built directly from the vector scales θ_i = s_θ ã_i, η_i = s_η p̃ᵇ_i.
NcTensors tensors_from_scales(const WeylAlgebra& algebra, const Rational& theta_scale, const Rational& eta_scale);

struct PhaseSpaceOperators {
  std::array<OperatorPoly, 3> X;
  std::array<OperatorPoly, 3> P;
};

/// Bopp-shift representation of particle n:
///   X_i = x_i + ½ [θ × p]_i,   P_i = p_i + ½ [x × η]_i.
PhaseSpaceOperators bopp_shift(const WeylAlgebra& algebra, int particle, const NcTensors& tensors);

struct Residual {
  std::string relation;  // "[X,X]", "[P,P]" or "[X,P]"
  int particle_n = 0;
  int particle_m = 0;
  int axis_i = 0;
  int axis_j = 0;
  OperatorPoly value;
};

struct VerificationReport {
  std::size_t checked = 0;
  std::vector<Residual> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks exactly, for all particle pairs (n, m) and axes (i, j), that
///   [X_i⁽ⁿ⁾, X_j⁽ᵐ⁾] = iħ δ_nm θ_ij⁽ⁿ⁾
///   [P_i⁽ⁿ⁾, P_j⁽ᵐ⁾] = iħ δ_nm η_ij⁽ⁿ⁾
///   [X_i⁽ⁿ⁾, P_j⁽ᵐ⁾] = iħ δ_nm (δ_ij + Σ_k θ_ik⁽ⁿ⁾ η_jk⁽ᵐ⁾ / 4)
/// together with [θ_ij, x_k] = [θ_ij, p_k] = [η_ij, x_k] = [η_ij, p_k] = 0.
/// Masses default to 1 for every particle when empty.
VerificationReport verify_nc_relations(const NcParams& params, int particle_count,
                                       std::span<const Rational> masses = {});

}  // namespace ncchain
