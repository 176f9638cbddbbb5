#pragma once

#include "ncchain/nc_algebra.hpp"
#include "ncchain/scalar.hpp"
#include "ncchain/weyl_algebra.hpp"

namespace ncchain {

/// Ground-state two-point functions of the auxiliary oscillators
/// H = ħω(p̃²/2 + ã²/2) with [ã_i, p̃_j] = iδ_ij (and likewise for b̃, p̃ᵇ):
///   <ã_i ã_j> = <p̃ᵃ_i p̃ᵃ_j> = δ_ij/2,   <ã_i p̃ᵃ_j> = iδ_ij/2,   <p̃ᵃ_i ã_j> = −iδ_ij/2.
/// First moments vanish and the a- and b-systems are uncorrelated.
struct MomentTable {
  static Complex two_point(const Generator& first, const Generator& second);
};

/// Largest auxiliary degree accepted by vacuum_expectation.
inline constexpr int kMaxWickDegree = 8;

/// Partial expectation <...>_ab over the auxiliary ground states, by Wick pairing.
/// Returns a polynomial in principal generators only. Throws UnsupportedDegreeError
/// when a monomial carries more than max_aux_degree auxiliary generators.
OperatorPoly vacuum_expectation(const OperatorPoly& poly, int max_aux_degree = kMaxWickDegree);

/// <θ²> (length⁴/action²) and <η²> (action²/length⁴).
struct Moments {
  Rational theta_sq{0};
  Rational eta_sq{0};

  friend bool operator==(const Moments& a, const Moments& b) {
    return a.theta_sq == b.theta_sq && a.eta_sq == b.eta_sq;
  }
};

/// <θ²> = 3 c_θ² l_P⁴ / (2ħ²),  <η²> = 3 ħ² c_η² / (2 l_P⁴), for the particle
/// constants selected by params (mass is only consulted in mass-scaled mode).
Moments theta_eta_moments(const NcParams& params, int particle = 1, const Rational& mass = Rational(1));

/// Moments implied by explicit vector scales θ_i = s_θ ã_i, η_i = s_η p̃ᵇ_i.
Moments moments_from_scales(const Rational& theta_scale, const Rational& eta_scale);

}  // namespace ncchain
