#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncchain/scalar.hpp"

namespace ncchain {

/// Kinds of canonical generators. The enumerator order is the primary sort key
/// of the canonical monomial order: auxiliary generators sort before principal
/// ones, so every normal-ordered monomial is (auxiliary prefix)(principal suffix).
enum class GeneratorKind : std::uint8_t {
  kAuxA = 0,   // ã
  kAuxPa = 1,  // p̃ᵃ
  kAuxB = 2,   // b̃
  kAuxPb = 3,  // p̃ᵇ
  kPosition = 4,
  kMomentum = 5,
};

/// A single self-adjoint canonical generator. Ordered by (kind, particle, axis).
struct Generator {
  GeneratorKind kind = GeneratorKind::kPosition;
  std::uint16_t particle = 0;  // 1..N for x/p, 0 for auxiliaries
  std::uint8_t axis = 1;       // 1..3

  static Generator position(int particle, int axis);
  static Generator momentum(int particle, int axis);
  static Generator aux_a(int axis);
  static Generator aux_pa(int axis);
  static Generator aux_b(int axis);
  static Generator aux_pb(int axis);

  bool is_auxiliary() const { return kind < GeneratorKind::kPosition; }

  auto operator<=>(const Generator&) const = default;

  std::string to_string() const;
};

using Monomial = std::vector<Generator>;

/// Scalar commutators [g, h] of canonical generators.
///   [x_i^(n), p_j^(m)] = iħ δ_nm δ_ij
///   [ã_i, p̃ᵃ_j] = [b̃_i, p̃ᵇ_j] = i δ_ij   (dimensionless, no ħ)
/// Every other pair commutes.
class CommutatorTable {
 public:
  explicit CommutatorTable(Rational hbar);

  const Rational& hbar() const { return hbar_; }
  Complex operator()(const Generator& g, const Generator& h) const;

 private:
  Rational hbar_;
};

using AlgebraPtr = std::shared_ptr<const CommutatorTable>;

/// Formal polynomial in noncommuting canonical generators with exact complex
/// rational coefficients, kept in canonical (sorted-generator) normal form.
class OperatorPoly {
 public:
  using Terms = std::map<Monomial, Complex>;

  OperatorPoly() = default;
  explicit OperatorPoly(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  /// Normalizes an arbitrary (unordered) sum of words.
  static OperatorPoly from_words(AlgebraPtr algebra, const std::vector<std::pair<Complex, Monomial>>& words);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Coefficient of a normal-ordered monomial (zero when absent).
  Complex coefficient(const Monomial& monomial) const;

  /// True when no monomial contains an auxiliary generator.
  bool is_principal_only() const;

  OperatorPoly& operator+=(const OperatorPoly& other);
  OperatorPoly& operator-=(const OperatorPoly& other);
  OperatorPoly& operator*=(const Complex& scalar);

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator-(OperatorPoly a) { return a *= Complex(-1); }
  friend OperatorPoly operator*(OperatorPoly a, const Complex& s) { return a *= s; }
  friend OperatorPoly operator*(const Complex& s, OperatorPoly a) { return a *= s; }
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);

  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& monomial, const Complex& coeff);
  void absorb_algebra(const OperatorPoly& other);

  AlgebraPtr algebra_;
  Terms terms_;
};

OperatorPoly multiply(const OperatorPoly& a, const OperatorPoly& b);

/// [a, b] = ab − ba.
OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b);

/// Hermitian adjoint: reverses every word, conjugates coefficients, renormalizes.
OperatorPoly adjoint(const OperatorPoly& a);

/// Re-normalizes an already normalized polynomial (identity on valid input).
OperatorPoly normalize(const OperatorPoly& a);

/// Factory for generators and scalars bound to one commutator table.
class WeylAlgebra {
 public:
  explicit WeylAlgebra(Rational hbar = Rational(1));

  const AlgebraPtr& table() const { return table_; }
  const Rational& hbar() const { return table_->hbar(); }

  OperatorPoly identity() const { return scalar(Complex(1)); }
  OperatorPoly zero() const { return OperatorPoly(table_); }
  OperatorPoly scalar(const Complex& c) const;
  OperatorPoly generator(const Generator& g) const;

  OperatorPoly x(int particle, int axis) const { return generator(Generator::position(particle, axis)); }
  OperatorPoly p(int particle, int axis) const { return generator(Generator::momentum(particle, axis)); }
  OperatorPoly aux_a(int axis) const { return generator(Generator::aux_a(axis)); }
  OperatorPoly aux_pa(int axis) const { return generator(Generator::aux_pa(axis)); }
  OperatorPoly aux_b(int axis) const { return generator(Generator::aux_b(axis)); }
  OperatorPoly aux_pb(int axis) const { return generator(Generator::aux_pb(axis)); }

 private:
  AlgebraPtr table_;
};

}  // namespace ncchain
