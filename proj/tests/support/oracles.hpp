#pragma once

// Test-only reference implementations. They share no code path with the
// library routines they check.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "ncchain/weyl_algebra.hpp"

namespace ncchain::testing {

// [g, h] written out pair by pair, independent of CommutatorTable.
inline Complex reference_bracket(const Generator& g, const Generator& h, const Rational& hbar) {
  using K = GeneratorKind;
  if (g.axis != h.axis) return {};
  const bool principal_pair = g.particle == h.particle;
  if (principal_pair && g.kind == K::kPosition && h.kind == K::kMomentum) return {Rational(0), hbar};
  if (principal_pair && g.kind == K::kMomentum && h.kind == K::kPosition) return {Rational(0), Rational(-hbar)};
  if (g.kind == K::kAuxA && h.kind == K::kAuxPa) return {Rational(0), Rational(1)};
  if (g.kind == K::kAuxPa && h.kind == K::kAuxA) return {Rational(0), Rational(-1)};
  if (g.kind == K::kAuxB && h.kind == K::kAuxPb) return {Rational(0), Rational(1)};
  if (g.kind == K::kAuxPb && h.kind == K::kAuxB) return {Rational(0), Rational(-1)};
  return {};
}

using RawTerms = std::map<Monomial, Complex>;

inline void raw_add(RawTerms& t, const Monomial& w, const Complex& c) {
  if (c.is_zero()) return;
  auto& slot = t[w];
  slot += c;
  if (slot.is_zero()) t.erase(w);
}

// Normal orders a word by insertion: sort the prefix recursively, then walk the
// last generator leftwards through each sorted word using h g = g h + [h, g].
inline RawTerms brute_force_normal_order(const Monomial& word, const Complex& coeff, const Rational& hbar);

inline RawTerms insert_sorted(const Monomial& sorted, const Generator& g, const Complex& coeff, const Rational& hbar) {
  RawTerms out;
  std::size_t pos = sorted.size();
  Monomial w = sorted;
  w.push_back(g);
  // w = sorted[0..pos) g ; move g left while its left neighbour is larger
  while (pos > 0 && w[pos - 1] > w[pos]) {
    Complex bracket = reference_bracket(w[pos - 1], w[pos], hbar);
    if (!bracket.is_zero()) {
      Monomial shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos - 1));
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 1), w.end());
      for (const auto& [ww, cc] : brute_force_normal_order(shorter, coeff * bracket, hbar)) raw_add(out, ww, cc);
    }
    std::swap(w[pos - 1], w[pos]);
    --pos;
  }
  raw_add(out, w, coeff);
  return out;
}

inline RawTerms brute_force_normal_order(const Monomial& word, const Complex& coeff, const Rational& hbar) {
  RawTerms out;
  if (word.size() < 2) {
    raw_add(out, word, coeff);
    return out;
  }
  Monomial prefix(word.begin(), word.end() - 1);
  for (const auto& [w, c] : brute_force_normal_order(prefix, coeff, hbar)) {
    for (const auto& [ww, cc] : insert_sorted(w, word.back(), c, hbar)) raw_add(out, ww, cc);
  }
  return out;
}

inline RawTerms brute_force_product(const OperatorPoly& a, const OperatorPoly& b, const Rational& hbar) {
  RawTerms out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Monomial w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      for (const auto& [ww, cc] : brute_force_normal_order(w, ca * cb, hbar)) raw_add(out, ww, cc);
    }
  }
  return out;
}

// Ground-state expectation of an auxiliary word by explicit truncated Fock-space
// matrices: ã = (a + a†)/√2, p̃ = −i(a − a†)/√2 per (system, axis) mode.
inline std::complex<double> fock_expectation(const Monomial& aux_word) {
  constexpr int dim = 12;
  using Mat = Eigen::MatrixXcd;
  Mat lower = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Mat raise = lower.adjoint();
  const Mat q = (lower + raise) / std::sqrt(2.0);
  const Mat p = std::complex<double>(0.0, -1.0) * (lower - raise) / std::sqrt(2.0);

  std::complex<double> total(1.0, 0.0);
  for (int system = 0; system < 2; ++system) {
    for (int axis = 1; axis <= 3; ++axis) {
      Mat product = Mat::Identity(dim, dim);
      for (const auto& g : aux_word) {
        const bool a_sys = g.kind == GeneratorKind::kAuxA || g.kind == GeneratorKind::kAuxPa;
        if ((system == 0) != a_sys || g.axis != axis) continue;
        const bool coord = g.kind == GeneratorKind::kAuxA || g.kind == GeneratorKind::kAuxB;
        product = product * (coord ? q : p);
      }
      total *= product(0, 0);
    }
  }
  return total;
}

inline std::vector<Generator> generator_pool(int particles) {
  std::vector<Generator> pool;
  for (int axis = 1; axis <= 3; ++axis) {
    for (int n = 1; n <= particles; ++n) {
      pool.push_back(Generator::position(n, axis));
      pool.push_back(Generator::momentum(n, axis));
    }
    pool.push_back(Generator::aux_a(axis));
    pool.push_back(Generator::aux_pa(axis));
    pool.push_back(Generator::aux_b(axis));
    pool.push_back(Generator::aux_pb(axis));
  }
  return pool;
}

// Random polynomial with up to max_terms words of length ≤ max_degree and small
// complex rational coefficients.
inline OperatorPoly random_poly(const WeylAlgebra& algebra, std::mt19937_64& rng, int max_degree, int max_terms = 4,
                                int particles = 2) {
  const auto pool = generator_pool(particles);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, max_degree);
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<std::pair<Complex, Monomial>> words;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    Monomial w;
    const int l = len(rng);
    for (int j = 0; j < l; ++j) w.push_back(pool[pick(rng)]);
    words.emplace_back(Complex(ratio(num(rng), den(rng)), ratio(num(rng), den(rng))), w);
  }
  return OperatorPoly::from_words(algebra.table(), words);
}

}  // namespace ncchain::testing
