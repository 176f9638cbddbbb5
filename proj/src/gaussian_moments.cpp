#include "ncchain/gaussian_moments.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "ncchain/errors.hpp"

namespace ncchain {

namespace {

bool is_a_system(GeneratorKind k) { return k == GeneratorKind::kAuxA || k == GeneratorKind::kAuxPa; }
bool is_coordinate(GeneratorKind k) { return k == GeneratorKind::kAuxA || k == GeneratorKind::kAuxB; }

// Sum over perfect pairings of the word, each pair contracted in its original order.
Complex wick(std::vector<Generator>& word) {
  if (word.empty()) return Complex(1);
  if (word.size() % 2 != 0) return {};
  Complex total;
  const Generator head = word.front();
  for (std::size_t j = 1; j < word.size(); ++j) {
    Complex pair = MomentTable::two_point(head, word[j]);
    if (pair.is_zero()) continue;
    std::vector<Generator> rest;
    rest.reserve(word.size() - 2);
    for (std::size_t k = 1; k < word.size(); ++k)
      if (k != j) rest.push_back(word[k]);
    total += pair * wick(rest);
  }
  return total;
}

}  // namespace

Complex MomentTable::two_point(const Generator& first, const Generator& second) {
  if (!first.is_auxiliary() || !second.is_auxiliary())
    throw std::invalid_argument("moment table covers auxiliary generators only");
  if (first.axis != second.axis) return {};
  if (is_a_system(first.kind) != is_a_system(second.kind)) return {};
  const bool q1 = is_coordinate(first.kind);
  const bool q2 = is_coordinate(second.kind);
  if (q1 == q2) return Complex(ratio(1, 2));
  // <q p> = i/2, <p q> = −i/2
  return q1 ? Complex(Rational(0), ratio(1, 2)) : Complex(Rational(0), ratio(-1, 2));
}

OperatorPoly vacuum_expectation(const OperatorPoly& poly, int max_aux_degree) {
  OperatorPoly out(poly.algebra());
  std::vector<std::pair<Complex, Monomial>> words;
  for (const auto& [w, c] : poly.terms()) {
    // Normal order puts auxiliaries first, and they commute with principal generators.
    auto split = std::find_if(w.begin(), w.end(), [](const Generator& g) { return !g.is_auxiliary(); });
    const auto aux_degree = static_cast<int>(split - w.begin());
    if (aux_degree > max_aux_degree)
      throw UnsupportedDegreeError("auxiliary degree " + std::to_string(aux_degree) + " exceeds Wick cap " +
                                   std::to_string(max_aux_degree));
    if (std::any_of(split, w.end(), [](const Generator& g) { return g.is_auxiliary(); }))
      throw std::invalid_argument("vacuum_expectation expects a normalized polynomial");
    std::vector<Generator> aux(w.begin(), split);
    Complex value = wick(aux);
    if (value.is_zero()) continue;
    words.emplace_back(c * value, Monomial(split, w.end()));
  }
  return OperatorPoly::from_words(poly.algebra(), words);
}

Moments moments_from_scales(const Rational& theta_scale, const Rational& eta_scale) {
  // Σ_i <ã_i ã_i> = 3/2
  return {Rational(ratio(3, 2) * theta_scale * theta_scale), Rational(ratio(3, 2) * eta_scale * eta_scale)};
}

Moments theta_eta_moments(const NcParams& params, int particle, const Rational& mass) {
  params.validate();
  auto [c_theta, c_eta] = params.constants_for(particle, mass);
  const Rational lp4 = params.planck_length * params.planck_length * params.planck_length * params.planck_length;
  const Rational h2 = params.hbar * params.hbar;
  return {Rational(3 * c_theta * c_theta * lp4 / (2 * h2)), Rational(3 * h2 * c_eta * c_eta / (2 * lp4))};
}

}  // namespace ncchain
