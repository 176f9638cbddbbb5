#include "ncchain/weyl_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncchain {

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("generator axis must be 1, 2 or 3");
}

Generator make_aux(GeneratorKind kind, int axis) {
  check_axis(axis);
  return {kind, 0, static_cast<std::uint8_t>(axis)};
}

Generator make_principal(GeneratorKind kind, int particle, int axis) {
  check_axis(axis);
  if (particle < 1 || particle > 0xFFFF) throw std::invalid_argument("particle index must be in 1..65535");
  return {kind, static_cast<std::uint16_t>(particle), static_cast<std::uint8_t>(axis)};
}

void add_into(OperatorPoly::Terms& terms, const Monomial& monomial, const Complex& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(monomial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms.erase(it);
  }
}

// Rewrites coeff * word into canonical order using w_i w_{i+1} = w_{i+1} w_i + [w_i, w_{i+1}].
// Each swap removes one inversion and each contraction shortens the word, so this terminates.
void accumulate_normal_ordered(const CommutatorTable* table, Complex coeff, Monomial word,
                               OperatorPoly::Terms& out) {
  std::vector<std::pair<Complex, Monomial>> pending;
  pending.emplace_back(std::move(coeff), std::move(word));
  while (!pending.empty()) {
    auto [c, w] = std::move(pending.back());
    pending.pop_back();
    if (c.is_zero()) continue;
    auto it = std::is_sorted_until(w.begin(), w.end());
    if (it == w.end()) {
      add_into(out, w, c);
      continue;
    }
    auto i = static_cast<std::size_t>(it - w.begin()) - 1;
    if (table == nullptr) throw std::logic_error("normal ordering requires a commutator table");
    Complex comm = (*table)(w[i], w[i + 1]);
    if (!comm.is_zero()) {
      Monomial shorter;
      shorter.reserve(w.size() - 2);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
      pending.emplace_back(c * comm, std::move(shorter));
    }
    std::swap(w[i], w[i + 1]);
    pending.emplace_back(std::move(c), std::move(w));
  }
}

AlgebraPtr merge_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (a->hbar() != b->hbar()) throw std::invalid_argument("operator polynomials belong to different algebras");
  return a;
}

}  // namespace

Generator Generator::position(int particle, int axis) {
  return make_principal(GeneratorKind::kPosition, particle, axis);
}
Generator Generator::momentum(int particle, int axis) {
  return make_principal(GeneratorKind::kMomentum, particle, axis);
}
Generator Generator::aux_a(int axis) { return make_aux(GeneratorKind::kAuxA, axis); }
Generator Generator::aux_pa(int axis) { return make_aux(GeneratorKind::kAuxPa, axis); }
Generator Generator::aux_b(int axis) { return make_aux(GeneratorKind::kAuxB, axis); }
Generator Generator::aux_pb(int axis) { return make_aux(GeneratorKind::kAuxPb, axis); }

std::string Generator::to_string() const {
  std::string s;
  switch (kind) {
    case GeneratorKind::kAuxA: s = "a~"; break;
    case GeneratorKind::kAuxPa: s = "pa~"; break;
    case GeneratorKind::kAuxB: s = "b~"; break;
    case GeneratorKind::kAuxPb: s = "pb~"; break;
    case GeneratorKind::kPosition: s = "x(" + std::to_string(particle) + ")"; break;
    case GeneratorKind::kMomentum: s = "p(" + std::to_string(particle) + ")"; break;
  }
  return s + std::to_string(static_cast<int>(axis));
}

CommutatorTable::CommutatorTable(Rational hbar) : hbar_(std::move(hbar)) {
  if (sgn(hbar_) <= 0) throw std::invalid_argument("hbar must be positive");
}

Complex CommutatorTable::operator()(const Generator& g, const Generator& h) const {
  if (g.axis != h.axis) return {};
  auto pair = [&](GeneratorKind q, GeneratorKind p) { return g.kind == q && h.kind == p; };
  using K = GeneratorKind;
  if (g.particle == h.particle) {
    if (pair(K::kPosition, K::kMomentum)) return {Rational(0), hbar_};
    if (pair(K::kMomentum, K::kPosition)) return {Rational(0), -hbar_};
  }
  if (pair(K::kAuxA, K::kAuxPa) || pair(K::kAuxB, K::kAuxPb)) return {Rational(0), Rational(1)};
  if (pair(K::kAuxPa, K::kAuxA) || pair(K::kAuxPb, K::kAuxB)) return {Rational(0), Rational(-1)};
  return {};
}

OperatorPoly OperatorPoly::from_words(AlgebraPtr algebra, const std::vector<std::pair<Complex, Monomial>>& words) {
  OperatorPoly out(std::move(algebra));
  for (const auto& [c, w] : words) accumulate_normal_ordered(out.algebra_.get(), c, w, out.terms_);
  return out;
}

int OperatorPoly::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Complex OperatorPoly::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Complex{} : it->second;
}

bool OperatorPoly::is_principal_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::none_of(t.first.begin(), t.first.end(), [](const Generator& g) { return g.is_auxiliary(); });
  });
}

void OperatorPoly::add_term(const Monomial& monomial, const Complex& coeff) { add_into(terms_, monomial, coeff); }

void OperatorPoly::absorb_algebra(const OperatorPoly& other) { algebra_ = merge_algebra(algebra_, other.algebra_); }

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& other) {
  absorb_algebra(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& other) {
  absorb_algebra(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(const Complex& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
  OperatorPoly out(merge_algebra(a.algebra_, b.algebra_));
  const CommutatorTable* table = out.algebra_.get();
  Monomial word;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      word.clear();
      word.insert(word.end(), wa.begin(), wa.end());
      word.insert(word.end(), wb.begin(), wb.end());
      accumulate_normal_ordered(table, ca * cb, word, out.terms_);
    }
  }
  return out;
}

std::string OperatorPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << ncchain::to_string(c) << ")";
    for (const auto& g : w) os << "*" << g.to_string();
  }
  return os.str();
}

OperatorPoly multiply(const OperatorPoly& a, const OperatorPoly& b) { return a * b; }

OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b) { return a * b - b * a; }

OperatorPoly adjoint(const OperatorPoly& a) {
  std::vector<std::pair<Complex, Monomial>> words;
  words.reserve(a.size());
  for (const auto& [w, c] : a.terms()) words.emplace_back(c.conj(), Monomial(w.rbegin(), w.rend()));
  return OperatorPoly::from_words(a.algebra(), words);
}

OperatorPoly normalize(const OperatorPoly& a) {
  std::vector<std::pair<Complex, Monomial>> words;
  words.reserve(a.size());
  for (const auto& [w, c] : a.terms()) words.emplace_back(c, w);
  return OperatorPoly::from_words(a.algebra(), words);
}

WeylAlgebra::WeylAlgebra(Rational hbar) : table_(std::make_shared<const CommutatorTable>(std::move(hbar))) {}

OperatorPoly WeylAlgebra::scalar(const Complex& c) const {
  return OperatorPoly::from_words(table_, {{c, Monomial{}}});
}

OperatorPoly WeylAlgebra::generator(const Generator& g) const {
  return OperatorPoly::from_words(table_, {{Complex(1), Monomial{g}}});
}

}  // namespace ncchain
