#include "ncchain/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ncchain {

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("to_rational: non-finite value");
  return Rational(value);
}

double to_double(const Rational& value) {
  // get_d truncates toward zero; step to whichever neighbour is nearer.
  const double t = value.get_d();
  if (!std::isfinite(t)) return t;
  const double up = std::nextafter(t, sgn(value) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(up)) return t;
  const Rational gap_t = abs(value - Rational(t));
  const Rational gap_up = abs(Rational(up) - value);
  if (gap_up < gap_t) return up;
  if (gap_up == gap_t) {
    // tie: round half to even mantissa
    int exp = 0;
    const double mant = std::frexp(t, &exp);
    const auto bits = static_cast<long long>(std::ldexp(std::abs(mant), 53));
    return bits % 2 == 0 ? t : up;
  }
  return t;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    const mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
      if (exp_text.empty() || ec != std::errc() || ptr != exp_text.data() + exp_text.size() ||
          std::labs(exponent) > 4096)
        bad_number(text);
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      const auto whole = s.substr(0, dot);
      const auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty()))
        bad_number(text);
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) bad_number(text);
      digits = std::string(s);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    value = Rational(mpz_class(digits, 10));
    if (exponent >= 0) {
      value *= scale;
    } else {
      value /= scale;
    }
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const Complex& value) {
  if (value.is_real()) return value.re.get_str();
  if (sgn(value.re) == 0) return value.im.get_str() + "i";
  std::string s = value.re.get_str();
  s += sgn(value.im) < 0 ? "-" : "+";
  s += Rational(abs(value.im)).get_str() + "i";
  return s;
}

}  // namespace ncchain
