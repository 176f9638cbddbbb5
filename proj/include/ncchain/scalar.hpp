#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace ncchain {

/// Arbitrary-precision rational. Results of arithmetic are always canonical.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument on den == 0.
Rational ratio(long num, long den = 1);

/// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational to_rational(double value);

double to_double(const Rational& value);

/// Parses "p/q", an integer, or a decimal with optional exponent ("0.1", "-2.5e-3")
/// exactly, so "0.1" is 1/10. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Exact complex number with rational real and imaginary parts.
struct Complex {
  Rational re{0};
  Rational im{0};

  Complex() = default;
  Complex(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  Complex(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  Complex(long real) : re(real) {}  // NOLINT(google-explicit-constructor)

  static Complex i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Complex conj() const { return {re, -im}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const Complex& value);

}  // namespace ncchain
