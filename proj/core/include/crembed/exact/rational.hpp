#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "crembed/types.hpp"

namespace crembed::exact {

/// Arbitrary-precision rational, canonical reduced form maintained by the
/// backing implementation.
using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// "p/q" (or just "p" for integers), canonical sign on the numerator.
std::string rational_to_string(const Rational& r);

/// "p/q" or "p" back to a Rational; throws ParseError on malformed input.
Rational rational_from_string(const std::string& text);

double rational_to_double(const Rational& r);

/// Complex number with exact rational real and imaginary parts — the
/// ground field of the polynomial oracle.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag = 0)
      : re(std::move(real)), im(std::move(imag)) {}
  explicit GaussianRational(int n) : re(n) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// Exact embedding of a floating-point complex number.
  static GaussianRational from_complex(Complex z) {
    return {rational_from_double(z.real()), rational_from_double(z.imag())};
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  Complex to_complex() const { return {rational_to_double(re), rational_to_double(im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Division by zero is a logic error in the oracle; asserted in the impl.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }
};

}  // namespace crembed::exact
