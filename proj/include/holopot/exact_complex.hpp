#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "holopot/error.hpp"

namespace holopot {

using cdouble = std::complex<double>;

/// Complex number with arbitrary-precision rational real and imaginary parts.
///
/// All arithmetic is exact. Conversion from double is exact as well (every
/// finite binary64 value is a dyadic rational), so float inputs can be promoted
/// without rounding.
struct ExactComplex {
  mpq_class re;
  mpq_class im;

  ExactComplex() : re(0), im(0) {}
  ExactComplex(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static ExactComplex from_double(double r, double i = 0.0) {
    if (!std::isfinite(r) || !std::isfinite(i)) {
      throw InvalidArgument("cannot convert non-finite value to an exact rational");
    }
    mpq_class qr, qi;
    mpq_set_d(qr.get_mpq_t(), r);
    mpq_set_d(qi.get_mpq_t(), i);
    return {qr, qi};
  }
  static ExactComplex from_cdouble(const cdouble& c) { return from_double(c.real(), c.imag()); }
  static ExactComplex imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  cdouble to_cdouble() const { return {re.get_d(), im.get_d()}; }
  double abs() const { return std::abs(to_cdouble()); }
  ExactComplex conj() const { return {re, -im}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    mpq_class den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw InvalidArgument("exact division by zero");
    mpq_class r = (re * o.re + im * o.im) / den;
    mpq_class i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

inline std::string to_string(const ExactComplex& c) {
  if (c.is_real()) return to_string(c.re);
  return "(" + to_string(c.re) + (sgn(c.im) < 0 ? "" : "+") + to_string(c.im) + "*i)";
}

/// Parses an unsigned decimal literal ("12", "0.125", "3.5e-2") into an exact
/// rational. Returns false on malformed input.
inline bool parse_decimal(std::string_view text, mpq_class& out) {
  std::size_t pos = 0;
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      ++frac_digits;
      seen_digit = true;
    }
  }
  if (!seen_digit) return false;
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
    std::string exp_digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exp_digits += text[pos++];
    }
    if (exp_digits.empty() || exp_digits.size() > 6) return false;
    exponent = std::stol(exp_digits);
    if (negative) exponent = -exponent;
  }
  if (pos != text.size()) return false;

  mpz_class mantissa(digits, 10);
  long scale = exponent - static_cast<long>(frac_digits);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    out = mpq_class(mantissa * ten_pow);
  } else {
    out = mpq_class(mantissa, ten_pow);
    out.canonicalize();
  }
  return true;
}

/// Parses "p" or "p/q" (optional leading '-') as written by mpq_class::get_str.
inline bool parse_rational(std::string_view text, mpq_class& out) {
  if (text.empty()) return false;
  try {
    out = mpq_class(std::string(text), 10);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (sgn(out.get_den()) == 0) return false;
  out.canonicalize();
  return true;
}

}  // namespace holopot
