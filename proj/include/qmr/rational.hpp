#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qmr/error.hpp"

namespace qmr {

/// Exact rational number backed by GMP.
///
/// The stored pair is always canonical: positive denominator, coprime
/// numerator and denominator, zero as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long long value) : Rational(std::to_string(value)) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) {
      throw Error(ErrorKind::invalid_operand, "rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  /// Parses "p/q" or "p" in base 10, sign on the numerator.
  explicit Rational(std::string_view text) {
    std::string s(text);
    if (s.empty() || value_.set_str(s, 10) != 0) {
      throw Error(ErrorKind::invalid_operand, "cannot parse rational '" + s + "'");
    }
    if (value_.get_den() == 0) {
      throw Error(ErrorKind::invalid_operand, "rational with zero denominator");
    }
    value_.canonicalize();
  }

  static Rational from_mpq(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    r.value_.canonicalize();
    return r;
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  Rational inverse() const {
    if (is_zero()) {
      throw Error(ErrorKind::invalid_operand, "division by zero rational");
    }
    return from_mpq(1 / value_);
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) {
      throw Error(ErrorKind::invalid_operand, "division by zero rational");
    }
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return from_mpq(-a.value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p/q", or "p" when q = 1.
  std::string str() const { return value_.get_str(10); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

inline Rational factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out, mpz_class(1));
}

/// Generalized binomial coefficient C(e, n) for any integer e and n >= 0.
inline Rational binomial(long e, long n) {
  if (n < 0) return Rational(0);
  mpz_class num(1);
  for (long t = 0; t < n; ++t) num *= (e - t);
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(num, den);
}

}  // namespace qmr
