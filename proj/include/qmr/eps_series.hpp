#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/rational.hpp"

namespace qmr {

/// Truncated power series in a single parameter eps with rational
/// coefficients, exact modulo eps^(J+1).
///
/// A series built from a plain scalar carries no truncation (order() ==
/// EpsSeries::exact) so it can be mixed freely with truncated series; the
/// result of any binary operation is truncated at the smaller order.
class EpsSeries {
 public:
  static constexpr int exact = std::numeric_limits<int>::max();

  EpsSeries() = default;
  EpsSeries(const Rational& c) : coeffs_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  EpsSeries(int c) : EpsSeries(Rational(c)) {}           // NOLINT(google-explicit-constructor)
  EpsSeries(long c) : EpsSeries(Rational(c)) {}          // NOLINT(google-explicit-constructor)

  EpsSeries(std::vector<Rational> coeffs, int order) : coeffs_(std::move(coeffs)), order_(order) {
    if (order < 0) {
      throw Error(ErrorKind::invalid_operand, "negative truncation order");
    }
    trim();
  }

  /// The parameter itself, truncated at eps^(order+1).
  static EpsSeries epsilon(int order) { return EpsSeries({Rational(0), Rational(1)}, order); }

  int order() const { return order_; }
  bool truncated() const { return order_ != exact; }

  /// Coefficient of eps^j, i.e. (1/j!) d^j/deps^j at eps = 0.
  Rational coefficient(int j) const {
    if (j < 0 || j > order_) {
      throw Error(ErrorKind::truncation_exceeded,
                  "coefficient " + std::to_string(j) + " beyond truncation order " +
                      std::to_string(order_));
    }
    return static_cast<std::size_t>(j) < coeffs_.size() ? coeffs_[j] : Rational(0);
  }

  /// All coefficients 0..order (requires a truncated series).
  std::vector<Rational> coefficients() const {
    if (!truncated()) {
      std::vector<Rational> out = coeffs_;
      if (out.empty()) out.emplace_back(0);
      return out;
    }
    std::vector<Rational> out(static_cast<std::size_t>(order_) + 1);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin());
    return out;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_unit() const { return !coeffs_.empty() && !coeffs_[0].is_zero(); }

  /// Multiplicative inverse; defined iff the constant term is nonzero.
  EpsSeries inverse() const {
    if (!is_unit()) {
      throw Error(ErrorKind::invalid_operand, "inverting series with zero constant term");
    }
    if (coeffs_.size() == 1) return EpsSeries(std::vector<Rational>{coeffs_[0].inverse()}, order_);
    if (!truncated()) {
      throw Error(ErrorKind::truncation_exceeded,
                  "inverse of a non-constant series needs a truncation order");
    }
    const Rational c0inv = coeffs_[0].inverse();
    std::vector<Rational> out(static_cast<std::size_t>(order_) + 1);
    out[0] = c0inv;
    for (int n = 1; n <= order_; ++n) {
      Rational acc(0);
      const int top = std::min<int>(n, static_cast<int>(coeffs_.size()) - 1);
      for (int t = 1; t <= top; ++t) acc += coeffs_[t] * out[n - t];
      out[n] = -(acc * c0inv);
    }
    return EpsSeries(std::move(out), order_);
  }

  EpsSeries& operator+=(const EpsSeries& o) {
    order_ = std::min(order_, o.order_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t t = 0; t < o.coeffs_.size(); ++t) coeffs_[t] += o.coeffs_[t];
    trim();
    return *this;
  }
  EpsSeries& operator-=(const EpsSeries& o) {
    order_ = std::min(order_, o.order_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t t = 0; t < o.coeffs_.size(); ++t) coeffs_[t] -= o.coeffs_[t];
    trim();
    return *this;
  }
  EpsSeries& operator*=(const EpsSeries& o) { return *this = *this * o; }
  EpsSeries& operator/=(const EpsSeries& o) { return *this = *this * o.inverse(); }

  friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
  friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
  friend EpsSeries operator/(EpsSeries a, const EpsSeries& b) { return a /= b; }
  friend EpsSeries operator-(EpsSeries a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    const int order = std::min(a.order_, b.order_);
    if (a.is_zero() || b.is_zero()) return EpsSeries(std::vector<Rational>{}, order);
    std::size_t len = a.coeffs_.size() + b.coeffs_.size() - 1;
    if (order != exact) len = std::min(len, static_cast<std::size_t>(order) + 1);
    std::vector<Rational> out(len);
    for (std::size_t s = 0; s < a.coeffs_.size() && s < len; ++s) {
      if (a.coeffs_[s].is_zero()) continue;
      for (std::size_t t = 0; t < b.coeffs_.size() && s + t < len; ++t) {
        out[s + t] += a.coeffs_[s] * b.coeffs_[t];
      }
    }
    return EpsSeries(std::move(out), order);
  }

  /// Equality modulo the smaller truncation.
  friend bool operator==(const EpsSeries& a, const EpsSeries& b) {
    const int order = std::min(a.order_, b.order_);
    const std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t t = 0; t < len && (order == exact || static_cast<int>(t) <= order); ++t) {
      const Rational x = t < a.coeffs_.size() ? a.coeffs_[t] : Rational(0);
      const Rational y = t < b.coeffs_.size() ? b.coeffs_[t] : Rational(0);
      if (x != y) return false;
    }
    return true;
  }

  /// Deterministic total order on representations (not an ordered field).
  friend std::strong_ordering operator<=>(const EpsSeries& a, const EpsSeries& b) {
    const std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t t = 0; t < len; ++t) {
      const Rational x = t < a.coeffs_.size() ? a.coeffs_[t] : Rational(0);
      const Rational y = t < b.coeffs_.size() ? b.coeffs_[t] : Rational(0);
      if (auto c = x <=> y; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      if (coeffs_[t].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeffs_[t].str() << ")";
      if (t == 1) os << "*eps";
      if (t > 1) os << "*eps^" << t;
    }
    if (truncated()) os << " + O(eps^" << order_ + 1 << ")";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsSeries& s) { return os << s.str(); }

 private:
  void trim() {
    if (order_ != exact && coeffs_.size() > static_cast<std::size_t>(order_) + 1) {
      coeffs_.resize(static_cast<std::size_t>(order_) + 1);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
  int order_ = exact;
};

}  // namespace qmr
