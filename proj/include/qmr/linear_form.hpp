#pragma once

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/ring.hpp"

namespace qmr {

/// Where a denominator form came from. Node forms descend from the factor
/// (2 z_i - z_{i-1} - z_{i+1}); the pole prescription selects their roots.
struct Origin {
  enum class Kind { plain, node, deformation };
  Kind kind = Kind::plain;
  int index = 0;  // node index, 0 otherwise

  static Origin plain() { return {}; }
  static Origin node(int i) { return {Kind::node, i}; }
  static Origin deformation() { return {Kind::deformation, 0}; }

  friend auto operator<=>(const Origin&, const Origin&) = default;

  std::string str() const {
    switch (kind) {
      case Kind::plain: return "plain";
      case Kind::node: return "node(" + std::to_string(index) + ")";
      case Kind::deformation: return "deformation";
    }
    return "?";
  }
};

/// Homogeneous linear form sum_v c_v z_v, stored sparse and sorted by
/// variable index with no zero coefficients.
template <CoefficientRing R>
class LinearForm {
 public:
  using Entry = std::pair<int, R>;

  LinearForm() = default;
  LinearForm(std::initializer_list<Entry> entries) : LinearForm(std::vector<Entry>(entries)) {}
  explicit LinearForm(std::vector<Entry> entries) : entries_(std::move(entries)) { normalize_layout(); }

  static LinearForm variable(int v) { return LinearForm{Entry{v, R(Rational(1))}}; }

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int lowest_variable() const { return entries_.front().first; }

  R coefficient(int v) const {
    for (const auto& [var, c] : entries_) {
      if (var == v) return c;
    }
    return R(Rational(0));
  }

  bool involves(int v) const {
    return std::any_of(entries_.begin(), entries_.end(), [v](const Entry& e) { return e.first == v; });
  }

  /// The form with the z_v term dropped.
  LinearForm without(int v) const {
    std::vector<Entry> out;
    for (const auto& e : entries_) {
      if (e.first != v) out.push_back(e);
    }
    return LinearForm(std::move(out));
  }

  /// Replaces z_v by the linear form `value`.
  LinearForm substituted(int v, const LinearForm& value) const {
    const R a = coefficient(v);
    if (a.is_zero()) return *this;
    return without(v) + value.scaled(a);
  }

  LinearForm scaled(const R& s) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [var, c] : entries_) out.emplace_back(var, c * s);
    return LinearForm(std::move(out));
  }

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    std::vector<Entry> out(a.entries_);
    out.insert(out.end(), b.entries_.begin(), b.entries_.end());
    return LinearForm(std::move(out));
  }
  friend LinearForm operator-(const LinearForm& a) { return a.scaled(R(Rational(-1))); }
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + (-b); }

  /// Splits the form as scale * monic, where monic has coefficient 1 on its
  /// lowest-index variable with a unit coefficient. Forms with no unit
  /// coefficient (possible over EpsSeries) are returned with scale 1.
  std::pair<R, LinearForm> canonical() const {
    for (const auto& [var, c] : entries_) {
      if (is_unit(c)) return {c, scaled(c.inverse())};
    }
    return {R(Rational(1)), *this};
  }

  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t t = 0; t < a.entries_.size(); ++t) {
      if (a.entries_[t].first != b.entries_[t].first) return false;
      if ((a.entries_[t].second <=> b.entries_[t].second) != 0) return false;
    }
    return true;
  }

  friend std::strong_ordering operator<=>(const LinearForm& a, const LinearForm& b) {
    const std::size_t n = std::min(a.entries_.size(), b.entries_.size());
    for (std::size_t t = 0; t < n; ++t) {
      if (auto c = a.entries_[t].first <=> b.entries_[t].first; c != 0) return c;
      if (auto c = a.entries_[t].second <=> b.entries_[t].second; c != 0) return c;
    }
    return a.entries_.size() <=> b.entries_.size();
  }

  std::string str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [var, c] : entries_) {
      if (!first) os << " + ";
      first = false;
      if (c == R(Rational(1))) {
        os << "z" << var;
      } else {
        os << "(" << c << ")*z" << var;
      }
    }
    return os.str();
  }

 private:
  void normalize_layout() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    std::vector<Entry> merged;
    for (auto& e : entries_) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second = merged.back().second + e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
    entries_ = std::move(merged);
  }

  std::vector<Entry> entries_;
};

/// A linear form raised to a nonzero integer power; negative powers are
/// denominator factors.
template <CoefficientRing R>
struct Factor {
  LinearForm<R> form;
  Origin origin;
  int power = 0;

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.power == b.power && a.origin == b.origin && a.form == b.form;
  }
  friend std::strong_ordering operator<=>(const Factor& a, const Factor& b) {
    if (auto c = a.form <=> b.form; c != 0) return c;
    if (auto c = a.origin <=> b.origin; c != 0) return c;
    return a.power <=> b.power;
  }
};

}  // namespace qmr
