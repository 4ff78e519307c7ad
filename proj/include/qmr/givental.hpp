#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/quasimap.hpp"
#include "qmr/rational.hpp"

namespace qmr {

/// Finite sum of c_{a,e} x^a e^{e x}, truncated above exponential degree
/// e_max.
class XEPoly {
 public:
  using Key = std::pair<int, int>;  // (x-power a, exponential degree e)

  explicit XEPoly(int e_max) : e_max_(e_max) {
    if (e_max < 0) throw Error(ErrorKind::invalid_operand, "e_max must be >= 0");
  }

  int e_max() const { return e_max_; }
  const std::map<Key, Rational>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rational coefficient(int a, int e) const {
    auto it = entries_.find({a, e});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void add(int a, int e, const Rational& c) {
    if (a < 0 || e < 0) throw Error(ErrorKind::invalid_operand, "negative x or exponential power");
    if (e > e_max_ || c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(Key{a, e}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  XEPoly& operator+=(const XEPoly& o) {
    for (const auto& [key, c] : o.entries_) add(key.first, key.second, c);
    return *this;
  }
  friend XEPoly operator+(XEPoly a, const XEPoly& b) { return a += b; }
  friend XEPoly operator-(XEPoly a, const XEPoly& b) { return a += b.scaled(Rational(-1)); }

  XEPoly scaled(const Rational& s) const {
    XEPoly out(e_max_);
    for (const auto& [key, c] : entries_) out.add(key.first, key.second, c * s);
    return out;
  }

  /// d/dx (x^a e^{ex}) = a x^{a-1} e^{ex} + e x^a e^{ex}
  XEPoly derivative() const {
    XEPoly out(e_max_);
    for (const auto& [key, c] : entries_) {
      const auto [a, e] = key;
      if (a > 0) out.add(a - 1, e, c * Rational(a));
      if (e > 0) out.add(a, e, c * Rational(e));
    }
    return out;
  }

  /// multiplication by e^x; terms pushed past e_max are dropped
  XEPoly times_exp() const {
    XEPoly out(e_max_);
    for (const auto& [key, c] : entries_) out.add(key.first, key.second + 1, c);
    return out;
  }

  friend bool operator==(const XEPoly& a, const XEPoly& b) {
    return a.e_max_ == b.e_max_ && a.entries_ == b.entries_;
  }

 private:
  int e_max_;
  std::map<Key, Rational> entries_;
};

/// w_j(x) = sum_{e=0}^{e_max} d^j/deps^j [c_e(eps) e^{(e+eps)x}] at eps = 0,
/// with c_e the hypergeometric series of degree e.
inline XEPoly build_solution(int N, int k, int j, int e_max) {
  if (j < 0) throw Error(ErrorKind::invalid_operand, "j must be >= 0");
  XEPoly out(e_max);
  for (int e = 0; e <= e_max; ++e) {
    const EpsSeries c = hypergeom_series(N, k, e, j);
    for (int i = 0; i <= j; ++i) {
      out.add(j - i, e, binomial(j, i) * factorial(i) * c.coefficient(i));
    }
  }
  return out;
}

/// (d/dx)^{N-1} p - k e^x prod_{j=1}^{k-1} (k d/dx + j) p
inline XEPoly apply_operator(int N, int k, const XEPoly& p) {
  XEPoly lead = p;
  for (int n = 0; n < N - 1; ++n) lead = lead.derivative();
  XEPoly tail = p;
  for (int j = 1; j <= k - 1; ++j) tail = tail.derivative().scaled(Rational(k)) + tail.scaled(Rational(j));
  return lead - tail.times_exp().scaled(Rational(k));
}

struct Residual {
  int a;
  int e;
  Rational coefficient;
};

struct AnnihilationReport {
  int N;
  int k;
  int j;
  int e_max;
  bool formal;  // k >= N: the series only make sense formally
  bool annihilated;
  std::vector<Residual> residuals;  // nonzero trusted coefficients (e <= e_max - 1)
};

inline AnnihilationReport check_annihilation(int N, int k, const XEPoly& solution, int j) {
  const XEPoly image = apply_operator(N, k, solution);
  AnnihilationReport report{N, k, j, solution.e_max(), k >= N, true, {}};
  for (const auto& [key, c] : image.entries()) {
    if (key.second <= solution.e_max() - 1) report.residuals.push_back({key.first, key.second, c});
  }
  report.annihilated = report.residuals.empty();
  return report;
}

/// True iff the Givental operator kills w_j up to the trusted exponential
/// degree e_max - 1.
inline AnnihilationReport verify_annihilation(int N, int k, int j, int e_max) {
  if (N < 2 || k < 1) throw Error(ErrorKind::invalid_query, "Givental check needs N >= 2, k >= 1");
  if (j < 0 || j > N - 2) throw Error(ErrorKind::invalid_query, "j must lie in 0..N-2");
  return check_annihilation(N, k, build_solution(N, k, j, e_max), j);
}

}  // namespace qmr
