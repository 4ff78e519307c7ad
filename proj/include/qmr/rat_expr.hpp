#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/linear_form.hpp"
#include "qmr/ring.hpp"

namespace qmr {

/// coefficient * prod_r form_r^power_r with every form in canonical scale.
template <CoefficientRing R>
class Term {
 public:
  using FactorList = std::vector<Factor<R>>;

  Term() : coefficient_(Rational(0)) {}
  explicit Term(R coefficient) : coefficient_(std::move(coefficient)) {}

  /// Builds a term from arbitrary (not yet canonical) factors: forms are
  /// made monic with the scale absorbed into the coefficient, equal forms
  /// merge and zero powers drop.
  Term(R coefficient, FactorList factors) : coefficient_(std::move(coefficient)) {
    for (auto& f : factors) absorb(std::move(f));
    finish();
  }

  static Term form_power(const LinearForm<R>& form, int power, Origin origin = Origin::plain()) {
    return Term(R(Rational(1)), FactorList{Factor<R>{form, origin, power}});
  }
  static Term variable_power(int v, int power) { return form_power(LinearForm<R>::variable(v), power); }

  const R& coefficient() const { return coefficient_; }
  const FactorList& factors() const { return factors_; }
  bool is_zero() const { return coefficient_.is_zero(); }

  /// Total degree: sum of powers (every form has degree one).
  int degree() const {
    int deg = 0;
    for (const auto& f : factors_) deg += f.power;
    return deg;
  }

  bool involves(int v) const {
    for (const auto& f : factors_) {
      if (f.form.involves(v)) return true;
    }
    return false;
  }

  friend Term operator*(const Term& a, const Term& b) {
    FactorList all = a.factors_;
    all.insert(all.end(), b.factors_.begin(), b.factors_.end());
    return Term(a.coefficient_ * b.coefficient_, std::move(all));
  }

  Term scaled(const R& s) const {
    Term out = *this;
    out.coefficient_ = out.coefficient_ * s;
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << coefficient_ << ")";
    for (const auto& f : factors_) {
      os << " * [" << f.form.str() << "]^" << f.power;
      if (f.origin.kind != Origin::Kind::plain) os << "{" << f.origin.str() << "}";
    }
    return os.str();
  }

 private:
  void absorb(Factor<R> f) {
    if (f.power == 0) return;
    if (f.form.is_zero()) {
      if (f.power < 0) {
        throw Error(ErrorKind::pole_collision_unhandled, "denominator form vanishes identically");
      }
      coefficient_ = R(Rational(0));
      return;
    }
    auto [scale, monic] = f.form.canonical();
    if (f.power < 0 && !is_unit(scale)) {
      throw Error(ErrorKind::non_invertible_pole_coefficient, "denominator scale is not a unit");
    }
    coefficient_ = coefficient_ * power(scale, f.power);
    f.form = std::move(monic);
    if (f.form.size() < 2) f.origin = Origin::plain();
    factors_.push_back(std::move(f));
  }

  void finish() {
    if (coefficient_.is_zero()) {
      factors_.clear();
      return;
    }
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor<R>& x, const Factor<R>& y) { return (x.form <=> y.form) < 0; });
    FactorList merged;
    for (auto& f : factors_) {
      if (!merged.empty() && merged.back().form == f.form) {
        auto& m = merged.back();
        m.power += f.power;
        if (m.origin != f.origin) {
          if (m.origin.kind != Origin::Kind::plain && f.origin.kind != Origin::Kind::plain) {
            throw Error(ErrorKind::internal_corruption,
                        "form " + f.form.str() + " carries two origins");
          }
          if (m.origin.kind == Origin::Kind::plain) m.origin = f.origin;
        }
      } else {
        merged.push_back(std::move(f));
      }
    }
    std::erase_if(merged, [](const Factor<R>& f) { return f.power == 0; });
    factors_ = std::move(merged);
  }

  R coefficient_;
  FactorList factors_;
};

/// Sum of terms in the live variables z_v. Like terms (identical factor
/// lists) are combined; the representation is deterministic.
template <CoefficientRing R>
class RatExpr {
 public:
  using FactorList = typename Term<R>::FactorList;

  struct FactorListLess {
    bool operator()(const FactorList& a, const FactorList& b) const {
      return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end()) < 0;
    }
  };

  RatExpr() = default;
  explicit RatExpr(std::set<int> live_vars) : live_vars_(std::move(live_vars)) {}
  RatExpr(std::set<int> live_vars, const Term<R>& t) : live_vars_(std::move(live_vars)) { add(t); }

  /// live variables 0..n-1
  static std::set<int> vars_upto(int n) {
    std::set<int> out;
    for (int v = 0; v < n; ++v) out.insert(v);
    return out;
  }

  const std::set<int>& live_vars() const { return live_vars_; }
  void set_live_vars(std::set<int> vars) { live_vars_ = std::move(vars); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::vector<Term<R>> terms() const {
    std::vector<Term<R>> out;
    out.reserve(terms_.size());
    for (const auto& [factors, c] : terms_) out.emplace_back(c, factors);
    return out;
  }

  void add(const Term<R>& t) {
    if (t.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(t.factors(), t.coefficient());
    if (!inserted) {
      it->second = it->second + t.coefficient();
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RatExpr& operator+=(const RatExpr& o) {
    for (const auto& [factors, c] : o.terms_) add(Term<R>(c, factors));
    return *this;
  }
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }

  RatExpr scaled(const R& s) const {
    RatExpr out(live_vars_);
    for (const auto& [factors, c] : terms_) out.add(Term<R>(c * s, factors));
    return out;
  }

  friend RatExpr operator*(const RatExpr& a, const Term<R>& t) {
    RatExpr out(a.live_vars_);
    for (const auto& [factors, c] : a.terms_) out.add(Term<R>(c, factors) * t);
    return out;
  }

  friend RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    std::set<int> vars = a.live_vars_;
    vars.insert(b.live_vars_.begin(), b.live_vars_.end());
    RatExpr out(std::move(vars));
    for (const auto& [fa, ca] : a.terms_) {
      for (const auto& [fb, cb] : b.terms_) out.add(Term<R>(ca, fa) * Term<R>(cb, fb));
    }
    return out;
  }

  /// Common total degree of all terms.
  int homogeneity_degree() const {
    if (terms_.empty()) {
      throw Error(ErrorKind::invalid_operand, "homogeneity degree of the zero expression");
    }
    std::optional<int> deg;
    for (const auto& [factors, c] : terms_) {
      int d = Term<R>(c, factors).degree();
      if (deg && *deg != d) {
        throw Error(ErrorKind::internal_corruption, "non-homogeneous expression");
      }
      deg = d;
    }
    return *deg;
  }

  /// The scalar value of an expression with no factors left.
  std::optional<R> constant_value() const {
    R sum(Rational(0));
    for (const auto& [factors, c] : terms_) {
      if (!factors.empty()) return std::nullopt;
      sum = sum + c;
    }
    return sum;
  }

  /// Deterministic text form: one term per line in factor-list order.
  std::string str() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto& [factors, c] : terms_) os << Term<R>(c, factors).str() << "\n";
    return os.str();
  }

 private:
  std::set<int> live_vars_;
  std::map<FactorList, R, FactorListLess> terms_;
};

/// Value of e at the point z_v = point[v]. Every variable of every
/// factor must be assigned; a vanishing denominator is an invalid operand.
template <CoefficientRing R>
R evaluate(const RatExpr<R>& e, const std::map<int, R>& point) {
  R sum(Rational(0));
  for (const auto& t : e.terms()) {
    R value = t.coefficient();
    for (const auto& f : t.factors()) {
      R form_value(Rational(0));
      for (const auto& [v, c] : f.form.entries()) {
        auto it = point.find(v);
        if (it == point.end()) {
          throw Error(ErrorKind::invalid_operand, "no value for z" + std::to_string(v));
        }
        form_value = form_value + c * it->second;
      }
      if (f.power < 0 && !is_unit(form_value)) {
        throw Error(ErrorKind::invalid_operand, "denominator vanishes at the evaluation point");
      }
      value = value * power(form_value, f.power);
    }
    sum = sum + value;
  }
  return sum;
}

/// Sparse multivariate polynomial, used to expand numerator products.
template <CoefficientRing R>
class Polynomial {
 public:
  using Exponents = std::vector<int>;  // indexed by variable

  Polynomial() = default;
  explicit Polynomial(const R& c) { add({}, c); }

  static Polynomial from_form(const LinearForm<R>& f) {
    Polynomial p;
    for (const auto& [v, c] : f.entries()) {
      Exponents e(static_cast<std::size_t>(v) + 1, 0);
      e[v] = 1;
      p.add(e, c);
    }
    return p;
  }

  /// Expands a term whose factors all have nonnegative power.
  static Polynomial expand(const Term<R>& t) {
    Polynomial p(t.coefficient());
    for (const auto& f : t.factors()) {
      if (f.power < 0) {
        throw Error(ErrorKind::invalid_operand, "expanding a term with a denominator");
      }
      const Polynomial base = from_form(f.form);
      for (int n = 0; n < f.power; ++n) p = p * base;
    }
    return p;
  }

  const std::map<Exponents, R>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }

  R coefficient(Exponents e) const {
    trim(e);
    auto it = monomials_.find(e);
    return it == monomials_.end() ? R(Rational(0)) : it->second;
  }

  void add(Exponents e, const R& c) {
    trim(e);
    if (c.is_zero()) return;
    auto [it, inserted] = monomials_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) monomials_.erase(it);
    }
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    for (const auto& [e, c] : b.monomials_) a.add(e, c);
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    for (const auto& [e, c] : b.monomials_) a.add(e, -c);
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.monomials_) {
      for (const auto& [eb, cb] : b.monomials_) {
        Exponents e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t t = 0; t < ea.size(); ++t) e[t] += ea[t];
        for (std::size_t t = 0; t < eb.size(); ++t) e[t] += eb[t];
        out.add(std::move(e), ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return (a - b).is_zero(); }

 private:
  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  std::map<Exponents, R> monomials_;
};

}  // namespace qmr
