#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/linear_form.hpp"
#include "qmr/rat_expr.hpp"
#include "qmr/ring.hpp"

namespace qmr {

/// Which poles the iterated residue collects at each integration step.
/// z_i = 0 is always taken; in addition a denominator factor contributes
/// its root when its origin tag is selected for that step.
class PolePrescription {
 public:
  /// Residues at z_i = 0 only.
  static PolePrescription zeros_only() { return PolePrescription(-1); }

  /// The quasimap rule for d+1 variables: node(i) roots at step i for
  /// 1 <= i <= d-1, and the deformation root at step 0.
  static PolePrescription quasimap(int d) { return PolePrescription(d); }

  bool takes_root(int step, const Origin& origin) const {
    if (d_ < 0) return false;
    switch (origin.kind) {
      case Origin::Kind::plain: return false;
      case Origin::Kind::deformation: return step == 0;
      case Origin::Kind::node: return origin.index == step && step >= 1 && step <= d_ - 1;
    }
    return false;
  }

 private:
  explicit PolePrescription(int d) : d_(d) {}
  int d_;
};

namespace detail {

template <CoefficientRing R>
void require_live(const RatExpr<R>& e, int v) {
  if (!e.live_vars().contains(v)) {
    throw Error(ErrorKind::invalid_operand, "z" + std::to_string(v) + " is not a live variable");
  }
}

inline std::set<int> without_var(std::set<int> vars, int v) {
  vars.erase(v);
  return vars;
}

// A factor (a*u + S)^e expanded in u around u = 0: the u^n coefficient is
// weights[n] * monic^(e-n), where S = scale * monic.
template <CoefficientRing R>
struct ExpandedFactor {
  LinearForm<R> monic;
  Origin origin;
  int power;
  std::vector<R> weights;
  int max_order;  // largest n with a nonzero weight (bounded by e when e >= 0)
};

template <CoefficientRing R>
void enumerate_orders(const std::vector<ExpandedFactor<R>>& parts, std::size_t at, int remaining,
                      const std::vector<int>& capacity_after, const R& coefficient,
                      std::vector<Factor<R>>& factors, RatExpr<R>& out) {
  if (at == parts.size()) {
    if (remaining == 0) out.add(Term<R>(coefficient, factors));
    return;
  }
  if (capacity_after[at] < remaining) return;
  const auto& p = parts[at];
  const int top = std::min(remaining, p.max_order);
  for (int n = 0; n <= top; ++n) {
    if (p.weights[n].is_zero()) continue;
    factors.push_back(Factor<R>{p.monic, p.origin, p.power - n});
    enumerate_orders(parts, at + 1, remaining - n, capacity_after, coefficient * p.weights[n], factors,
                     out);
    factors.pop_back();
  }
}

}  // namespace detail

/// Residue of a single term in z_i at z_i = root (root is a linear form in
/// the other variables; the zero form means z_i = 0). Every factor that
/// vanishes at the root joins one merged pole; the remaining factors are
/// Taylor-expanded around it and the coefficient of (z_i - root)^(-1) is
/// accumulated into `out`.
template <CoefficientRing R>
void add_term_residue(const Term<R>& term, int i, const LinearForm<R>& root, RatExpr<R>& out) {
  R coefficient = term.coefficient();
  std::vector<Factor<R>> fixed;
  struct Moving {
    const Factor<R>* factor;
    R slope;
    LinearForm<R> at_root;
  };
  std::vector<Moving> moving;
  int pole_power = 0;  // net power of (z_i - root)

  for (const auto& f : term.factors()) {
    R slope = f.form.coefficient(i);
    if (slope.is_zero()) {
      fixed.push_back(f);
      continue;
    }
    LinearForm<R> at_root = f.form.without(i) + root.scaled(slope);
    if (at_root.is_zero()) {
      if (f.power < 0 && !is_unit(slope)) {
        throw Error(ErrorKind::non_invertible_pole_coefficient,
                    "colliding form " + f.form.str() + " has a non-unit slope");
      }
      coefficient = coefficient * power(slope, f.power);
      pole_power += f.power;
      continue;
    }
    moving.push_back({&f, std::move(slope), std::move(at_root)});
  }

  const int target = -1 - pole_power;
  if (target < 0) return;

  std::vector<detail::ExpandedFactor<R>> parts;
  parts.reserve(moving.size());
  for (auto& m : moving) {
    const int e = m.factor->power;
    auto [scale, monic] = m.at_root.canonical();
    detail::ExpandedFactor<R> part{std::move(monic), m.factor->origin, e, {}, 0};
    part.max_order = e >= 0 ? std::min(e, target) : target;
    part.weights.reserve(static_cast<std::size_t>(part.max_order) + 1);
    R slope_pow(Rational(1));
    for (int n = 0; n <= part.max_order; ++n) {
      const int rest = e - n;
      if (rest < 0 && !is_unit(scale)) {
        throw Error(ErrorKind::non_invertible_pole_coefficient,
                    "form " + m.at_root.str() + " has no unit coefficient");
      }
      part.weights.push_back(slope_pow * power(scale, rest) * R(binomial(e, n)));
      slope_pow = slope_pow * m.slope;
    }
    parts.push_back(std::move(part));
  }

  // capacity_after[t] = largest total order the parts t.. can absorb
  std::vector<int> capacity_after(parts.size() + 1, 0);
  for (std::size_t t = parts.size(); t-- > 0;) {
    const long cap = static_cast<long>(capacity_after[t + 1]) + parts[t].max_order;
    capacity_after[t] = static_cast<int>(std::min<long>(cap, target));
  }

  std::vector<Factor<R>> factors = fixed;
  detail::enumerate_orders(parts, 0, target, capacity_after, coefficient, factors, out);
}

/// Replaces z_i by the linear form `value` (which must not involve z_i).
template <CoefficientRing R>
RatExpr<R> substitute(const RatExpr<R>& e, int i, const LinearForm<R>& value) {
  detail::require_live(e, i);
  if (value.involves(i)) {
    throw Error(ErrorKind::invalid_operand, "substituted value involves the eliminated variable");
  }
  RatExpr<R> out(detail::without_var(e.live_vars(), i));
  for (const auto& t : e.terms()) {
    std::vector<Factor<R>> factors;
    factors.reserve(t.factors().size());
    for (const auto& f : t.factors()) {
      factors.push_back(Factor<R>{f.form.substituted(i, value), f.origin, f.power});
    }
    out.add(Term<R>(t.coefficient(), std::move(factors)));
  }
  return out;
}

/// z_i -> c * z_t
template <CoefficientRing R>
RatExpr<R> substitute(const RatExpr<R>& e, int i, const R& c, int t) {
  detail::require_live(e, t);
  if (t == i) throw Error(ErrorKind::invalid_operand, "substitution target equals variable");
  return substitute(e, i, LinearForm<R>{std::pair<int, R>{t, c}});
}

/// Coefficient of z_i^(-1) in the Laurent expansion around z_i = 0.
template <CoefficientRing R>
RatExpr<R> residue_at_zero(const RatExpr<R>& e, int i) {
  detail::require_live(e, i);
  RatExpr<R> out(detail::without_var(e.live_vars(), i));
  const LinearForm<R> origin_point;
  for (const auto& t : e.terms()) add_term_residue(t, i, origin_point, out);
  return out;
}

/// The root z_i = value of a form linear in z_i.
template <CoefficientRing R>
LinearForm<R> root_of(const LinearForm<R>& f, int i) {
  const R a = f.coefficient(i);
  if (a.is_zero()) {
    throw Error(ErrorKind::invalid_operand, "form " + f.str() + " does not involve z" + std::to_string(i));
  }
  if (!is_unit(a)) {
    throw Error(ErrorKind::non_invertible_pole_coefficient,
                "z" + std::to_string(i) + "-coefficient of " + f.str() + " is not invertible");
  }
  return f.without(i).scaled(-a.inverse());
}

/// Residue in z_i at the root of f, with every factor vanishing there
/// merged into a single higher-order pole.
template <CoefficientRing R>
RatExpr<R> residue_at_form_root(const RatExpr<R>& e, int i, const LinearForm<R>& f) {
  detail::require_live(e, i);
  const LinearForm<R> root = root_of(f, i);
  RatExpr<R> out(detail::without_var(e.live_vars(), i));
  for (const auto& t : e.terms()) add_term_residue(t, i, root, out);
  return out;
}

/// One integration step: sum of residues over the prescribed pole set.
template <CoefficientRing R>
RatExpr<R> residue_step(const RatExpr<R>& e, int i, const PolePrescription& rule) {
  detail::require_live(e, i);
  RatExpr<R> out(detail::without_var(e.live_vars(), i));
  const LinearForm<R> origin_point;
  for (const auto& t : e.terms()) {
    add_term_residue(t, i, origin_point, out);
    std::vector<LinearForm<R>> roots;
    for (const auto& f : t.factors()) {
      if (f.power >= 0 || !f.form.involves(i) || f.form.size() < 2) continue;
      if (!rule.takes_root(i, f.origin)) continue;
      LinearForm<R> root = root_of(f.form, i);
      if (std::find(roots.begin(), roots.end(), root) != roots.end()) continue;
      add_term_residue(t, i, root, out);
      roots.push_back(std::move(root));
    }
  }
  return out;
}

/// Integrates z_0, z_1, ..., z_d in ascending order and returns the
/// resulting constant.
template <CoefficientRing R>
R iterated_residue(const RatExpr<R>& e, const PolePrescription& rule) {
  const auto& vars = e.live_vars();
  if (vars.empty()) {
    throw Error(ErrorKind::invalid_operand, "no live variables");
  }
  const int d = *vars.rbegin();
  if (*vars.begin() != 0 || static_cast<int>(vars.size()) != d + 1) {
    throw Error(ErrorKind::invalid_operand, "live variables must be z_0..z_d");
  }
  RatExpr<R> state = e;
  for (int i = 0; i <= d; ++i) {
    state = residue_step(state, i, rule);
    if (state.is_zero()) return R(Rational(0));
  }
  auto value = state.constant_value();
  if (!value) {
    throw Error(ErrorKind::prescription_violation, "iterated residue left a non-constant result");
  }
  return *value;
}

}  // namespace qmr
