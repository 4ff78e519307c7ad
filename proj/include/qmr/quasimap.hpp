#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmr/eps_series.hpp"
#include "qmr/error.hpp"
#include "qmr/rat_expr.hpp"
#include "qmr/rational.hpp"
#include "qmr/residue.hpp"

namespace qmr {

enum class Regime { fano, general };

inline std::string_view to_string(Regime r) { return r == Regime::fano ? "fano" : "general"; }

inline Regime regime_for(int N, int k) { return N > k ? Regime::fano : Regime::general; }

/// Parameters of one intersection number on CP^{N-1} with a degree-k
/// hypersurface, map degree d and descendant level j. In series mode `j`
/// is the largest level requested.
struct Query {
  int N = 2;
  int k = 1;
  int d = 1;
  int j = 0;
  Regime regime = Regime::fano;

  static Query make(int N, int k, int d, int j) { return Query{N, k, d, j, regime_for(N, k)}; }

  /// Exponent 1 + (k - N) d of the general-type insertions.
  int m() const { return 1 + (k - N) * d; }

  void validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_query, why); };
    if (N < 2) fail("N must be >= 2");
    if (k < 1) fail("k must be >= 1");
    if (d < 1) fail("d must be >= 1");
    if (j < 0) fail("j must be >= 0");
    if (regime == Regime::fano && !(N > k)) fail("fano regime requires N > k");
    if (regime == Regime::general && !(N <= k)) fail("general regime requires N <= k");
    if (regime == Regime::general && m() < 1) fail("m = 1 + (k-N)d must be >= 1");
  }

  Query with_j(int jj) const {
    Query q = *this;
    q.j = jj;
    return q;
  }

  friend bool operator==(const Query&, const Query&) = default;
};

enum class Evaluator { direct, cascade };

inline std::string_view to_string(Evaluator e) { return e == Evaluator::direct ? "direct" : "cascade"; }

struct IntersectionResult {
  Query query;
  Rational lhs;
  Rational lhs_over_k;
  Rational rhs;
  bool match = false;
  Evaluator evaluator = Evaluator::direct;
};

namespace detail {

template <CoefficientRing R>
LinearForm<R> form2(int u, long cu, int v, long cv) {
  using E = typename LinearForm<R>::Entry;
  return LinearForm<R>(std::vector<E>{E{u, R(Rational(cu))}, E{v, R(Rational(cv))}});
}

// z_1 - z_0
template <CoefficientRing R>
LinearForm<R> diff10() {
  return form2<R>(0, -1, 1, 1);
}

}  // namespace detail

/// e^k(z_u, z_v) = prod_{j=0}^{k} (j z_u + (k-j) z_v) as a product of
/// linear factors.
template <CoefficientRing R>
Term<R> ek_factor(int u, int v, int k) {
  std::vector<Factor<R>> factors;
  for (int j = 0; j <= k; ++j) {
    factors.push_back(Factor<R>{detail::form2<R>(u, j, v, k - j), Origin::plain(), 1});
  }
  return Term<R>(R(Rational(1)), std::move(factors));
}

namespace detail {

// prod_l e^k(z_{l-1}, z_l) / [prod_l z_l^N * prod_{l=1}^{d-1} k z_l (2 z_l - z_{l-1} - z_{l+1})]
template <CoefficientRing R>
Term<R> common_integrand(const Query& q) {
  Term<R> t(power(R(Rational(q.k)), -(q.d - 1)));
  for (int l = 1; l <= q.d; ++l) t = t * ek_factor<R>(l - 1, l, q.k);
  for (int l = 0; l <= q.d; ++l) t = t * Term<R>::variable_power(l, -q.N);
  for (int l = 1; l <= q.d - 1; ++l) {
    using E = typename LinearForm<R>::Entry;
    LinearForm<R> node(std::vector<E>{E{l - 1, R(Rational(-1))}, E{l, R(Rational(2))},
                                      E{l + 1, R(Rational(-1))}});
    t = t * Term<R>::variable_power(l, -1) * Term<R>::form_power(node, -1, Origin::node(l));
  }
  return t;
}

// z_0^{N-2-j} (z_1 - z_0)^{b}
template <CoefficientRing R>
Term<R> insertion(int z0_power, int diff_power) {
  return Term<R>::variable_power(0, z0_power) * Term<R>::form_power(diff10<R>(), diff_power);
}

inline void require_regime(const Query& q, Regime r) {
  q.validate();
  if (q.regime != r) {
    throw Error(ErrorKind::invalid_query,
                std::string("query is in the ") + std::string(to_string(q.regime)) + " regime");
  }
}

}  // namespace detail

/// Integrand of the N > k intersection number at level q.j.
template <CoefficientRing R = Rational>
RatExpr<R> build_integrand_fano(const Query& q) {
  detail::require_regime(q, Regime::fano);
  const Term<R> t = detail::common_integrand<R>(q) *
                    detail::insertion<R>(q.N - 2 - q.j, (q.N - q.k) * q.d + q.j - 1);
  return RatExpr<R>(RatExpr<R>::vars_upto(q.d + 1), t);
}

/// Integrand of the N <= k intersection number at level q.j, with
/// (d + z_0/(z_1 - z_0))^m expanded binomially.
template <CoefficientRing R = Rational>
RatExpr<R> build_integrand_general(const Query& q) {
  detail::require_regime(q, Regime::general);
  const int m = q.m();
  const Term<R> base = detail::common_integrand<R>(q) * detail::insertion<R>(q.N - 2 - q.j, q.j) *
                       Term<R>::variable_power(q.d, -m);
  RatExpr<R> out(RatExpr<R>::vars_upto(q.d + 1));
  for (int i = 0; i <= m; ++i) {
    const R weight(binomial(m, i) * power(Rational(q.d), m - i));
    out.add((base * detail::insertion<R>(i, -i)).scaled(weight));
  }
  return out;
}

template <CoefficientRing R = Rational>
RatExpr<R> build_integrand(const Query& q) {
  return q.regime == Regime::fano ? build_integrand_fano<R>(q) : build_integrand_general<R>(q);
}

/// w(...) at the fixed level q.j by per-level residues over the rationals.
inline Rational eval_direct(const Query& q) {
  return iterated_residue(build_integrand<Rational>(q), PolePrescription::quasimap(q.d));
}

/// Generating function sum_j w(...; j) eps^j mod eps^{jmax+1}, from one
/// pass over the eps-deformed integrand (simple pole at z_0 = eps z_1/(1+eps)).
inline EpsSeries eval_cascade(const Query& q, int jmax) {
  if (jmax < 0) throw Error(ErrorKind::invalid_query, "jmax must be >= 0");
  const Query base = q.with_j(0);
  const EpsSeries eps = EpsSeries::epsilon(jmax);
  const EpsSeries one(Rational(1));
  using E = LinearForm<EpsSeries>::Entry;
  // z_0 / ((1 + eps) z_0 - eps z_1) = sum_j ((z_1 - z_0)/z_0)^j eps^j
  const LinearForm<EpsSeries> displaced(std::vector<E>{E{0, one + eps}, E{1, -eps}});
  const Term<EpsSeries> deformation = Term<EpsSeries>::variable_power(0, 1) *
                                      Term<EpsSeries>::form_power(displaced, -1, Origin::deformation());
  const RatExpr<EpsSeries> integrand = build_integrand<EpsSeries>(base) * deformation;
  EpsSeries value = iterated_residue(integrand, PolePrescription::quasimap(q.d));
  return value * EpsSeries(std::vector<Rational>{Rational(1)}, jmax);
}

/// prod_{r=1}^{kd} (r + k eps) / prod_{r=1}^{d} (r + eps)^N mod eps^{jmax+1}.
inline EpsSeries hypergeom_series(int N, int k, int d, int jmax) {
  if (N < 2 || k < 1 || d < 0 || jmax < 0) {
    throw Error(ErrorKind::invalid_query, "hypergeometric series needs N >= 2, k >= 1, d >= 0");
  }
  const EpsSeries eps = EpsSeries::epsilon(jmax);
  EpsSeries num(std::vector<Rational>{Rational(1)}, jmax);
  for (int r = 1; r <= k * d; ++r) num = num * (EpsSeries(Rational(r)) + eps * EpsSeries(Rational(k)));
  EpsSeries den(std::vector<Rational>{Rational(1)}, jmax);
  for (int r = 1; r <= d; ++r) {
    const EpsSeries f = EpsSeries(Rational(r)) + eps;
    for (int n = 0; n < N; ++n) den = den * f;
  }
  return num / den;
}

/// w(sigma_{j'}(O_{h^{N-2-j'}}) O_{h^{-m}})_{0,d}: the general-regime
/// integrand with the (d + z_0/(z_1 - z_0))^m factor dropped.
inline Rational formal_two_point(const Query& q, int jprime) {
  detail::require_regime(q, Regime::general);
  if (jprime < 0) throw Error(ErrorKind::invalid_query, "j' must be >= 0");
  const Term<Rational> t = detail::common_integrand<Rational>(q) *
                           detail::insertion<Rational>(q.N - 2 - jprime, jprime) *
                           Term<Rational>::variable_power(q.d, -q.m());
  return iterated_residue(RatExpr<Rational>(RatExpr<Rational>::vars_upto(q.d + 1), t),
                          PolePrescription::quasimap(q.d));
}

/// Iterated Hori reduction:
/// sum_{i=0}^{min(m,j)} C(m,i) d^{m-i} formal_two_point(j - i).
inline Rational hori_expand(const Query& q) {
  detail::require_regime(q, Regime::general);
  const int m = q.m();
  Rational sum(0);
  for (int i = 0; i <= std::min(m, q.j); ++i) {
    sum += binomial(m, i) * power(Rational(q.d), m - i) * formal_two_point(q, q.j - i);
  }
  return sum;
}

/// (kd)! / (d!)^N
inline Rational closed_form_j0(int N, int k, int d) {
  return factorial(static_cast<long>(k) * d) / power(factorial(d), N);
}

/// Compares direct residues, the cascade coefficients and the
/// hypergeometric coefficients for every level 0..q.j. Returns one record
/// per (level, evaluator); `match` requires all three values to agree.
inline std::vector<IntersectionResult> verify_theorem(const Query& q) {
  q.validate();
  const int jmax = q.j;
  const EpsSeries cascade = eval_cascade(q, jmax);
  const EpsSeries rhs = hypergeom_series(q.N, q.k, q.d, jmax);
  const Rational k(q.k);
  std::vector<IntersectionResult> out;
  for (int j = 0; j <= jmax; ++j) {
    const Query qj = q.with_j(j);
    const Rational direct = eval_direct(qj);
    const Rational from_cascade = cascade.coefficient(j);
    const Rational expected = rhs.coefficient(j);
    const bool all_equal = direct == from_cascade && direct / k == expected;
    out.push_back({qj, direct, direct / k, expected, all_equal, Evaluator::direct});
    out.push_back({qj, from_cascade, from_cascade / k, expected, all_equal, Evaluator::cascade});
  }
  return out;
}

}  // namespace qmr
