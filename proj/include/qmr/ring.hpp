#pragma once

#include <concepts>

#include "qmr/eps_series.hpp"
#include "qmr/rational.hpp"

namespace qmr {

/// Coefficient ring used by the residue engine. Both Rational and
/// EpsSeries model it, so the same pipeline runs with or without the
/// eps-deformation.
template <typename R>
concept CoefficientRing = std::regular<R> && std::constructible_from<R, Rational> &&
                          requires(const R& a, const R& b) {
                            { a + b } -> std::convertible_to<R>;
                            { a - b } -> std::convertible_to<R>;
                            { a * b } -> std::convertible_to<R>;
                            { -a } -> std::convertible_to<R>;
                            { a.is_zero() } -> std::convertible_to<bool>;
                            { a.inverse() } -> std::convertible_to<R>;
                            { a <=> b };
                          };

inline bool is_unit(const Rational& r) { return !r.is_zero(); }
inline bool is_unit(const EpsSeries& s) { return s.is_unit(); }

/// r^e for any integer e; negative powers require r to be a unit.
template <CoefficientRing R>
R power(const R& r, long e) {
  R base = e < 0 ? r.inverse() : r;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  R out(Rational(1));
  while (n != 0) {
    if (n & 1UL) out = out * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return out;
}

static_assert(CoefficientRing<Rational>);
static_assert(CoefficientRing<EpsSeries>);

}  // namespace qmr
