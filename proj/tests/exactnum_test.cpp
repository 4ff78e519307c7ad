#include <random>

#include <gtest/gtest.h>

#include "qmr/eps_series.hpp"
#include "qmr/rational.hpp"
#include "qmr/ring.hpp"

namespace qmr {
namespace {

EpsSeries series(std::vector<Rational> c, int order) { return EpsSeries(std::move(c), order); }

TEST(Rational, SmallArithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(2, 3), Rational(-2, 3));
}

TEST(Rational, CanonicalForm) {
  const Rational r(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  const Rational zero(0, -7);
  EXPECT_EQ(zero.numerator(), 0);
  EXPECT_EQ(zero.denominator(), 1);
}

TEST(Rational, Serialization) {
  EXPECT_EQ(Rational(-3, 6).str(), "-1/2");
  EXPECT_EQ(Rational(8, 4).str(), "2");
  EXPECT_EQ(Rational(0).str(), "0");
  EXPECT_EQ(Rational("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational("7"), Rational(7));
  EXPECT_THROW(Rational("1/0"), Error);
  EXPECT_THROW(Rational("abc"), Error);
}

TEST(Rational, DivisionByZeroIsInvalidOperand) {
  try {
    (void)(Rational(1) / Rational(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_operand);
  }
  EXPECT_THROW((void)Rational(0).inverse(), Error);
}

TEST(Rational, GeneralizedBinomial) {
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(-4, 2), Rational(10));  // (-4)(-5)/2
  EXPECT_EQ(binomial(-1, 3), Rational(-1));
  EXPECT_EQ(binomial(3, 5), Rational(0));
  EXPECT_EQ(factorial(5), Rational(120));
}

TEST(EpsSeries, InverseSeriesIdentity) {
  // (1 + eps)(1 - eps + eps^2 - eps^3) = 1 mod eps^4
  const EpsSeries a = series({1, 1}, 3);
  const EpsSeries b = series({1, -1, 1, -1}, 3);
  EXPECT_EQ(a * b, EpsSeries(1));
  EXPECT_EQ(a.inverse(), b);
}

TEST(EpsSeries, InvertTwoPlusEps) {
  // long division: 1/(2 + e) = 1/2 - e/4 + e^2/8 - ...
  const EpsSeries inv = series({2, 1}, 2).inverse();
  EXPECT_EQ(inv.coefficient(0), Rational(1, 2));
  EXPECT_EQ(inv.coefficient(1), Rational(-1, 4));
  EXPECT_EQ(inv.coefficient(2), Rational(1, 8));
  EXPECT_EQ(inv.order(), 2);
}

TEST(EpsSeries, CoefficientExtraction) {
  const EpsSeries geo = series({1, 1}, 3).inverse();
  EXPECT_EQ(geo.coefficient(1), Rational(-1));
  EXPECT_EQ(series({Rational(7, 3), 5}, 2).coefficient(0), Rational(7, 3));
  // (1 + e)^{-4}: coefficient 2 is C(5,2) = 10 by the negative binomial expansion
  const EpsSeries p = power(series({1, 1}, 4), -4);
  EXPECT_EQ(p.coefficient(2), Rational(10));
  EXPECT_EQ(p.coefficient(2), binomial(4 + 2 - 1, 2));
}

TEST(EpsSeries, CoefficientBeyondTruncation) {
  const EpsSeries s = series({1, 2, 3}, 2);
  try {
    (void)s.coefficient(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation_exceeded);
  }
  EXPECT_THROW((void)s.coefficient(-1), Error);
}

TEST(EpsSeries, NonUnitInversionIsInvalidOperand) {
  try {
    (void)EpsSeries::epsilon(3).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_operand);
  }
}

TEST(EpsSeries, MismatchedOrdersTruncateToSmaller) {
  const EpsSeries a = series({1, 1, 1, 1}, 3);
  const EpsSeries b = series({1, 1}, 1);
  EXPECT_EQ((a * b).order(), 1);
  EXPECT_EQ((a + b).order(), 1);
  EXPECT_EQ((a + EpsSeries(Rational(5))).order(), 3);
}

// --- properties on random inputs ------------------------------------------

EpsSeries random_series(std::mt19937_64& rng, int order, bool unit) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> c;
  for (int t = 0; t <= order; ++t) c.emplace_back(num(rng), den(rng));
  if (unit && c[0].is_zero()) c[0] = Rational(1);
  return EpsSeries(std::move(c), order);
}

TEST(EpsSeriesProperty, RingAxioms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int J = 1 + trial % 6;
    const auto a = random_series(rng, J, false);
    const auto b = random_series(rng, J, false);
    const auto c = random_series(rng, J, false);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, EpsSeries(0));
  }
}

TEST(EpsSeriesProperty, InverseOfUnitPolynomial) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int J = trial % 8;
    const auto p = random_series(rng, J, true);
    const auto inv = p.inverse();
    EXPECT_EQ(p * inv, EpsSeries(1));
    EXPECT_EQ((p * inv).coefficient(0), Rational(1));
    for (int t = 1; t <= J; ++t) EXPECT_TRUE((p * inv).coefficient(t).is_zero());
  }
}

TEST(RationalProperty, CanonicalAfterEveryOperation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    long q = dist(rng);
    if (q == 0) q = 1;
    const Rational r = Rational(dist(rng), q) * Rational(dist(rng), 7) + Rational(1, q);
    EXPECT_GT(r.denominator(), 0);
    mpz_class g;
    mpz_class n = abs(r.numerator());
    mpz_class d = r.denominator();
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    EXPECT_TRUE(g == 1 || (r.is_zero() && d == 1));
  }
}

TEST(RationalProperty, FieldAxioms) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-50, 50);
  auto draw = [&] {
    long q = dist(rng);
    return Rational(dist(rng), q == 0 ? 1 : q);
  };
  for (int trial = 0; trial < 300; ++trial) {
    const Rational a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Rational(1));
  }
}

}  // namespace
}  // namespace qmr
