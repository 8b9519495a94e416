#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace orbitgauge;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("99/70"), Rational(99, 70));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("17"), Rational(17));
  EXPECT_EQ(Rational::parse("-2.75"), Rational(-11, 4));
  EXPECT_EQ(Rational::parse("1e-3"), Rational(1, 1000));
  EXPECT_EQ(Rational::parse("0.5E2"), Rational(50));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.2.3", "--1", "1e", "/3"}) {
    try {
      Rational::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Rational, RoundTripsThroughStr) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational q = oracle::rand_rational(rng, -1000, 1000, 97);
    EXPECT_EQ(Rational::parse(q.str()), q);
  }
}

TEST(Rational, FloorStrict) {
  auto f = floor_strict(Rational(7, 2));
  EXPECT_EQ(f.floor, 3);
  EXPECT_FALSE(f.is_integer);
  f = floor_strict(Rational(-27, 10));
  EXPECT_EQ(f.floor, -3);
  EXPECT_FALSE(f.is_integer);
  f = floor_strict(Rational(4, 2));
  EXPECT_EQ(f.floor, 2);
  EXPECT_TRUE(f.is_integer);
}

TEST(Rational, CmpPower) {
  EXPECT_EQ(cmp_power(Rational(1, 2), Rational(1, 2), 1), std::strong_ordering::equal);
  EXPECT_EQ(cmp_power(Rational(0), Rational(5), 3), std::strong_ordering::less);
  EXPECT_EQ(cmp_power(Rational(3, 2), Rational(2), 2), std::strong_ordering::greater);
  EXPECT_EQ(cmp_power(Rational(-1), Rational(2), 2), std::strong_ordering::less);
  EXPECT_THROW(cmp_power(Rational(1), Rational(0), 2), Error);
  EXPECT_THROW(cmp_power(Rational(1), Rational(2), 0), Error);
}

TEST(Rational, RootBracketEnclosesTheRoot) {
  for (long m : {2L, 3L, 5L}) {
    for (const Rational& y : {Rational(2), Rational(1, 7), Rational(1000001, 3)}) {
      const RootBracket b = root_bracket(y, m);
      EXPECT_LE(pow(b.lo, m), y);
      EXPECT_GE(pow(b.hi, m), y);
      EXPECT_LE(b.hi - b.lo, b.lo * pow(Rational(2), -64));
    }
  }
  EXPECT_EQ(exact_root(Rational(27, 8), 3), Rational(3, 2));
  EXPECT_FALSE(exact_root(Rational(2), 2).has_value());
}

TEST(Rational, PowHandlesNegativeExponents) {
  EXPECT_EQ(pow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(pow(Rational(5), 0), Rational(1));
}

TEST(Extended, OrdersInfinityAboveEverything) {
  EXPECT_LT(Extended(Rational(1000000)), Extended::infinity());
  EXPECT_EQ(Extended::parse("inf"), Extended::infinity());
  EXPECT_EQ(Extended::parse("3/4").value(), Rational(3, 4));
  EXPECT_EQ((Extended::infinity() / Rational(2)), Extended::infinity());
  EXPECT_THROW(Extended::infinity().value(), Error);
}

TEST(Expbounds, BracketContainsKnownValues) {
  // e = 2.718281828459045...
  const ExpBracket e = exp_bracket(Rational(1), 30);
  EXPECT_LT(e.lo, Rational(2718281828459046LL, 1000000000000000LL));
  EXPECT_GT(e.hi, Rational(2718281828459045LL, 1000000000000000LL));
  EXPECT_EQ(exp_cmp(Rational(1), Rational(27, 10)), std::strong_ordering::greater);
  EXPECT_EQ(exp_cmp(Rational(-1), Rational(9, 25)), std::strong_ordering::greater);
  EXPECT_EQ(exp_cmp(Rational(-1), Rational(37, 100)), std::strong_ordering::less);
}

TEST(Expbounds, SurrogateTableChecksClaims) {
  // |log(9/25) + 1| = 0.0216... so 1/40 holds and 1/100 does not
  EXPECT_NO_THROW(SurrogateTable::from_entries({{Rational(1), Rational(9, 25), Rational(1, 40)}}));
  EXPECT_THROW(SurrogateTable::from_entries({{Rational(1), Rational(9, 25), Rational(1, 100)}}), Error);
  const SurrogateEntry g = SurrogateTable::generate(Rational(3, 2));
  EXPECT_TRUE(log_error_holds(g.x, g.value, g.log_error));
  EXPECT_LT(g.log_error, Rational(1, 100000000));
}
