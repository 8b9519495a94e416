#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace orbitgauge;

namespace {

const EllipsoidSpec kSquare{{Rational(1), Rational(1)}};

}  // namespace

TEST(Dirichlet, OneDimensionalWindow) {
  const DirichletWitness w = dirichlet_tuple(kSquare, BigInt(5));
  ASSERT_EQ(w.p.size(), 1u);
  EXPECT_EQ(w.p[0], 5);
  EXPECT_EQ(w.lo, Rational(124, 25));
  EXPECT_EQ(w.hi, Rational(5));
}

TEST(Dirichlet, SmallestWindowIsNonempty) {
  const DirichletWitness w = dirichlet_tuple(kSquare, BigInt(1));
  EXPECT_EQ(w.lo, Rational(0));
  EXPECT_EQ(w.hi, Rational(1));
}

TEST(Dirichlet, TwoDimensionalWindow) {
  const EllipsoidSpec a{{Rational(1), Rational(3, 2), Rational(1)}};
  const DirichletWitness w = dirichlet_tuple(a, BigInt(2));
  ASSERT_EQ(w.p.size(), 2u);
  EXPECT_EQ(w.p[0], 3);
  EXPECT_EQ(w.p[1], 2);
  EXPECT_EQ(w.hi, Rational(3));
  EXPECT_GE(w.lo, Rational(9, 4));
  EXPECT_LT(w.lo, w.hi);
}

TEST(Dirichlet, ApproximationInvariantHolds) {
  const EllipsoidSpec a{{Rational(1), Rational(99, 70), Rational(17, 12), Rational(1)}};
  for (long start : {1L, 10L, 100L, 1000L}) {
    const DirichletWitness w = dirichlet_tuple(a, BigInt(start));
    const std::size_t n = w.p.size();
    const Rational pn = Rational::from_integer(w.p[n - 1]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const Rational diff = abs(pn * a.a[n - 1] / a.a[j] - Rational::from_integer(w.p[j]));
      // |diff|^(n-1) <= 1/p_n
      EXPECT_LE(pow(diff, static_cast<long>(n) - 1), Rational(1) / pn);
    }
    EXPECT_LT(w.lo, w.hi);
  }
}

TEST(Dirichlet, WindowsAreUnbounded) {
  const EllipsoidSpec a{{Rational(1), Rational(99, 70), Rational(1)}};
  for (long M : {10L, 100L, 1000L}) EXPECT_GT(dirichlet_tuple(a, BigInt(M)).hi, Rational(M));
}

TEST(Dirichlet, CeilingExhausted) {
  const EllipsoidSpec a{{Rational(1), Rational(99, 70), Rational(17, 12), Rational(1)}};
  try {
    dirichlet_tuple(a, BigInt(50), 10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchExhausted);
  }
}

TEST(Dirichlet, OneDimensionalWindowsAreDisjointWhenRatioIsLarge) {
  // a_1/a_2 > 2^(1/3)
  const EllipsoidSpec a{{Rational(3, 2), Rational(1)}};
  ASSERT_GT(Rational(27, 8), Rational(2));
  for (long r = 1; r < 40; ++r) {
    const DirichletWitness w1 = dirichlet_tuple(a, BigInt(r));
    const DirichletWitness w2 = dirichlet_tuple(a, BigInt(r + 1));
    if (w1.hi == w2.hi) continue;
    EXPECT_LE(w1.hi, w2.lo);
  }
}

TEST(CertifyBeta, MarginAndOpenEndpoints) {
  const DirichletWitness w = dirichlet_tuple(kSquare, BigInt(3));
  EXPECT_EQ(w.lo, Rational(26, 9));
  const BetaCertificate c = certify_beta(kSquare, Rational(299, 100), w);
  ASSERT_EQ(c.margins.size(), 1u);
  EXPECT_EQ(c.margins[0], Rational(1, 100));
  try {
    certify_beta(kSquare, Rational(3), w);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideWindow);
  }
}

TEST(CertifyBeta, IntegerRatioIsDegenerate) {
  const EllipsoidSpec a{{Rational(1), Rational(2)}};
  // p = 5 gives p a_1/a_2 = 5/2, above every beta tried here
  const DirichletWitness w{{BigInt(5)}, Rational(19, 10), Rational(5, 2), Rational(3, 5)};
  try {
    certify_beta(a, Rational(2) - Rational(1, 1000000), w);
  } catch (const Error&) {
    ADD_FAILURE() << "non-integral ratio rejected";
  }
  try {
    certify_beta(a, Rational(2), w);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
  }
}

TEST(CertifyBeta, RandomBetasInsideWindows) {
  std::mt19937_64 rng(3);
  const std::vector<EllipsoidSpec> bases{kSquare, {{Rational(1), Rational(3, 2), Rational(1)}}, {{Rational(1), Rational(99, 70), Rational(5, 7)}}};
  for (const auto& base : bases) {
    for (long start : {2L, 7L, 40L}) {
      const DirichletWitness w = dirichlet_tuple(base, BigInt(start));
      for (int i = 0; i < 200; ++i) {
        const Rational beta = oracle::rand_between(rng, w.lo, w.hi);
        try {
          const BetaCertificate c = certify_beta(base, beta, w);
          for (std::size_t j = 0; j < w.p.size(); ++j) {
            EXPECT_GT(c.margins[j], Rational(0));
            EXPECT_GT(Rational::from_integer(w.p[j]) * base.a[j] / base.a.back(), beta);
          }
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::DegenerateInput);
        }
      }
    }
  }
}

TEST(Dirichlet, JsonRoundTrip) {
  const DirichletWitness w = dirichlet_tuple({{Rational(1), Rational(3, 2), Rational(1)}}, BigInt(2));
  const DirichletWitness back = witness_from_json(to_json(w));
  EXPECT_EQ(back.p, w.p);
  EXPECT_EQ(back.lo, w.lo);
  EXPECT_EQ(back.hi, w.hi);
  EXPECT_EQ(back.quality, w.quality);
}
