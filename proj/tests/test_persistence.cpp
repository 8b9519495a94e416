#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace orbitgauge;

namespace {

CertifiedBarcode sinkhole_example() {
  const SinkholeSpec s = make_sinkhole(1, {Rational(1, 10), Rational(1, 3)});
  const auto orbits = sinkhole_spectrum(s, Rational(9, 10));
  return barcode_from_orbits(orbits, -1, certified_window(orbits, -1, Extended(Rational(9, 10))));
}

CertifiedBarcode trunc_example() {
  const auto spec = make_truncated({{Rational(1), Rational(1)}}, Rational(1, 100), Rational(299, 100));
  const Rational cap(34, 133);
  const auto orbits = tube_orbits(spec.lower_base(), trunc_profile(spec), cap, 0, {});
  return barcode_from_orbits(orbits, -3, certified_window(orbits, -3, Extended(cap)));
}

CertifiedBarcode bars(long degree, Extended window, std::vector<std::pair<Rational, Extended>> list) {
  CertifiedBarcode bc{degree, std::move(window), {}};
  for (auto& [b, e] : list) bc.bars.push_back({b, e});
  return bc;
}

}  // namespace

TEST(Barcode, SinkholeExample) {
  const CertifiedBarcode bc = sinkhole_example();
  EXPECT_EQ(bc.window_end, Extended(Rational(9, 10)));
  ASSERT_EQ(bc.bars.size(), 2u);
  EXPECT_EQ(bc.bars[0].birth, Rational(1, 10));
  EXPECT_EQ(bc.bars[1].birth, Rational(1, 3));
  for (const auto& b : bc.bars) EXPECT_EQ(b.cert_end, Extended(Rational(9, 10)));
}

TEST(Barcode, TruncatedExample) {
  const CertifiedBarcode bc = trunc_example();
  EXPECT_EQ(bc.window_end, Extended(Rational(34, 133)));
  ASSERT_EQ(bc.bars.size(), 1u);
  EXPECT_EQ(bc.bars[0].birth, Rational(1, 100));
  EXPECT_EQ(bc.bars[0].cert_end, Extended(Rational(34, 133)));
}

TEST(Barcode, EmptyOrbitList) {
  const CertifiedBarcode bc = barcode_from_orbits({}, 4, Extended(Rational(7, 3)));
  EXPECT_TRUE(bc.bars.empty());
  EXPECT_EQ(bc.window_end, Extended(Rational(7, 3)));
}

TEST(Barcode, AdjacentDegreeBlocksWindow) {
  const auto orbits = ellipsoid_spectrum({{Rational(1), Rational(99, 70)}}, Rational(3));
  // CZ 3 at period 1 sits next to degree 4
  EXPECT_EQ(certified_window(orbits, 4, Extended(Rational(3))), Extended(Rational(1)));
}

TEST(Barcode, Scaling) {
  const CertifiedBarcode bc = trunc_example();
  const CertifiedBarcode same = scale_barcode(bc, Rational(1));
  EXPECT_EQ(same.bars[0].birth, bc.bars[0].birth);
  EXPECT_EQ(same.window_end, bc.window_end);
  const CertifiedBarcode half = scale_barcode(bc, Rational(2));
  EXPECT_EQ(half.bars[0].birth, Rational(1, 200));
  EXPECT_EQ(half.bars[0].cert_end, Extended(Rational(17, 133)));
  EXPECT_THROW(scale_barcode(bc, Rational(1, 2)), Error);
}

TEST(Rank, SinkholeQueries) {
  const CertifiedBarcode bc = sinkhole_example();
  EXPECT_EQ(rank(bc, Rational(1, 5), Rational(1, 5)), 1);
  EXPECT_EQ(rank(bc, Rational(1, 2), Rational(4, 5)), 2);
  EXPECT_EQ(rank(bc, Rational(1, 20), Rational(1, 20)), 0);
  try {
    rank(bc, Rational(1, 10), Rational(1, 2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QueryAtBirth);
  }
  EXPECT_THROW(rank(bc, Rational(1, 2), Rational(19, 20)), Error);
}

TEST(Rank, ScalingCovarianceAndMonotonicity) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const CertifiedBarcode bc = oracle::random_barcode(rng, 0, 4);
    const Rational a = oracle::rand_rational(rng, 6, 30, 5) / Rational(6) + Rational(1);
    const CertifiedBarcode sc = scale_barcode(bc, a);
    for (int q = 0; q < 10; ++q) {
      const Rational s = oracle::rand_rational(rng, 1, 40, 7);
      const Rational t = s + oracle::rand_rational(rng, 0, 20, 3);
      const Rational t2 = t + oracle::rand_rational(rng, 0, 20, 3);
      if (window_lt(bc, t2)) continue;
      try {
        const long r = rank(bc, s, t);
        EXPECT_EQ(rank(sc, s / a, t / a), r);
        EXPECT_LE(r, dim(bc, s));
        EXPECT_GE(r, rank(bc, s, t2));
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::QueryAtBirth);
      }
    }
  }
}

TEST(Implantation, TruncatedAgainstEmptyEllipsoid) {
  const ImplantationBound ib = implantation_lower_bound({trunc_example()}, {ellipsoid_barcode(2, -3)});
  EXPECT_EQ(ib.value, Extended(Rational(3400, 133)));
  EXPECT_FALSE(ib.attained);
  EXPECT_EQ(ib.degree_used, -3);
}

TEST(Implantation, EmptySourceGivesOne) {
  const ImplantationBound ib = implantation_lower_bound({bars(0, Extended::infinity(), {})}, {bars(0, Extended::infinity(), {})});
  EXPECT_EQ(ib.value, Extended(Rational(1)));
}

TEST(Implantation, TwoBarExample) {
  const CertifiedBarcode src = bars(-1, Extended(Rational(9, 10)), {{Rational(1, 10), Extended(Rational(9, 10))}});
  const CertifiedBarcode tgt = bars(-1, Extended(Rational(9, 10)), {{Rational(1, 3), Extended(Rational(9, 10))}});
  EXPECT_EQ(implantation_lower_bound({src}, {tgt}).value, Extended(Rational(9)));
  EXPECT_EQ(oracle::implantation_grid(src, tgt), Extended(Rational(9)));
}

TEST(Implantation, MissingTargetDegree) {
  const CertifiedBarcode src = bars(-1, Extended::infinity(), {{Rational(1), Extended::infinity()}});
  EXPECT_THROW(implantation_lower_bound({src}, {bars(0, Extended::infinity(), {})}), Error);
}

TEST(Implantation, MatchesGridOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    const CertifiedBarcode src = oracle::random_barcode(rng, 1, 3);
    const CertifiedBarcode tgt = oracle::random_barcode(rng, 1, 3);
    EXPECT_EQ(implantation_lower_bound({src}, {tgt}).value, oracle::implantation_grid(src, tgt)) << to_json(src).dump() << " vs " << to_json(tgt).dump();
  }
}

TEST(Barcode, JsonRoundTrip) {
  const CertifiedBarcode bc = bars(2, Extended::infinity(), {{Rational(1, 3), Extended::infinity()}, {Rational(1, 2), Extended(Rational(5))}});
  const CertifiedBarcode back = barcode_from_json(to_json(bc));
  EXPECT_EQ(to_json(back), to_json(bc));
}

TEST(Barcode, SinkholeBarcodeUsesSupremumWindow) {
  const CertifiedBarcode bc = sinkhole_barcode(make_sinkhole(2, {Rational(1, 10), Rational(1, 3), Rational(1, 2)}));
  EXPECT_EQ(bc.degree, -4);
  EXPECT_EQ(bc.window_end, Extended(Rational(1)));
  ASSERT_EQ(bc.bars.size(), 3u);
  EXPECT_EQ(bc.bars[2].birth, Rational(1, 2));
}
