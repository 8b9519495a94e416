#include <gtest/gtest.h>

#include "orbitgauge/orbitgauge.hpp"

using namespace orbitgauge;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_domain(std::string_view(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted " << text;
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Domains, ParsesEllipsoid) {
  const DomainSpec d = parse_domain(std::string_view(R"({"ellipsoid": ["1", "99/70"]})"));
  const auto& e = std::get<EllipsoidSpec>(d);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e.a[1], Rational(99, 70));
}

TEST(Domains, ParsesTruncatedWithTheoremStrength) {
  const DomainSpec d = parse_domain(std::string_view(R"({"truncated": {"a": ["1","1"], "eps": "1/100", "beta": "299/100"}})"));
  const auto& t = std::get<TruncatedEllipsoidSpec>(d);
  EXPECT_TRUE(t.theorem_strength);
  EXPECT_EQ(t.eps * t.beta * t.beta, Rational(89401, 1000000));
  EXPECT_EQ(t.n(), 1);
}

TEST(Domains, RejectsDescendingSinkholeDepths) {
  EXPECT_EQ(kind_of(R"({"sinkhole": {"n":1, "eps": ["1/2","1/10"]}})"), ErrorKind::InvalidParameter);
}

TEST(Domains, ValidationErrors) {
  EXPECT_EQ(kind_of(R"({"ellipsoid": []})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"ellipsoid": ["1", "-2"]})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"ellipsoid": ["1", "x"]})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"ellipsoid": [1.5]})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"truncated": {"a": ["1","1"], "eps": "1", "beta": "3"}})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"truncated": {"a": ["1","1"], "eps": "1/10", "beta": "1/2"}})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"sinkhole": {"n":1, "eps": ["0","1/10"]}})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"sinkhole": {"n":1, "eps": ["1/10","3/5"]}})"), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of(R"({"torus": {}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"(not json)"), ErrorKind::ParseError);
}

TEST(Domains, TruncProfileBreakpointAndTau) {
  const auto t = make_truncated({{Rational(1), Rational(1)}}, Rational(1, 100), Rational(3));
  const RadialProfile p = trunc_profile(t);
  ASSERT_EQ(p.breakpoints.size(), 1u);
  EXPECT_EQ(p.breakpoints[0], Rational(99, 400));
  EXPECT_EQ(p.segments[0].intercept, Rational(1, 100));
  EXPECT_EQ(p.segments[1].intercept, Rational(1));
  EXPECT_EQ(p.h(Rational(1)), Rational(0));
}

TEST(Domains, TruncProfileThreeFactors) {
  const auto t = make_truncated({{Rational(1), Rational(1), Rational(1, 2)}}, Rational(1, 10), Rational(2));
  const RadialProfile p = trunc_profile(t);
  EXPECT_EQ(p.segments[0].slope, Rational(1));
  EXPECT_EQ(p.segments[1].slope, Rational(-1, 2));
  EXPECT_EQ(p.breakpoints[0], Rational(3, 10));
}

TEST(Domains, RadialProfileValidation) {
  RadialProfile convex{{{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(-1)}}, {Rational(3, 4)}};
  EXPECT_THROW(validate(convex), Error);
  RadialProfile broken{{{Rational(1), Rational(1)}, {Rational(-2), Rational(2)}}, {Rational(1, 2)}};
  EXPECT_THROW(validate(broken), Error);  // jumps at the breakpoint
  EXPECT_NO_THROW(validate(ellipsoid_profile(Rational(3))));
}

TEST(Domains, CanonicalJsonRoundTrips) {
  for (const char* text : {R"({"ellipsoid":["1","99/70"]})", R"({"truncated":{"a":["1","1"],"beta":"299/100","eps":"1/100"}})",
                           R"({"sinkhole":{"a":["4"],"eps":["1/10","1/3"],"n":1}})"}) {
    const DomainSpec d = parse_domain(std::string_view(text));
    EXPECT_EQ(domain_id(d), text);
    EXPECT_EQ(domain_id(parse_domain(to_json(d))), text);
  }
}

TEST(Domains, SinkholeDefaultBase) {
  const SinkholeSpec s = make_sinkhole(1, {Rational(1, 10), Rational(1, 3)});
  EXPECT_EQ(s.D(), 2);
  ASSERT_EQ(s.base.size(), 1u);
  EXPECT_EQ(s.base.a[0], Rational(4));
}
