#pragma once

// Domain family descriptors. Every family parameter lives here; the orbit and
// bound code only ever sees validated specs.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "orbitgauge/error.hpp"
#include "orbitgauge/rational.hpp"

namespace orbitgauge {

using Json = nlohmann::json;

struct EllipsoidSpec {
  std::vector<Rational> a;

  std::size_t size() const { return a.size(); }
  const Rational& max_capacity() const {
    const Rational* m = &a.front();
    for (const auto& x : a)
      if (*m < x) m = &x;
    return *m;
  }
  const Rational& min_capacity() const {
    const Rational* m = &a.front();
    for (const auto& x : a)
      if (x < *m) m = &x;
    return *m;
  }
  /// First `count` capacities as a lower-dimensional ellipsoid.
  EllipsoidSpec prefix(std::size_t count) const { return {std::vector<Rational>(a.begin(), a.begin() + static_cast<long>(count))}; }
};

/// Truncated ellipsoid: base capacities a_1..a_{n+1} cut by the profile
/// min{a_{n+1}(eps + beta u), a_{n+1}(1 - u)}.
struct TruncatedEllipsoidSpec {
  EllipsoidSpec base;
  Rational eps;
  Rational beta;
  bool theorem_strength = false;  // eps * beta^2 < 1

  long n() const { return static_cast<long>(base.size()) - 1; }
  const Rational& a_top() const { return base.a.back(); }
  EllipsoidSpec lower_base() const { return base.prefix(base.size() - 1); }
};

/// Ball of dimension 2n inside W = E(a_1..a_n) with D radial sinkholes of
/// depths eps_1 <= ... <= eps_D.
struct SinkholeSpec {
  long n = 1;
  std::vector<Rational> depths;
  EllipsoidSpec base;

  long D() const { return static_cast<long>(depths.size()); }
};

struct Segment {
  Rational slope;
  Rational intercept;  // also the tangent intercept tau on this segment
};

/// Concave piecewise-linear h on [0,1] with h(1) = 0.
struct RadialProfile {
  std::vector<Segment> segments;
  std::vector<Rational> breakpoints;  // size = segments.size() - 1

  Rational h(const Rational& u) const {
    std::size_t i = 0;
    while (i < breakpoints.size() && breakpoints[i] < u) ++i;
    return segments[i].slope * u + segments[i].intercept;
  }
  const Rational& slope_at_zero() const { return segments.front().slope; }
  const Rational& tau_at_boundary() const { return segments.back().intercept; }
};

/// Tube over the ellipsoid `base` (possibly empty, i.e. a disk) cut out by
/// pi|z|^2 <= h(gauge of w).
struct RadialTubeSpec {
  EllipsoidSpec base;
  RadialProfile profile;
};

using DomainSpec = std::variant<EllipsoidSpec, TruncatedEllipsoidSpec, SinkholeSpec, RadialTubeSpec>;

// --- validation ---------------------------------------------------------

inline void validate(const EllipsoidSpec& e, const std::string& path = "ellipsoid") {
  if (e.a.empty()) throw Error(ErrorKind::InvalidParameter, "ellipsoid needs at least one capacity", path);
  for (std::size_t i = 0; i < e.a.size(); ++i)
    if (e.a[i].sign() <= 0)
      throw Error(ErrorKind::InvalidParameter, "capacity must be positive, got " + e.a[i].str(), path + "[" + std::to_string(i) + "]");
}

inline TruncatedEllipsoidSpec make_truncated(EllipsoidSpec base, Rational eps, Rational beta) {
  const std::string path = "truncated";
  validate(base, path + ".a");
  if (base.size() < 2) throw Error(ErrorKind::InvalidParameter, "truncated ellipsoid needs n+1 >= 2 capacities", path + ".a");
  if (!(Rational(0) < eps && eps < Rational(1))) throw Error(ErrorKind::InvalidParameter, "eps must lie in (0,1), got " + eps.str(), path + ".eps");
  if (!(Rational(1) < beta)) throw Error(ErrorKind::InvalidParameter, "beta must exceed 1, got " + beta.str(), path + ".beta");
  TruncatedEllipsoidSpec t{std::move(base), std::move(eps), std::move(beta), false};
  t.theorem_strength = t.eps * t.beta * t.beta < Rational(1);
  return t;
}

inline SinkholeSpec make_sinkhole(long n, std::vector<Rational> depths, std::optional<EllipsoidSpec> base = std::nullopt) {
  const std::string path = "sinkhole";
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be positive", path + ".n");
  if (depths.empty()) throw Error(ErrorKind::InvalidParameter, "at least one sinkhole depth required", path + ".eps");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    const std::string p = path + ".eps[" + std::to_string(i) + "]";
    if (depths[i].sign() <= 0 || Rational(1, 2) < depths[i]) throw Error(ErrorKind::InvalidParameter, "depth must lie in (0,1/2], got " + depths[i].str(), p);
    if (i > 0 && depths[i] < depths[i - 1]) throw Error(ErrorKind::InvalidParameter, "depths must be ascending", p);
  }
  SinkholeSpec s;
  s.n = n;
  s.depths = std::move(depths);
  if (base) {
    s.base = std::move(*base);
  } else {
    // Room for D disjoint unit balls along one axis.
    s.base.a.assign(static_cast<std::size_t>(n), Rational(2 * static_cast<long long>(s.depths.size())));
  }
  validate(s.base, path + ".a");
  if (static_cast<long>(s.base.size()) != n) throw Error(ErrorKind::InvalidParameter, "base needs exactly n capacities", path + ".a");
  for (std::size_t i = 0; i < s.base.size(); ++i)
    if (!(Rational(1) < s.base.a[i]))
      throw Error(ErrorKind::InvalidParameter, "base capacity must exceed 1", path + ".a[" + std::to_string(i) + "]");
  return s;
}

inline void validate(const RadialProfile& p, const std::string& path = "radial_tube") {
  if (p.segments.empty()) throw Error(ErrorKind::InvalidParameter, "profile needs at least one segment", path + ".segments");
  if (p.breakpoints.size() + 1 != p.segments.size())
    throw Error(ErrorKind::InvalidParameter, "need exactly one breakpoint between consecutive segments", path + ".breakpoints");
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    const std::string bp = path + ".breakpoints[" + std::to_string(i) + "]";
    const Rational& u = p.breakpoints[i];
    if (!(Rational(0) < u && u < Rational(1))) throw Error(ErrorKind::InvalidParameter, "breakpoint outside (0,1)", bp);
    if (i > 0 && !(p.breakpoints[i - 1] < u)) throw Error(ErrorKind::InvalidParameter, "breakpoints must ascend", bp);
    const Segment& l = p.segments[i];
    const Segment& r = p.segments[i + 1];
    if (!(r.slope < l.slope)) throw Error(ErrorKind::InvalidParameter, "slopes must strictly decrease (concavity)", path + ".segments[" + std::to_string(i + 1) + "]");
    if (l.slope * u + l.intercept != r.slope * u + r.intercept) throw Error(ErrorKind::InvalidParameter, "profile discontinuous at breakpoint " + u.str(), bp);
  }
  for (std::size_t i = 0; i < p.segments.size(); ++i)
    if (p.segments[i].intercept.sign() <= 0)
      throw Error(ErrorKind::InvalidParameter, "tangent intercept must be positive", path + ".segments[" + std::to_string(i) + "]");
  const Segment& last = p.segments.back();
  if (last.slope + last.intercept != Rational(0)) throw Error(ErrorKind::InvalidParameter, "profile must vanish at u = 1", path + ".segments");
}

inline RadialProfile trunc_profile(const TruncatedEllipsoidSpec& spec) {
  const Rational& a = spec.a_top();
  RadialProfile p;
  p.segments = {{spec.beta * a, spec.eps * a}, {-a, a}};
  p.breakpoints = {(Rational(1) - spec.eps) / (Rational(1) + spec.beta)};
  return p;
}

/// The single-segment profile whose tube over E(a_1..a_n) is E(a_1..a_{n+1}).
inline RadialProfile ellipsoid_profile(const Rational& a_top) { return RadialProfile{{{-a_top, a_top}}, {}}; }

// --- JSON ----------------------------------------------------------------

namespace detail {

inline Rational json_rational(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.message(), path);
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorKind::ParseError, "expected a rational string such as \"3/7\"", path);
}

inline std::vector<Rational> json_rationals(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array", path);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& json_field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw Error(ErrorKind::ParseError, "expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'", path);
  return *it;
}

inline Json rationals_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(x.str());
  return arr;
}

}  // namespace detail

inline DomainSpec parse_domain(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw Error(ErrorKind::ParseError, "descriptor must be an object with exactly one family key");
  const auto& [tag, body] = *j.items().begin();
  if (tag == "ellipsoid") {
    EllipsoidSpec e{detail::json_rationals(body, "ellipsoid")};
    validate(e);
    return e;
  }
  if (tag == "truncated") {
    EllipsoidSpec base{detail::json_rationals(detail::json_field(body, "a", tag), "truncated.a")};
    return make_truncated(std::move(base), detail::json_rational(detail::json_field(body, "eps", tag), "truncated.eps"),
                          detail::json_rational(detail::json_field(body, "beta", tag), "truncated.beta"));
  }
  if (tag == "sinkhole") {
    const Json& nj = detail::json_field(body, "n", tag);
    if (!nj.is_number_integer()) throw Error(ErrorKind::ParseError, "n must be an integer", "sinkhole.n");
    std::optional<EllipsoidSpec> base;
    if (body.contains("a")) base = EllipsoidSpec{detail::json_rationals(body["a"], "sinkhole.a")};
    return make_sinkhole(nj.get<long>(), detail::json_rationals(detail::json_field(body, "eps", tag), "sinkhole.eps"), std::move(base));
  }
  if (tag == "radial_tube") {
    RadialTubeSpec t;
    t.base.a = detail::json_rationals(detail::json_field(body, "a", tag), "radial_tube.a");
    for (std::size_t i = 0; i < t.base.a.size(); ++i)
      if (t.base.a[i].sign() <= 0) throw Error(ErrorKind::InvalidParameter, "capacity must be positive", "radial_tube.a[" + std::to_string(i) + "]");
    const Json& segs = detail::json_field(body, "segments", tag);
    if (!segs.is_array()) throw Error(ErrorKind::ParseError, "expected an array", "radial_tube.segments");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      auto pair = detail::json_rationals(segs[i], "radial_tube.segments[" + std::to_string(i) + "]");
      if (pair.size() != 2) throw Error(ErrorKind::ParseError, "segment is [slope, intercept]", "radial_tube.segments[" + std::to_string(i) + "]");
      t.profile.segments.push_back({pair[0], pair[1]});
    }
    if (body.contains("breakpoints")) t.profile.breakpoints = detail::json_rationals(body["breakpoints"], "radial_tube.breakpoints");
    validate(t.profile);
    return t;
  }
  throw Error(ErrorKind::ParseError, "unknown domain family '" + tag + "'");
}

inline DomainSpec parse_domain(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return parse_domain(j);
}

/// Canonical form: defaults filled in, scalars as lowest-terms strings,
/// keys sorted.
inline Json to_json(const DomainSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EllipsoidSpec>) {
          return Json{{"ellipsoid", detail::rationals_json(s.a)}};
        } else if constexpr (std::is_same_v<T, TruncatedEllipsoidSpec>) {
          return Json{{"truncated", {{"a", detail::rationals_json(s.base.a)}, {"eps", s.eps.str()}, {"beta", s.beta.str()}}}};
        } else if constexpr (std::is_same_v<T, SinkholeSpec>) {
          return Json{{"sinkhole", {{"n", s.n}, {"eps", detail::rationals_json(s.depths)}, {"a", detail::rationals_json(s.base.a)}}}};
        } else {
          Json segs = Json::array();
          for (const auto& seg : s.profile.segments) segs.push_back({seg.slope.str(), seg.intercept.str()});
          return Json{{"radial_tube", {{"a", detail::rationals_json(s.base.a)}, {"segments", segs}, {"breakpoints", detail::rationals_json(s.profile.breakpoints)}}}};
        }
      },
      spec);
}

inline std::string domain_id(const DomainSpec& spec) { return to_json(spec).dump(); }

}  // namespace orbitgauge
