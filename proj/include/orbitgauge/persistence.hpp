#pragma once

// Certified barcodes built from orbit lists, and the rank obstruction to
// implantations that turns them into distance lower bounds.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "orbitgauge/domains.hpp"
#include "orbitgauge/rational.hpp"
#include "orbitgauge/reeb.hpp"

namespace orbitgauge {

struct Bar {
  Rational birth;
  Extended cert_end;
};

/// Within (0, window_end] the bars are the complete list in this degree;
/// a bar is alive at s iff birth < s.
struct CertifiedBarcode {
  long degree = 0;
  Extended window_end = Extended::infinity();
  std::vector<Bar> bars;
};

struct ImplantationBound {
  Extended value = Extended(Rational(1));
  bool attained = true;
  std::optional<long> degree_used;
  std::optional<Rational> witness_s;
  std::optional<Rational> witness_b;  // the b at which the obstruction was checked
};

// --- construction -------------------------------------------------------

namespace detail {

inline std::string describe(const ReebOrbit& o) {
  return std::string(family_name(o.family)) + "(" + o.label() + ", N=" + std::to_string(o.N) + ", period " + o.period.str() + ")";
}

inline void check_parity(const std::vector<ReebOrbit>& orbits) {
  std::map<std::pair<OrbitFamily, long>, long> parity;
  for (const auto& o : orbits) {
    if (!o.cz) continue;
    const long p = ((*o.cz % 2) + 2) % 2;
    auto [it, fresh] = parity.emplace(std::make_pair(o.family, o.index), p);
    if (!fresh && it->second != p) throw Error(ErrorKind::HypothesisViolated, "iterates of mixed index parity, bad orbits possible: " + describe(o));
  }
}

}  // namespace detail

/// Largest window (at most `cap`) below which no orbit blocks a certified
/// barcode in `degree`: corner bounds, unknown or adjacent indices, and
/// degenerate orbits all cut it.
inline Extended certified_window(const std::vector<ReebOrbit>& orbits, long degree, const Extended& cap) {
  Extended w = cap;
  for (const auto& o : orbits) {
    const bool blocks = o.is_bound || !o.cz || !o.nondegenerate || *o.cz == degree - 1 || *o.cz == degree + 1;
    if (blocks && Extended(o.period) < w) w = Extended(o.period);
  }
  return w;
}

inline CertifiedBarcode barcode_from_orbits(const std::vector<ReebOrbit>& orbits, long degree, const Extended& window_end) {
  if (window_end.is_finite() && window_end.value().sign() <= 0) throw Error(ErrorKind::InvalidArgument, "window must be positive");
  detail::check_parity(orbits);
  CertifiedBarcode bc{degree, window_end, {}};
  for (const auto& o : orbits) {
    if (o.is_bound) {
      if (Extended(o.period) < window_end)
        throw Error(ErrorKind::HypothesisViolated, "orbit family may enter the window: " + detail::describe(o));
      continue;
    }
    if (!(Extended(o.period) < window_end)) continue;
    if (!o.cz || !o.nondegenerate) throw Error(ErrorKind::HypothesisViolated, "uncertified orbit inside the window: " + detail::describe(o));
    if (*o.cz == degree - 1 || *o.cz == degree + 1)
      throw Error(ErrorKind::HypothesisViolated, "adjacent-degree orbit inside the window: " + detail::describe(o));
    if (*o.cz == degree) bc.bars.push_back({o.period, window_end});
  }
  return bc;
}

inline CertifiedBarcode scale_barcode(const CertifiedBarcode& bc, const Rational& a) {
  if (a < Rational(1)) throw Error(ErrorKind::InvalidArgument, "scale factor must be >= 1");
  CertifiedBarcode out{bc.degree, bc.window_end / a, {}};
  for (const auto& b : bc.bars) out.bars.push_back({b.birth / a, b.cert_end / a});
  return out;
}

/// Ellipsoids with m capacities have every index >= m+1, so each degree
/// <= m is empty at every filtration level.
inline CertifiedBarcode ellipsoid_barcode(std::size_t capacities, long degree) {
  if (degree > static_cast<long>(capacities))
    throw Error(ErrorKind::InvalidArgument, "only degrees <= " + std::to_string(capacities) + " are certified empty for this ellipsoid");
  return {degree, Extended::infinity(), {}};
}

/// Degree 2-3n barcode of a sinkhole domain: one bar per depth, valid for
/// every window b < 1 and recorded with the supremum window 1.
inline CertifiedBarcode sinkhole_barcode(const SinkholeSpec& spec) {
  // b just large enough that every center orbit of period < 1 is enumerated
  Rational b(3, 4);
  for (const auto& e : spec.depths) {
    const Rational last = Rational::from_integer(ceil(Rational(1) / e) - 1) * e;
    b = max(b, last);
  }
  const long degree = 2 - 3 * spec.n;
  // Indices are all = n mod 2 and non-increasing in N, with N = 2 already at
  // 4-7n <= degree-2, so higher covers never touch degree +- 1. Skipping them
  // keeps tiny depths tractable; rational depths that are degenerate at some
  // large N are the limit of irrational ones with the same barcode.
  const auto orbits = sinkhole_spectrum(spec, b, 2);
  const CertifiedBarcode at_b = barcode_from_orbits(orbits, degree, Extended(b));
  if (at_b.bars.size() != spec.depths.size())
    throw Error(ErrorKind::HypothesisViolated, "expected one degree " + std::to_string(degree) + " orbit per sinkhole");
  CertifiedBarcode bc{degree, Extended(Rational(1)), {}};
  for (const auto& bar : at_b.bars) bc.bars.push_back({bar.birth, Extended(Rational(1))});
  return bc;
}

// --- queries ------------------------------------------------------------

inline bool window_lt(const CertifiedBarcode& bc, const Rational& t) { return bc.window_end < Extended(t); }

/// Certified lower bound on rank i_{t,s}; exact while t <= every cert_end.
inline long rank(const CertifiedBarcode& bc, const Rational& s, const Rational& t) {
  if (s.sign() <= 0 || t < s || window_lt(bc, t)) throw Error(ErrorKind::InvalidArgument, "need 0 < s <= t <= window_end");
  long r = 0;
  for (const auto& b : bc.bars) {
    if (b.birth == s || b.birth == t) throw Error(ErrorKind::QueryAtBirth, "query at bar birth " + b.birth.str());
    if (b.birth < s && Extended(t) <= b.cert_end) ++r;
  }
  return r;
}

inline long dim(const CertifiedBarcode& bc, const Rational& s) { return rank(bc, s, s); }

// --- implantation obstruction ---------------------------------------------

namespace detail {

inline bool ext_lt(const Rational& x, const Extended& w) { return Extended(x) < w; }

struct BirthProblem {
  const CertifiedBarcode* source;
  const CertifiedBarcode* target;
  Rational p;

  // Obstruction for s -> p+ at scale b:
  // rank_source(s, b s) > dim_target(sqrt(b) s), both inside their windows.
  bool obstructed(const Rational& b) const {
    if (!ext_lt(b * p, source->window_end)) return false;
    if (target->window_end.is_finite() && !(b * p * p < target->window_end.value() * target->window_end.value())) return false;
    long alive = 0;
    for (const auto& bar : source->bars)
      if (bar.birth <= p && ext_lt(b * p, bar.cert_end)) ++alive;
    long present = 0;
    for (const auto& bar : target->bars)
      if (bar.birth * bar.birth <= b * p * p) ++present;
    return alive > present;
  }

  std::vector<Rational> candidates() const {
    std::vector<Rational> c;
    for (const auto& bar : source->bars)
      if (bar.cert_end.is_finite()) c.push_back(bar.cert_end.value() / p);
    for (const auto& bar : target->bars) c.push_back((bar.birth / p) * (bar.birth / p));
    if (source->window_end.is_finite()) c.push_back(source->window_end.value() / p);
    if (target->window_end.is_finite()) c.push_back((target->window_end.value() / p) * (target->window_end.value() / p));
    std::sort(c.begin(), c.end());
    return c;
  }

  /// Supremum of obstructed b; nullopt when 1 itself is not obstructed.
  std::optional<Extended> supremum() const {
    if (!obstructed(Rational(1))) return std::nullopt;
    for (const auto& c : candidates())
      if (Rational(1) < c && !obstructed(c)) return Extended(c);
    return Extended::infinity();
  }

  /// Some s slightly above p at which the obstruction is visible at scale b.
  Rational witness_s(const Rational& b, const Rational& r) const {
    std::vector<Rational> events;
    for (const auto& bar : source->bars) {
      events.push_back(bar.birth);
      events.push_back(bar.birth / b);
      if (bar.cert_end.is_finite()) events.push_back(bar.cert_end.value() / b);
    }
    for (const auto& bar : target->bars) events.push_back(bar.birth / r);
    if (source->window_end.is_finite()) events.push_back(source->window_end.value() / b);
    if (target->window_end.is_finite()) events.push_back(target->window_end.value() / r);
    std::optional<Rational> next;
    for (const auto& e : events)
      if (p < e && (!next || e < *next)) next = e;
    return next ? (p + *next) / Rational(2) : p * Rational(2);
  }
};

}  // namespace detail

/// Sound lower bound on delta_f(U, V) from the barcodes of V (source) and
/// U (target): the supremum of b for which no b^(1/2)-implantation of the
/// source into the target can exist.
inline ImplantationBound implantation_lower_bound(const std::vector<CertifiedBarcode>& source, const std::vector<CertifiedBarcode>& target) {
  ImplantationBound best;
  for (const auto& src : source) {
    if (src.bars.empty()) continue;
    const CertifiedBarcode* tgt = nullptr;
    for (const auto& t : target)
      if (t.degree == src.degree) tgt = &t;
    if (!tgt) throw Error(ErrorKind::InvalidArgument, "no target barcode in degree " + std::to_string(src.degree));

    std::set<Rational> births;
    for (const auto& bar : src.bars) births.insert(bar.birth);
    for (const auto& p : births) {
      detail::BirthProblem prob{&src, tgt, p};
      const auto sup = prob.supremum();
      if (!sup || !(best.value < *sup)) continue;

      // Replay the obstruction through rank/dim at a concrete b < sup.
      Rational r(2);
      if (sup->is_finite()) r = root_bracket((Rational(1) + sup->value()) / Rational(2), 2, 32).lo;
      const Rational b = r * r;
      const Rational s = prob.witness_s(b, r);
      if (!(dim(*tgt, r * s) < rank(src, s, b * s)))
        throw Error(ErrorKind::HypothesisViolated, "obstruction failed to replay at s = " + s.str());

      best.value = *sup;
      best.attained = false;
      best.degree_used = src.degree;
      best.witness_s = s;
      best.witness_b = b;
    }
  }
  return best;
}

// --- serialization ------------------------------------------------------

inline Json to_json(const CertifiedBarcode& bc) {
  Json bars = Json::array();
  for (const auto& b : bc.bars) bars.push_back({b.birth.str(), b.cert_end.str()});
  return Json{{"degree", bc.degree}, {"window_end", bc.window_end.str()}, {"bars", bars}};
}

inline CertifiedBarcode barcode_from_json(const Json& j) {
  CertifiedBarcode bc;
  const Json& d = detail::json_field(j, "degree", "barcode");
  if (!d.is_number_integer()) throw Error(ErrorKind::ParseError, "degree must be an integer", "barcode.degree");
  bc.degree = d.get<long>();
  const Json& w = detail::json_field(j, "window_end", "barcode");
  if (!w.is_string()) throw Error(ErrorKind::ParseError, "window_end must be a string", "barcode.window_end");
  bc.window_end = Extended::parse(w.get<std::string>());
  const Json& bars = detail::json_field(j, "bars", "barcode");
  if (!bars.is_array()) throw Error(ErrorKind::ParseError, "expected an array", "barcode.bars");
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const std::string path = "barcode.bars[" + std::to_string(i) + "]";
    if (!bars[i].is_array() || bars[i].size() != 2 || !bars[i][1].is_string()) throw Error(ErrorKind::ParseError, "bar is [birth, cert_end]", path);
    Bar b{detail::json_rational(bars[i][0], path), Extended::parse(bars[i][1].get<std::string>())};
    if (!(b.birth.sign() > 0 && Extended(b.birth) < b.cert_end && b.cert_end <= bc.window_end))
      throw Error(ErrorKind::InvalidParameter, "need 0 < birth < cert_end <= window_end", path);
    bc.bars.push_back(std::move(b));
  }
  return bc;
}

inline Json implantation_json(const ImplantationBound& ib) {
  Json j{{"value", ib.value.str()}, {"attained", ib.attained}};
  j["degree_used"] = ib.degree_used ? Json(*ib.degree_used) : Json(nullptr);
  j["witness_s"] = ib.witness_s ? Json(ib.witness_s->str()) : Json(nullptr);
  return j;
}

}  // namespace orbitgauge
