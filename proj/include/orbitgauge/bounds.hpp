#pragma once

// Distance bound certificates: constructors for each family, composition,
// weakening between d_c <= delta_f <= d_f, cross-checks and replay.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orbitgauge/diophantine.hpp"
#include "orbitgauge/domains.hpp"
#include "orbitgauge/expbounds.hpp"
#include "orbitgauge/persistence.hpp"
#include "orbitgauge/rational.hpp"
#include "orbitgauge/reeb.hpp"

namespace orbitgauge {

enum class Quantity { d_c, delta_f, d_f };
enum class Direction { upper, lower };

constexpr std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::d_c: return "d_c";
    case Quantity::delta_f: return "delta_f";
    case Quantity::d_f: return "d_f";
  }
  return "?";
}
constexpr std::string_view direction_name(Direction d) { return d == Direction::upper ? "upper" : "lower"; }
constexpr bool is_symmetric(Quantity q) { return q != Quantity::delta_f; }

struct Provenance {
  std::string rule;
  Json inputs;
  std::string digest;
};

struct BoundCertificate {
  Quantity quantity = Quantity::delta_f;
  Direction direction = Direction::upper;
  std::string from;
  std::string to;
  Rational value{1};
  bool attained = false;
  Provenance provenance;
};

inline std::string input_digest(const std::string& rule, const Json& inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : rule + "|" + inputs.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline BoundCertificate make_certificate(Quantity q, Direction d, std::string from, std::string to, Rational value, bool attained, std::string rule,
                                         Json inputs) {
  if (value < Rational(1)) throw Error(ErrorKind::InvalidArgument, "certificate value below 1: " + value.str());
  std::string digest = input_digest(rule, inputs);
  return {q, d, std::move(from), std::move(to), std::move(value), attained, {std::move(rule), std::move(inputs), std::move(digest)}};
}

// --- serialization ------------------------------------------------------

inline Json to_json(const BoundCertificate& c) {
  return Json{{"quantity", std::string(quantity_name(c.quantity))},
              {"direction", std::string(direction_name(c.direction))},
              {"from", c.from},
              {"to", c.to},
              {"value", c.value.str()},
              {"attained", c.attained},
              {"provenance", {{"rule", c.provenance.rule}, {"inputs", c.provenance.inputs}, {"digest", c.provenance.digest}}}};
}

inline BoundCertificate certificate_from_json(const Json& j) {
  const std::string path = "certificate";
  auto text = [&](const char* key) {
    const Json& v = detail::json_field(j, key, path);
    if (!v.is_string()) throw Error(ErrorKind::ParseError, std::string(key) + " must be a string", path + "." + key);
    return v.get<std::string>();
  };
  BoundCertificate c;
  const std::string q = text("quantity");
  if (q == "d_c") c.quantity = Quantity::d_c;
  else if (q == "delta_f") c.quantity = Quantity::delta_f;
  else if (q == "d_f") c.quantity = Quantity::d_f;
  else throw Error(ErrorKind::ParseError, "unknown quantity '" + q + "'", path + ".quantity");
  const std::string d = text("direction");
  if (d != "upper" && d != "lower") throw Error(ErrorKind::ParseError, "direction is upper or lower", path + ".direction");
  c.direction = d == "upper" ? Direction::upper : Direction::lower;
  c.from = text("from");
  c.to = text("to");
  c.value = detail::json_rational(detail::json_field(j, "value", path), path + ".value");
  c.attained = j.value("attained", false);
  if (j.contains("provenance")) {
    const Json& p = j["provenance"];
    c.provenance.rule = p.value("rule", "");
    c.provenance.inputs = p.value("inputs", Json::object());
    c.provenance.digest = p.value("digest", "");
  }
  return c;
}

// --- domain labels --------------------------------------------------------

inline std::string any_ellipsoid_id(std::size_t capacities) { return "{\"ellipsoid\":\"*\",\"dim\":" + std::to_string(capacities) + "}"; }

inline std::string sinkhole_id(const std::vector<Rational>& depths, long n) { return domain_id(make_sinkhole(n, depths)); }

// --- truncated ellipsoids ------------------------------------------------

/// delta_f(truncated, full ellipsoid) <= ((1 + beta)/beta)^2, any eps.
inline BoundCertificate upper_trunc_vs_ellipsoid(const Rational& beta, std::string from = "", std::string to = "") {
  if (!(Rational(1) <= beta)) throw Error(ErrorKind::InvalidParameter, "beta must be at least 1", "beta");
  if (from.empty()) from = "{\"truncated\":{\"beta\":\"" + beta.str() + "\"}}";
  if (to.empty()) to = "{\"ellipsoid\":\"base\"}";
  const Rational r = (Rational(1) + beta) / beta;
  Json inputs{{"beta", beta.str()}, {"from", from}, {"to", to}};
  return make_certificate(Quantity::delta_f, Direction::upper, from, to, r * r, false, "coarsecvg", inputs);
}

inline BoundCertificate upper_trunc_vs_ellipsoid(const TruncatedEllipsoidSpec& spec) {
  return upper_trunc_vs_ellipsoid(spec.beta, domain_id(spec), domain_id(spec.base));
}

struct TruncLowerReport {
  BoundCertificate certificate;
  long k_beta = 0;
  PeriodInfimum p_star;
  Rational birth;   // a_{n+1} eps
  Rational window;  // certified window of the degree k_beta barcode
  CertifiedBarcode barcode;
  std::optional<StrongTBound> closed_form;
  bool dominates_closed_form = false;  // value >= C beta^exponent / a_{n+1}
};

/// delta_f(V, truncated) for every ellipsoid V, through the persistence
/// engine: the degree k_beta barcode of the truncated ellipsoid against the
/// empty one of any ellipsoid.
inline TruncLowerReport lower_trunc_vs_all_ellipsoids(const TruncatedEllipsoidSpec& spec, const DirichletWitness& witness) {
  if (!spec.theorem_strength) throw Error(ErrorKind::HypothesisViolated, "needs eps < beta^-2");
  certify_beta(spec.base, spec.beta, witness);
  TruncLowerReport rep;
  rep.k_beta = k_beta(spec);
  rep.p_star = trunc_nontrivial_period_infimum(spec);
  rep.birth = spec.a_top() * spec.eps;

  // boundary lifts all have period >= min a_j (j <= n); corner families >= P*
  const EllipsoidSpec lower = spec.lower_base();
  const Rational cap = min(rep.p_star.value, lower.min_capacity());
  const auto orbits = tube_orbits(lower, trunc_profile(spec), cap, 0, {});
  const Extended window = certified_window(orbits, rep.k_beta, Extended(cap));
  rep.window = window.value();
  rep.barcode = barcode_from_orbits(orbits, rep.k_beta, window);
  const CertifiedBarcode empty = ellipsoid_barcode(spec.base.size(), rep.k_beta);
  const ImplantationBound ib = implantation_lower_bound({rep.barcode}, {empty});
  if (ib.value.is_infinite()) throw Error(ErrorKind::HypothesisViolated, "unbounded obstruction from a finite window");

  if (Rational(2) < spec.beta) {
    rep.closed_form = strongTbound_closed_form(spec, witness);
    rep.dominates_closed_form = strong_bound_at_most(*rep.closed_form, spec, ib.value.value() * spec.a_top());
  }
  Json inputs{{"domain", to_json(DomainSpec{spec})}, {"witness", to_json(witness)}};
  rep.certificate = make_certificate(Quantity::delta_f, Direction::lower, any_ellipsoid_id(spec.base.size()), domain_id(spec), ib.value.value(),
                                     ib.attained, "dellu-pipeline", inputs);
  return rep;
}

// --- sinkholes ------------------------------------------------------------

inline void check_same_length(const std::vector<Rational>& eps, const std::vector<Rational>& zeta) {
  if (eps.size() != zeta.size() || eps.empty()) throw Error(ErrorKind::InvalidArgument, "depth vectors must be nonempty and of equal length");
}

/// d_f(W_eps, W_zeta) <= (max_m max{eps_m/zeta_m, zeta_m/eps_m})^2.
inline BoundCertificate upper_sinkhole_pair(const std::vector<Rational>& eps, const std::vector<Rational>& zeta, long n = 1) {
  check_same_length(eps, zeta);
  const auto from = sinkhole_id(eps, n), to = sinkhole_id(zeta, n);
  Rational worst(1);
  for (std::size_t m = 0; m < eps.size(); ++m) worst = max(worst, max(eps[m] / zeta[m], zeta[m] / eps[m]));
  Json inputs{{"eps", detail::rationals_json(eps)}, {"zeta", detail::rationals_json(zeta)}, {"n", n}};
  return make_certificate(Quantity::d_f, Direction::upper, from, to, worst * worst, false, "uppersink", inputs);
}

struct SinkholeLower {
  BoundCertificate certificate;
  Rational closed_form;
  ImplantationBound engine;
};

/// delta_f(W_zeta, W_eps) >= max_m min{1/eps_m, (zeta_m/eps_m)^2}, recomputed
/// from the degree 2-3n barcodes and required to agree.
inline SinkholeLower lower_sinkhole_pair(const std::vector<Rational>& eps, const std::vector<Rational>& zeta, long n = 1) {
  check_same_length(eps, zeta);
  const SinkholeSpec se = make_sinkhole(n, eps), sz = make_sinkhole(n, zeta);
  Rational closed(1);
  for (std::size_t m = 0; m < eps.size(); ++m) {
    const Rational ratio = zeta[m] / eps[m];
    closed = max(closed, min(Rational(1) / eps[m], ratio * ratio));
  }
  const ImplantationBound ib = implantation_lower_bound({sinkhole_barcode(se)}, {sinkhole_barcode(sz)});
  if (ib.value != Extended(closed))
    throw Error(ErrorKind::HypothesisViolated, "persistence engine gives " + ib.value.str() + " but the closed form gives " + closed.str());
  Json inputs{{"eps", detail::rationals_json(eps)}, {"zeta", detail::rationals_json(zeta)}, {"n", n}};
  return {make_certificate(Quantity::delta_f, Direction::lower, domain_id(sz), domain_id(se), closed, ib.attained, "quasicor", inputs), closed, ib};
}

struct QuasiembedReport {
  std::vector<Rational> eps_x, eps_y;  // ascending depths from the surrogates
  Rational distance;                   // ||x - y||_inf
  Rational slack;                      // max_m (err(x_m) + err(y_m))
  Rational lower;                      // max of both quasicor bounds on d_f
  Rational upper;                      // uppersink bound on d_f
  bool lower_le_upper = false;
  bool lower_sandwich = false;  // log lower >= d - 2 slack
  bool upper_sandwich = false;  // log upper <= 2d + 2 slack
  std::vector<BoundCertificate> certificates;
};

inline std::vector<Rational> depths_from_point(const std::vector<Rational>& x, const SurrogateTable& table, Rational& worst_err) {
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (x[m].sign() < 0) throw Error(ErrorKind::InvalidParameter, "point coordinates must be nonnegative", "x[" + std::to_string(m) + "]");
    if (m > 0 && x[m - 1] < x[m]) throw Error(ErrorKind::InvalidParameter, "point coordinates must be descending", "x[" + std::to_string(m) + "]");
  }
  std::vector<Rational> d;
  for (const auto& xm : x) {
    const SurrogateEntry e = table.lookup(xm);
    worst_err = max(worst_err, e.log_error);
    d.push_back(e.value / Rational(2));
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline QuasiembedReport quasiembed_verify(const std::vector<Rational>& x, const std::vector<Rational>& y, const SurrogateTable& table, long n = 1) {
  if (x.size() != y.size() || x.empty()) throw Error(ErrorKind::InvalidArgument, "points must have the same positive dimension");
  QuasiembedReport r;
  Rational ex(0), ey(0);
  r.eps_x = depths_from_point(x, table, ex);
  r.eps_y = depths_from_point(y, table, ey);
  r.slack = ex + ey;
  r.distance = Rational(0);
  for (std::size_t m = 0; m < x.size(); ++m) r.distance = max(r.distance, abs(x[m] - y[m]));

  const SinkholeLower a = lower_sinkhole_pair(r.eps_x, r.eps_y, n);
  const SinkholeLower b = lower_sinkhole_pair(r.eps_y, r.eps_x, n);
  const BoundCertificate up = upper_sinkhole_pair(r.eps_x, r.eps_y, n);
  r.lower = max(a.closed_form, b.closed_form);
  r.upper = up.value;
  r.lower_le_upper = r.lower <= r.upper;
  r.lower_sandwich = exp_cmp(r.distance - Rational(2) * r.slack, r.lower) != std::strong_ordering::greater;
  r.upper_sandwich = exp_cmp(Rational(2) * r.distance + Rational(2) * r.slack, r.upper) != std::strong_ordering::less;
  r.certificates = {a.certificate, b.certificate, up};
  return r;
}

// --- composition and weakening --------------------------------------------

/// Multiplicative triangle inequality for two upper certificates.
inline BoundCertificate compose(const BoundCertificate& c1, const BoundCertificate& c2) {
  if (c1.direction != Direction::upper || c2.direction != Direction::upper)
    throw Error(ErrorKind::ChainMismatch, "only upper bounds compose");
  if (c1.quantity != c2.quantity) throw Error(ErrorKind::ChainMismatch, "cannot compose different quantities");
  std::string from = c1.from, mid = c1.to, to = c2.to;
  if (mid != c2.from) {
    if (!is_symmetric(c1.quantity)) throw Error(ErrorKind::ChainMismatch, "chain broken: " + mid + " != " + c2.from);
    // symmetric quantities may be read in either orientation
    if (c1.from == c2.from) from = c1.to, mid = c1.from;
    else if (c1.from == c2.to) from = c1.to, mid = c1.from, to = c2.from;
    else if (c1.to == c2.to) to = c2.from;
    else throw Error(ErrorKind::ChainMismatch, "certificates share no domain");
  }
  Json inputs{{"first", to_json(c1)}, {"second", to_json(c2)}};
  return make_certificate(c1.quantity, Direction::upper, from, to, c1.value * c2.value, c1.attained && c2.attained, "triangle", inputs);
}

/// Reinterprets a certificate through d_c <= delta_f (either order) <= d_f.
/// `flip` swaps the pair, allowed whenever either side is symmetric.
inline BoundCertificate weaken(const BoundCertificate& c, Quantity target, bool flip = false) {
  auto level = [](Quantity q) { return q == Quantity::d_c ? 0 : (q == Quantity::delta_f ? 1 : 2); };
  const bool ok = c.direction == Direction::upper ? level(target) <= level(c.quantity) : level(c.quantity) <= level(target);
  if (!ok) throw Error(ErrorKind::ChainMismatch, "inequality runs the wrong way for this weakening");
  if (flip && !is_symmetric(target) && !is_symmetric(c.quantity)) throw Error(ErrorKind::ChainMismatch, "delta_f is not symmetric");
  Json inputs{{"certificate", to_json(c)}, {"quantity", std::string(quantity_name(target))}, {"flip", flip}};
  return make_certificate(target, c.direction, flip ? c.to : c.from, flip ? c.from : c.to, c.value, c.attained, "easyineq", inputs);
}

// --- consistency ------------------------------------------------------------

struct Verdict {
  std::string kind;  // "violation", "strict", "below_one"
  std::string detail;
  std::size_t lower_index = 0;
  std::size_t upper_index = 0;
};

namespace detail {

struct Node {
  Quantity q;
  std::string a, b;
};

inline Node node_of(const BoundCertificate& c) {
  Node n{c.quantity, c.from, c.to};
  if (is_symmetric(c.quantity) && n.b < n.a) std::swap(n.a, n.b);
  return n;
}

inline bool same_pair(const Node& x, const Node& y) { return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a); }

/// X <= Y as quantities on the same pair of domains.
inline bool dominated(const Node& x, const Node& y) {
  if (!same_pair(x, y)) return false;
  if (x.q == y.q) return x.q != Quantity::delta_f || (x.a == y.a && x.b == y.b);
  if (x.q == Quantity::d_c) return true;
  return x.q == Quantity::delta_f && y.q == Quantity::d_f;
}

inline std::string node_str(const Node& n) { return std::string(quantity_name(n.q)) + "(" + n.a + ", " + n.b + ")"; }

}  // namespace detail

/// Pairwise cross-check of lower and upper certificates under
/// d_c <= delta_f <= d_f. Strict verdicts record upper(X) < lower(Y).
inline std::vector<Verdict> consistency_check(const std::vector<BoundCertificate>& certs) {
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < certs.size(); ++i)
    if (certs[i].value < Rational(1)) out.push_back({"below_one", "certificate " + std::to_string(i) + " has value below 1", i, i});
  for (std::size_t i = 0; i < certs.size(); ++i) {
    if (certs[i].direction != Direction::lower) continue;
    const detail::Node lo = detail::node_of(certs[i]);
    for (std::size_t j = 0; j < certs.size(); ++j) {
      if (certs[j].direction != Direction::upper) continue;
      const detail::Node up = detail::node_of(certs[j]);
      if (detail::dominated(lo, up) && certs[j].value < certs[i].value)
        out.push_back({"violation", detail::node_str(lo) + " >= " + certs[i].value.str() + " but " + detail::node_str(up) + " <= " + certs[j].value.str(), i, j});
      if (detail::dominated(up, lo) && certs[j].value < certs[i].value)
        out.push_back({"strict", detail::node_str(up) + " <= " + certs[j].value.str() + " < " + certs[i].value.str() + " <= " + detail::node_str(lo), i, j});
    }
  }
  return out;
}

inline Json to_json(const std::vector<Verdict>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back({{"kind", x.kind}, {"detail", x.detail}, {"lower", x.lower_index}, {"upper", x.upper_index}});
  return arr;
}

// --- v34 -------------------------------------------------------------------

struct V34Report {
  long n = 1;
  Rational eps;
  Rational window;  // 1/14 after rescaling
  long degree_v3 = 0, degree_v4 = 0;
  Rational lower;           // 1/(14 eps), both directions
  Rational engine_v3_v4;    // persistence value for delta_f(V3, V4)
  Rational engine_v4_v3;    // and for delta_f(V4, V3)
  BoundCertificate lower_34, lower_43;
  BoundCertificate upper_dc;
  bool strict = false;
  std::vector<Verdict> verdicts;
};

/// Two truncated ellipsoids V_3, V_4 (beta = 3, 4) over a = (1,..,1, 1-eps):
/// each hemidistance between them is at least 1/(14 eps) while d_c <= 25/9.
inline V34Report v34_report(long n, const Rational& eps) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::DoubleKnotHypothesisFailed, what); };
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (!(eps.sign() > 0 && eps < Rational(1, 6))) fail("eps must lie in (0, 1/6)");

  EllipsoidSpec a{std::vector<Rational>(static_cast<std::size_t>(n), Rational(1))};
  a.a.push_back(Rational(1) - eps);
  const TruncatedEllipsoidSpec v3 = make_truncated(a, eps, Rational(3));
  const TruncatedEllipsoidSpec v4 = make_truncated(a, eps, Rational(4));

  V34Report r;
  r.n = n;
  r.eps = eps;
  r.window = Rational(1, 14);
  r.degree_v3 = 2 - 5 * n;
  r.degree_v4 = 2 - 7 * n;

  auto barcode = [&](const TruncatedEllipsoidSpec& v, long degree, const char* name) {
    const PeriodInfimum ps = trunc_nontrivial_period_infimum(v);
    if (ps.value < r.window) fail(std::string(name) + ": corner families reach below the window (P* = " + ps.value.str() + ")");
    std::vector<ReebOrbit> orbits;
    try {
      orbits = tube_orbits(v.lower_base(), trunc_profile(v), r.window, 0, {});
    } catch (const Error& e) {
      fail(std::string(name) + ": " + e.message());
    }
    if (certified_window(orbits, degree, Extended(r.window)) != Extended(r.window)) fail(std::string(name) + ": window blocked in degree " + std::to_string(degree));
    return barcode_from_orbits(orbits, degree, Extended(r.window));
  };
  try {
    if (cz_center_axis(v3.beta * v3.a_top(), v3.lower_base(), 1) != r.degree_v3) fail("CZ(gamma_{0,1}) for beta = 3 is not 2-5n");
    if (cz_center_axis(v4.beta * v4.a_top(), v4.lower_base(), 1) != r.degree_v4) fail("CZ(gamma_{0,1}) for beta = 4 is not 2-7n");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DoubleKnotHypothesisFailed) throw;
    fail(e.message());
  }
  const CertifiedBarcode v3_hi = barcode(v3, r.degree_v3, "V3"), v4_hi = barcode(v4, r.degree_v3, "V4");
  const CertifiedBarcode v3_lo = barcode(v3, r.degree_v4, "V3"), v4_lo = barcode(v4, r.degree_v4, "V4");
  if (v3_hi.bars.size() != 1 || v4_lo.bars.size() != 1) fail("expected a single center-axis bar");
  if (!v4_hi.bars.empty()) fail("V4 has an orbit of index 2-5n below the window");
  if (!v3_lo.bars.empty()) fail("V3 has an orbit of index 2-7n below the window");

  // delta_f(V3, V4): V4's module implants into V3's; the obstruction lives in 2-7n
  const ImplantationBound b34 = implantation_lower_bound({v4_lo}, {v3_lo});
  const ImplantationBound b43 = implantation_lower_bound({v3_hi}, {v4_hi});
  r.engine_v3_v4 = b34.value.value();
  r.engine_v4_v3 = b43.value.value();
  r.lower = Rational(1) / (Rational(14) * eps);
  if (r.engine_v3_v4 < r.lower || r.engine_v4_v3 < r.lower) fail("persistence engine falls short of 1/(14 eps)");

  const std::string id3 = domain_id(v3), id4 = domain_id(v4);
  const Json base_inputs{{"n", n}, {"eps", eps.str()}};
  Json in34 = base_inputs, in43 = base_inputs;
  in34["order"] = "V3,V4";
  in43["order"] = "V4,V3";
  r.lower_34 = make_certificate(Quantity::delta_f, Direction::lower, id3, id4, r.lower, false, "v34", in34);
  r.lower_43 = make_certificate(Quantity::delta_f, Direction::lower, id4, id3, r.lower, false, "v34", in43);

  const BoundCertificate u3 = weaken(upper_trunc_vs_ellipsoid(v3), Quantity::d_c);
  const BoundCertificate u4 = weaken(upper_trunc_vs_ellipsoid(v4), Quantity::d_c, true);
  r.upper_dc = compose(u3, u4);

  r.verdicts = consistency_check({r.lower_34, r.lower_43, r.upper_dc});
  bool strict34 = false, strict43 = false, violated = false;
  for (const auto& v : r.verdicts) {
    if (v.kind == "strict" && v.lower_index == 0) strict34 = true;
    if (v.kind == "strict" && v.lower_index == 1) strict43 = true;
    if (v.kind != "strict") violated = true;
  }
  r.strict = strict34 && strict43 && !violated;
  return r;
}

inline Json to_json(const V34Report& r) {
  return Json{{"n", r.n},
              {"eps", r.eps.str()},
              {"window", r.window.str()},
              {"degrees", {r.degree_v3, r.degree_v4}},
              {"lower", r.lower.str()},
              {"engine_lower", {{"V3,V4", r.engine_v3_v4.str()}, {"V4,V3", r.engine_v4_v3.str()}}},
              {"upper_dc", r.upper_dc.value.str()},
              {"strict", r.strict},
              {"certificates", {to_json(r.lower_34), to_json(r.lower_43), to_json(r.upper_dc)}},
              {"verdicts", to_json(r.verdicts)}};
}

// --- growth along Dirichlet windows -------------------------------------------

struct ElldistRow {
  BigInt r;
  DirichletWitness witness;
  Rational beta;
  Rational eps;
  TruncLowerReport lower;
  BoundCertificate upper;
  Rational upper_limit;  // (1 + 1/beta)^2
};

/// beta at the window midpoint and eps = (9/10) beta^-2, for each witness index.
inline ElldistRow elldist_row(const EllipsoidSpec& a, const BigInt& r) {
  ElldistRow row;
  row.r = r;
  row.witness = dirichlet_tuple(a, r);
  row.beta = (row.witness.lo + row.witness.hi) / Rational(2);
  row.eps = Rational(9, 10) / (row.beta * row.beta);
  const TruncatedEllipsoidSpec spec = make_truncated(a, row.eps, row.beta);
  row.lower = lower_trunc_vs_all_ellipsoids(spec, row.witness);
  row.upper = upper_trunc_vs_ellipsoid(spec);
  const Rational t = Rational(1) + Rational(1) / row.beta;
  row.upper_limit = t * t;
  return row;
}

inline Json to_json(const ElldistRow& row) {
  return Json{{"r", to_int64(row.r)},
              {"witness", to_json(row.witness)},
              {"beta", row.beta.str()},
              {"eps", row.eps.str()},
              {"k_beta", row.lower.k_beta},
              {"p_star", row.lower.p_star.value.str()},
              {"lower", row.lower.certificate.value.str()},
              {"upper", row.upper.value.str()},
              {"certificates", {to_json(row.lower.certificate), to_json(row.upper)}}};
}

// --- replay ------------------------------------------------------------------

/// Recomputes a certificate from its provenance. manual-inclusion
/// certificates are taken at face value.
inline BoundCertificate replay(const BoundCertificate& c) {
  const std::string& rule = c.provenance.rule;
  const Json& in = c.provenance.inputs;
  if (input_digest(rule, in) != c.provenance.digest) throw Error(ErrorKind::InvalidArgument, "provenance digest mismatch");
  auto depths = [&](const char* key) { return detail::json_rationals(detail::json_field(in, key, "inputs"), std::string("inputs.") + key); };
  if (rule == "coarsecvg")
    return upper_trunc_vs_ellipsoid(detail::json_rational(in.at("beta"), "inputs.beta"), in.at("from").get<std::string>(), in.at("to").get<std::string>());
  if (rule == "uppersink") return upper_sinkhole_pair(depths("eps"), depths("zeta"), in.at("n").get<long>());
  if (rule == "quasicor") return lower_sinkhole_pair(depths("eps"), depths("zeta"), in.at("n").get<long>()).certificate;
  if (rule == "dellu-pipeline") {
    const DomainSpec d = parse_domain(in.at("domain"));
    const auto* t = std::get_if<TruncatedEllipsoidSpec>(&d);
    if (!t) throw Error(ErrorKind::InvalidArgument, "dellu-pipeline input is not a truncated ellipsoid");
    return lower_trunc_vs_all_ellipsoids(*t, witness_from_json(in.at("witness"))).certificate;
  }
  if (rule == "v34") {
    const V34Report r = v34_report(in.at("n").get<long>(), detail::json_rational(in.at("eps"), "inputs.eps"));
    return in.at("order").get<std::string>() == "V3,V4" ? r.lower_34 : r.lower_43;
  }
  if (rule == "triangle") return compose(replay(certificate_from_json(in.at("first"))), replay(certificate_from_json(in.at("second"))));
  if (rule == "easyineq") {
    const std::string q = in.at("quantity").get<std::string>();
    const Quantity target = q == "d_c" ? Quantity::d_c : (q == "d_f" ? Quantity::d_f : Quantity::delta_f);
    return weaken(replay(certificate_from_json(in.at("certificate"))), target, in.at("flip").get<bool>());
  }
  if (rule == "manual-inclusion") return c;
  throw Error(ErrorKind::InvalidArgument, "unknown provenance rule '" + rule + "'");
}

/// True iff replaying reproduces the same quantity, pair, direction and value.
inline bool replay_matches(const BoundCertificate& c) {
  const BoundCertificate r = replay(c);
  return r.quantity == c.quantity && r.direction == c.direction && r.from == c.from && r.to == c.to && r.value == c.value && r.attained == c.attained;
}

inline BoundCertificate manual_certificate(Quantity q, Direction d, std::string from, std::string to, const Rational& value) {
  Json inputs{{"value", value.str()}};
  return make_certificate(q, d, std::move(from), std::move(to), value, false, "manual-inclusion", inputs);
}

}  // namespace orbitgauge
