#pragma once

// Closed Reeb orbits of radial tubes over ellipsoids: exact periods and
// Conley-Zehnder indices in the unsmoothed limit.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "orbitgauge/diophantine.hpp"
#include "orbitgauge/domains.hpp"
#include "orbitgauge/rational.hpp"

namespace orbitgauge {

// Declaration order is the sort order for orbits of equal period.
enum class OrbitFamily { EllipsoidAxis, BoundaryLift, CenterAxis, SinkholeCenter, CornerFamily };

constexpr std::string_view family_name(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::EllipsoidAxis: return "EllipsoidAxis";
    case OrbitFamily::BoundaryLift: return "BoundaryLift";
    case OrbitFamily::CenterAxis: return "CenterAxis";
    case OrbitFamily::SinkholeCenter: return "SinkholeCenter";
    case OrbitFamily::CornerFamily: return "CornerFamily";
  }
  return "Unknown";
}

struct ReebOrbit {
  OrbitFamily family = OrbitFamily::CenterAxis;
  long index = 0;     // k (axis), m (sinkhole), j (corner); 0 for the center axis
  long corner_k = 0;  // slope numerator of a corner family
  long N = 1;
  Rational period;        // exact period, or a lower bound when is_bound
  bool is_bound = false;  // only corner families
  std::optional<long> cz;
  bool nondegenerate = true;

  std::string label() const {
    if (family == OrbitFamily::CornerFamily) return std::to_string(index) + ":" + std::to_string(corner_k);
    return std::to_string(index);
  }
};

inline bool orbit_less(const ReebOrbit& x, const ReebOrbit& y) {
  if (x.period != y.period) return x.period < y.period;
  return std::tie(x.family, x.index, x.corner_k, x.N) < std::tie(y.family, y.index, y.corner_k, y.N);
}

inline void sort_orbits(std::vector<ReebOrbit>& v) { std::sort(v.begin(), v.end(), orbit_less); }

// --- index formulas -----------------------------------------------------

/// CZ of the N-fold orbit over the fixed point at the center of the base.
inline long cz_center_axis(const Rational& slope_at_zero, const EllipsoidSpec& base, long N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "multiplicity must be positive");
  const long n = static_cast<long>(base.size());
  BigInt cz = n + 2 * N;
  for (std::size_t j = 0; j < base.size(); ++j) {
    const auto [fl, integral] = floor_strict(-Rational(N) * slope_at_zero / base.a[j]);
    if (integral)
      throw Error(ErrorKind::DegenerateOrbit, "center axis N=" + std::to_string(N) + ": N*slope/a_" + std::to_string(j + 1) + " is an integer");
    cz += 2 * fl;
  }
  return to_int64(cz);
}

/// CZ of the lift of a base orbit to the tube boundary, with constant tau there.
inline long cz_boundary_lift(long cz_base, const Rational& period_base, const Rational& tau_at_boundary) {
  const auto [fl, integral] = floor_strict(period_base / tau_at_boundary);
  if (integral)
    throw Error(ErrorKind::DegenerateOrbit, "boundary lift: T/tau = " + (period_base / tau_at_boundary).str() + " is an integer");
  return to_int64(cz_base + 1 + 2 * fl);
}

// --- ellipsoids ---------------------------------------------------------

inline std::vector<ReebOrbit> ellipsoid_spectrum(const EllipsoidSpec& spec, const Rational& period_cap) {
  validate(spec);
  if (period_cap.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "period cap must be positive");
  const long m = static_cast<long>(spec.size());
  std::vector<ReebOrbit> out;
  for (long k = 0; k < m; ++k) {
    const Rational& ak = spec.a[static_cast<std::size_t>(k)];
    const long n_max = to_int64(floor_strict(period_cap / ak).floor);
    for (long N = 1; N <= n_max; ++N) {
      BigInt cz = m - 1;
      for (long j = 0; j < m; ++j) {
        const auto [fl, integral] = floor_strict(Rational(N) * ak / spec.a[static_cast<std::size_t>(j)]);
        if (integral && j != k)
          throw Error(ErrorKind::DegenerateInput, "degenerate orbit at (k=" + std::to_string(k + 1) + ", N=" + std::to_string(N) +
                                                      ", j=" + std::to_string(j + 1) + "): N a_k/a_j is an integer");
        cz += 2 * fl;
      }
      out.push_back({OrbitFamily::EllipsoidAxis, k + 1, 0, N, Rational(N) * ak, false, to_int64(cz), true});
    }
  }
  sort_orbits(out);
  return out;
}

// --- radial tubes -------------------------------------------------------

namespace detail {

inline void check_segment_families(const EllipsoidSpec& base, const RadialProfile& profile, const Rational& cap) {
  for (std::size_t i = 0; i < profile.segments.size(); ++i) {
    const Segment& seg = profile.segments[i];
    for (long N = 1; Rational(N) * seg.intercept <= cap; ++N)
      for (std::size_t j = 0; j < base.size(); ++j)
        if ((Rational(N) * seg.slope / base.a[j]).is_integer())
          throw Error(ErrorKind::DegenerateOrbit, "segment " + std::to_string(i + 1) + " carries a degenerate family at N=" + std::to_string(N) +
                                                      ", j=" + std::to_string(j + 1));
  }
}

}  // namespace detail

/// Orbits of the tube over `base` with profile h: boundary lifts of
/// `base_orbits` (period <= cap), center-axis iterates (period <= cap) and
/// corner families with N <= n_cap (period lower bounds, not capped).
inline std::vector<ReebOrbit> tube_orbits(const EllipsoidSpec& base, const RadialProfile& profile, const Rational& period_cap, long n_cap,
                                          const std::vector<ReebOrbit>& base_orbits) {
  if (period_cap.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "period cap must be positive");
  detail::check_segment_families(base, profile, period_cap);
  std::vector<ReebOrbit> out;

  const Rational& tau_b = profile.tau_at_boundary();
  for (const auto& o : base_orbits) {
    if (period_cap < o.period || o.is_bound) continue;
    ReebOrbit lift{OrbitFamily::BoundaryLift, o.index, 0, o.N, o.period, false, std::nullopt, true};
    try {
      if (o.cz) lift.cz = cz_boundary_lift(*o.cz, o.period, tau_b);
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateOrbit, "boundary lift of base orbit (k=" + std::to_string(o.index) + ", N=" + std::to_string(o.N) + "): " + e.message());
    }
    out.push_back(std::move(lift));
  }

  const Rational h0 = profile.segments.front().intercept;
  for (long N = 1; Rational(N) * h0 <= period_cap; ++N)
    out.push_back({OrbitFamily::CenterAxis, 0, 0, N, Rational(N) * h0, false, cz_center_axis(profile.slope_at_zero(), base, N), true});

  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    const Rational& u = profile.breakpoints[i];
    const Rational& s_hi = profile.segments[i].slope;
    const Rational& s_lo = profile.segments[i + 1].slope;
    const Rational hu = profile.h(u);
    for (long N = 1; N <= n_cap; ++N)
      for (std::size_t j = 0; j < base.size(); ++j) {
        const Rational& aj = base.a[j];
        // s_lo < k a_j / N < s_hi
        const BigInt k_lo = floor_strict(Rational(N) * s_lo / aj).floor + 1;
        const BigInt k_hi = ceil(Rational(N) * s_hi / aj) - 1;
        for (BigInt k = k_lo; k <= k_hi; ++k) {
          const Rational bound = Rational(N) * hu - u * Rational::from_integer(k) * aj;
          out.push_back({OrbitFamily::CornerFamily, static_cast<long>(j) + 1, to_int64(k), N, bound, true, std::nullopt, true});
        }
      }
  }
  sort_orbits(out);
  return out;
}

inline std::vector<ReebOrbit> tube_orbits(const RadialTubeSpec& spec, const Rational& period_cap, long n_cap) {
  std::vector<ReebOrbit> base_orbits;
  if (!spec.base.a.empty()) {
    try {
      base_orbits = ellipsoid_spectrum(spec.base, period_cap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
      throw Error(ErrorKind::DegenerateOrbit, "base ellipsoid: " + e.message());
    }
  }
  return tube_orbits(spec.base, spec.profile, period_cap, n_cap, base_orbits);
}

/// The same spectrum as ellipsoid_spectrum, built one factor at a time: the
/// disk's center orbits, then boundary lifts plus a new center axis per
/// added capacity.
inline std::vector<ReebOrbit> ellipsoid_spectrum_recursive(const EllipsoidSpec& spec, const Rational& period_cap) {
  validate(spec);
  std::vector<ReebOrbit> level;
  EllipsoidSpec base;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    auto next = tube_orbits(base, ellipsoid_profile(spec.a[m]), period_cap, 0, level);
    for (auto& o : next) {
      if (o.family == OrbitFamily::CenterAxis) o.index = static_cast<long>(m) + 1;
      o.family = OrbitFamily::EllipsoidAxis;
    }
    level = std::move(next);
    base.a.push_back(spec.a[m]);
  }
  sort_orbits(level);
  return level;
}

// --- truncated ellipsoids -----------------------------------------------

inline std::vector<ReebOrbit> trunc_orbits(const TruncatedEllipsoidSpec& spec, const Rational& period_cap, long n_cap) {
  return tube_orbits(RadialTubeSpec{spec.lower_base(), trunc_profile(spec)}, period_cap, n_cap);
}

struct PeriodInfimum {
  Rational value;  // P*
  long N = 0;      // minimizer
  long j = 0;
  long k = 0;
  long n_cut = 0;  // ceil(P* / (a_{n+1} eps)): larger N cannot compete
};

/// Exact minimum over all corner families of the unsmoothed period bound
/// N a eps + (N beta a - k a_j)(1 - eps)/(1 + beta).
inline PeriodInfimum trunc_nontrivial_period_infimum(const TruncatedEllipsoidSpec& spec) {
  const Rational& a = spec.a_top();
  const Rational first = a * spec.eps;
  const Rational u = (Rational(1) - spec.eps) / (Rational(1) + spec.beta);
  std::optional<PeriodInfimum> best;
  for (long N = 1; !best || Rational(N) * first < best->value; ++N) {
    const Rational top = Rational(N) * spec.beta * a;
    for (std::size_t j = 0; j + 1 < spec.base.size(); ++j) {
      const Rational& aj = spec.base.a[j];
      // the bound decreases in k, so only the largest k with k a_j < N beta a matters
      const BigInt k = ceil(top / aj) - 1;
      const Rational v = Rational(N) * first + (top - Rational::from_integer(k) * aj) * u;
      if (!best || v < best->value) best = PeriodInfimum{v, N, static_cast<long>(j) + 1, to_int64(k), 0};
    }
  }
  best->n_cut = to_int64(ceil(best->value / first));
  return *best;
}

struct StrongTBound {
  Rational C;         // every corner-family period exceeds C beta^exponent eps
  Rational exponent;  // 1 for n = 1, 1/(n-1) otherwise
  Rational C_short;   // min_j a_j/4, attached to beta^1
  Rational C_long;    // min_j a_j/(6c), attached to beta^2 (n = 1) or beta^(1/(n-1))
  Rational c_upper;   // c itself when rational, otherwise a certified upper bound
};

/// The Dirichlet constant c for the witness family: 1 when n = 1, and
/// 3A (a_n/a_{n+1})^(1/(n-1)) (bounded above) when n >= 2.
inline Rational dirichlet_constant_upper(const EllipsoidSpec& base) {
  const std::size_t n = base.size() - 1;
  if (n == 1) return Rational(1);
  const Rational& a_top = base.a[n];
  Rational A = base.a[0] / a_top;
  for (std::size_t j = 1; j < n; ++j) A = max(A, base.a[j] / a_top);
  return Rational(3) * A * root_bracket(base.a[n - 1] / a_top, static_cast<long>(n) - 1, 64).hi;
}

inline StrongTBound strongTbound_closed_form(const TruncatedEllipsoidSpec& spec, const std::optional<DirichletWitness>& witness) {
  if (!witness) throw Error(ErrorKind::BetaNotCertified, "no Dirichlet witness supplied");
  if (!(Rational(2) < spec.beta)) throw Error(ErrorKind::HypothesisViolated, "closed-form period bound needs beta > 2");
  if (!spec.theorem_strength) throw Error(ErrorKind::HypothesisViolated, "closed-form period bound needs eps < beta^-2");
  try {
    certify_beta(spec.base, spec.beta, *witness);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutsideWindow) throw;
    throw Error(ErrorKind::BetaNotCertified, e.message());
  }
  const long n = spec.n();
  const Rational& a_top = spec.a_top();
  const Rational c = dirichlet_constant_upper(spec.base);

  // The witness must deliver 0 < zeta_j < c beta^-2 (n = 1) or
  // c beta^(-1/(n-1)) (n >= 2); raising to the power n-1 keeps it exact.
  Rational cpow = n == 1 ? Rational(1) : Rational(3);
  if (n >= 2) {
    Rational A = spec.base.a[0] / a_top;
    for (long j = 1; j < n; ++j) A = max(A, spec.base.a[static_cast<std::size_t>(j)] / a_top);
    cpow = pow(Rational(3) * A, n - 1) * spec.base.a[static_cast<std::size_t>(n - 1)] / a_top;
  }
  for (long j = 0; j < n; ++j) {
    const Rational zeta = Rational::from_integer(witness->p[static_cast<std::size_t>(j)]) * spec.base.a[static_cast<std::size_t>(j)] / a_top - spec.beta;
    const bool ok = n == 1 ? zeta * spec.beta * spec.beta < cpow : pow(zeta, n - 1) * spec.beta < cpow;
    if (!ok) throw Error(ErrorKind::BetaNotCertified, "witness does not deliver the Dirichlet approximation for j=" + std::to_string(j + 1));
  }

  Rational amin = spec.base.a[0];
  for (long j = 1; j < n; ++j) amin = min(amin, spec.base.a[static_cast<std::size_t>(j)]);
  StrongTBound r;
  r.C_short = amin / Rational(4);
  r.C_long = amin / (Rational(6) * c);
  r.C = min(r.C_short, r.C_long);
  r.exponent = n == 1 ? Rational(1) : Rational(1, n - 1);
  r.c_upper = c;
  return r;
}

/// Exact test of  C beta^exponent eps <= value.
inline bool strong_bound_at_most(const StrongTBound& b, const TruncatedEllipsoidSpec& spec, const Rational& value) {
  const Rational scaled = value / (b.C * spec.eps);
  if (b.exponent == Rational(1)) return spec.beta <= scaled;
  const long root = to_int64(b.exponent.denominator());
  return cmp_power(scaled, spec.beta, root) != std::strong_ordering::less;
}

/// The grading k_beta = CZ(gamma_{0,1}), after checking k_beta <= 1 and that
/// the center-axis indices strictly decrease (some beta a_{n+1}/a_j > 2).
inline long k_beta(const TruncatedEllipsoidSpec& spec) {
  const EllipsoidSpec lower = spec.lower_base();
  const Rational slope = spec.beta * spec.a_top();
  const long k = cz_center_axis(slope, lower, 1);
  if (k > 1) throw Error(ErrorKind::HypothesisViolated, "k_beta = " + std::to_string(k) + " exceeds 1");
  bool decreasing = false;
  for (const auto& aj : lower.a)
    if (Rational(2) < slope / aj) decreasing = true;
  if (!decreasing) throw Error(ErrorKind::HypothesisViolated, "no j with beta a_{n+1}/a_j > 2; center-axis indices need not decrease");
  return k;
}

// --- sinkholes ----------------------------------------------------------

/// Center orbits of period <= b; `max_multiplicity` > 0 stops each family
/// at that N.
inline std::vector<ReebOrbit> sinkhole_spectrum(const SinkholeSpec& spec, const Rational& threshold_b, long max_multiplicity = 0) {
  if (!(Rational(1, 2) < threshold_b && threshold_b < Rational(1)))
    throw Error(ErrorKind::InvalidParameter, "threshold must lie in (1/2, 1), got " + threshold_b.str(), "b");
  const EllipsoidSpec unit{std::vector<Rational>(static_cast<std::size_t>(spec.n), Rational(1))};
  std::vector<ReebOrbit> out;
  for (long m = 0; m < spec.D(); ++m) {
    const Rational& e = spec.depths[static_cast<std::size_t>(m)];
    for (long N = 1; Rational(N) * e <= threshold_b && (max_multiplicity <= 0 || N <= max_multiplicity); ++N) {
      long cz;
      try {
        cz = cz_center_axis(Rational(2) - e, unit, N);
      } catch (const Error&) {
        throw Error(ErrorKind::DegenerateOrbit, "sinkhole m=" + std::to_string(m + 1) + ", N=" + std::to_string(N) + ": N(2 - eps_m) is an integer");
      }
      if ((cz - spec.n) % 2 != 0) throw Error(ErrorKind::HypothesisViolated, "sinkhole index parity differs from n");
      out.push_back({OrbitFamily::SinkholeCenter, m + 1, 0, N, Rational(N) * e, false, cz, true});
    }
  }
  sort_orbits(out);
  return out;
}

// --- serialization ------------------------------------------------------

inline std::string orbits_csv(const std::vector<ReebOrbit>& orbits) {
  std::ostringstream os;
  os << "family,m_or_k,N,period_or_bound,bound_flag,cz,nondegenerate\n";
  for (const auto& o : orbits)
    os << family_name(o.family) << ',' << o.label() << ',' << o.N << ',' << o.period.str() << ',' << (o.is_bound ? "true" : "false") << ','
       << (o.cz ? std::to_string(*o.cz) : std::string("unknown")) << ',' << (o.nondegenerate ? "true" : "false") << '\n';
  return os.str();
}

inline Json to_json(const ReebOrbit& o) {
  Json j{{"family", std::string(family_name(o.family))}, {"N", o.N}, {"nondegenerate", o.nondegenerate}};
  if (o.family == OrbitFamily::CornerFamily) {
    j["j"] = o.index;
    j["k"] = o.corner_k;
    j["period_lower_bound"] = o.period.str();
  } else {
    j[o.family == OrbitFamily::SinkholeCenter ? "m" : "k"] = o.index;
    j["period"] = o.period.str();
  }
  j["cz"] = o.cz ? Json(*o.cz) : Json("unknown");
  return j;
}

inline Json to_json(const std::vector<ReebOrbit>& orbits) {
  Json arr = Json::array();
  for (const auto& o : orbits) arr.push_back(to_json(o));
  return arr;
}

}  // namespace orbitgauge
