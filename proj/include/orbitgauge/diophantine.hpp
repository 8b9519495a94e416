#pragma once

// Dirichlet windows: open intervals of beta sitting just below simultaneous
// integer multiples p_j a_j / a_{n+1}.

#include <vector>

#include "orbitgauge/domains.hpp"
#include "orbitgauge/rational.hpp"

namespace orbitgauge {

struct DirichletWitness {
  std::vector<BigInt> p;  // p_1..p_n
  Rational lo;            // open window (lo, hi)
  Rational hi;
  Rational quality;  // for beta in the window, every p_j a_j/a_{n+1} - beta < quality
};

struct BetaCertificate {
  Rational beta;
  std::vector<Rational> margins;  // p_j a_j/a_{n+1} - beta, all > 0
};

inline constexpr long kDefaultPnCeiling = 1'000'000;

namespace detail {

/// Nearest integer, ties rounded down.
inline BigInt nearest_integer(const Rational& x) { return ceil(x - Rational(1, 2)); }

inline Rational scaled_multiple(const BigInt& p, const Rational& a_j, const Rational& a_top) {
  return Rational::from_integer(p) * a_j / a_top;
}

}  // namespace detail

inline DirichletWitness dirichlet_tuple(const EllipsoidSpec& base, const BigInt& p_n_min, long p_n_ceiling = kDefaultPnCeiling) {
  validate(base, "a");
  if (base.size() < 2) throw Error(ErrorKind::InvalidArgument, "need n+1 >= 2 capacities");
  if (p_n_min < 1) throw Error(ErrorKind::InvalidArgument, "p_n_min must be positive");
  const std::size_t n = base.size() - 1;
  const Rational& a_top = base.a[n];

  if (n == 1) {
    const BigInt r = ceil(Rational::from_integer(p_n_min) * a_top / base.a[0]);
    const Rational rho = detail::scaled_multiple(r, base.a[0], a_top);
    const Rational gap = Rational(1) / (rho * rho);
    return {{r}, rho - gap, rho, gap};
  }

  const Rational& a_n = base.a[n - 1];
  const long root = static_cast<long>(n) - 1;
  Rational A = base.a[0] / a_top;
  for (std::size_t j = 1; j < n; ++j) A = max(A, base.a[j] / a_top);

  for (BigInt pn = p_n_min; pn <= p_n_ceiling; ++pn) {
    const Rational inv_pn = Rational(1) / Rational::from_integer(pn);
    std::vector<BigInt> p(n);
    p[n - 1] = pn;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n && ok; ++j) {
      const Rational target = Rational::from_integer(pn) * a_n / base.a[j];
      p[j] = detail::nearest_integer(target);
      if (p[j] < 1 || cmp_power(abs(target - Rational::from_integer(p[j])), inv_pn, root) == std::strong_ordering::greater) ok = false;
    }
    if (!ok) continue;

    Rational m = detail::scaled_multiple(p[0], base.a[0], a_top);
    Rational top = m;
    for (std::size_t j = 1; j < n; ++j) {
      const Rational v = detail::scaled_multiple(p[j], base.a[j], a_top);
      m = min(m, v);
      top = max(top, v);
    }
    // lo sits inside the true window: a lower bound on pn^(-1/(n-1)) gives an
    // upper bound on the irrational endpoint m - A pn^(-1/(n-1)).
    const RootBracket x = root_bracket(inv_pn, root, 64);
    const Rational lo = m - A * x.lo;
    return {std::move(p), lo, m, top - lo};
  }
  throw Error(ErrorKind::SearchExhausted, "no Dirichlet tuple with p_n <= " + std::to_string(p_n_ceiling));
}

inline BetaCertificate certify_beta(const EllipsoidSpec& base, const Rational& beta, const DirichletWitness& w) {
  if (base.size() < 2 || w.p.size() + 1 != base.size()) throw Error(ErrorKind::InvalidArgument, "witness does not match the base dimension");
  if (!(w.lo < beta && beta < w.hi))
    throw Error(ErrorKind::OutsideWindow, "beta " + beta.str() + " not in (" + w.lo.str() + ", " + w.hi.str() + ")");
  const Rational& a_top = base.a.back();
  BetaCertificate cert{beta, {}};
  for (std::size_t j = 0; j < w.p.size(); ++j) {
    Rational margin = detail::scaled_multiple(w.p[j], base.a[j], a_top) - beta;
    if (margin.sign() <= 0)
      throw Error(ErrorKind::OutsideWindow, "margin p_" + std::to_string(j + 1) + " a_j/a_{n+1} - beta = " + margin.str() + " is not positive");
    cert.margins.push_back(std::move(margin));
  }
  for (std::size_t j = 0; j + 1 < base.size(); ++j) {
    const Rational ratio = beta * a_top / base.a[j];
    if (ratio.is_integer())
      throw Error(ErrorKind::DegenerateInput, "beta a_{n+1}/a_" + std::to_string(j + 1) + " = " + ratio.str() + " is an integer");
  }
  return cert;
}

inline Json to_json(const DirichletWitness& w) {
  Json p = Json::array();
  for (const auto& x : w.p) p.push_back(to_int64(x));
  return Json{{"p", p}, {"window", {w.lo.str(), w.hi.str()}}, {"quality", w.quality.str()}};
}

inline DirichletWitness witness_from_json(const Json& j) {
  DirichletWitness w;
  const Json& p = detail::json_field(j, "p", "witness");
  if (!p.is_array()) throw Error(ErrorKind::ParseError, "expected an array", "witness.p");
  for (const auto& x : p) {
    if (!x.is_number_integer()) throw Error(ErrorKind::ParseError, "p entries must be integers", "witness.p");
    w.p.emplace_back(static_cast<long>(x.get<long long>()));
  }
  const auto win = detail::json_rationals(detail::json_field(j, "window", "witness"), "witness.window");
  if (win.size() != 2 || !(win[0] < win[1])) throw Error(ErrorKind::ParseError, "window must be [lo, hi] with lo < hi", "witness.window");
  w.lo = win[0];
  w.hi = win[1];
  w.quality = j.contains("quality") ? detail::json_rational(j["quality"], "witness.quality") : w.hi - w.lo;
  return w;
}

}  // namespace orbitgauge
