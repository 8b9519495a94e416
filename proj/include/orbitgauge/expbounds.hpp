#pragma once

// Rational enclosures of exp(t), used to check logarithmic inequalities
// exactly, and rational surrogates for exp(-x) with certified log error.

#include <algorithm>
#include <compare>
#include <map>

#include "orbitgauge/domains.hpp"
#include "orbitgauge/rational.hpp"

namespace orbitgauge {

struct ExpBracket {
  Rational lo;
  Rational hi;
};

/// lo <= exp(t) <= hi using `terms` Taylor terms (clamped up so the tail
/// bound applies).
inline ExpBracket exp_bracket(const Rational& t, long terms) {
  if (t.sign() < 0) {
    const ExpBracket inv = exp_bracket(-t, terms);
    return {Rational(1) / inv.hi, Rational(1) / inv.lo};
  }
  const long k_min = to_int64(ceil(t)) + 2;
  const long K = std::max(terms, k_min);
  Rational sum(1), term(1);
  for (long k = 1; k <= K; ++k) {
    term = term * t / Rational(k);
    sum += term;
  }
  // tail <= T_K * t/(K+1) * 1/(1 - t/(K+2))
  const Rational ratio = t / Rational(K + 2);
  const Rational tail = term * t / Rational(K + 1) / (Rational(1) - ratio);
  return {sum, sum + tail};
}

/// Exact ordering of exp(t) against c > 0.
inline std::strong_ordering exp_cmp(const Rational& t, const Rational& c) {
  if (c.sign() <= 0) return std::strong_ordering::greater;
  if (t.is_zero()) return Rational(1) <=> c;
  for (long terms = 16; terms <= (1L << 14); terms *= 2) {
    const ExpBracket b = exp_bracket(t, terms);
    if (c < b.lo) return std::strong_ordering::greater;
    if (b.hi < c) return std::strong_ordering::less;
  }
  // exp of a nonzero rational is irrational, so this is only reachable when
  // c agrees with exp(t) to thousands of digits
  throw Error(ErrorKind::InvalidArgument, "exp comparison did not separate at t = " + t.str());
}

/// Rounds q > 0 to `digits` significant decimal digits (half up).
inline Rational round_significant(const Rational& q, int digits) {
  long e = 0;
  Rational m = q;
  while (Rational(10) <= m) m /= Rational(10), ++e;
  while (m < Rational(1)) m *= Rational(10), --e;
  const Rational scale = pow(Rational(10), digits - 1 - e);
  return Rational::from_integer(floor_strict(q * scale + Rational(1, 2)).floor) / scale;
}

/// Smallest decimal with `digits` fractional digits that is >= q.
inline Rational round_up_decimal(const Rational& q, int digits) {
  const Rational scale = pow(Rational(10), digits);
  return Rational::from_integer(ceil(q * scale)) / scale;
}

struct SurrogateEntry {
  Rational x;
  Rational value;      // stands in for exp(-x)
  Rational log_error;  // |log(value) + x| <= log_error
};

/// True iff |log(value) + x| <= err, decided exactly.
inline bool log_error_holds(const Rational& x, const Rational& value, const Rational& err) {
  if (value.sign() <= 0 || err.sign() < 0) return false;
  // exp(-x-err) <= value <= exp(-x+err)
  return exp_cmp(-x - err, value) != std::strong_ordering::greater && exp_cmp(-x + err, value) != std::strong_ordering::less;
}

/// Surrogates for exp(-x). The standard table is generated on demand at
/// nine significant digits; caller tables are checked entry by entry.
class SurrogateTable {
 public:
  static SurrogateTable standard() { return SurrogateTable(); }

  static SurrogateTable from_entries(const std::vector<SurrogateEntry>& entries) {
    SurrogateTable t;
    t.generated_ = false;
    for (const auto& e : entries) {
      if (!log_error_holds(e.x, e.value, e.log_error))
        throw Error(ErrorKind::InvalidParameter, "surrogate for x = " + e.x.str() + " misses its stated error bound", "surrogate");
      t.table_[e.x] = e;
    }
    return t;
  }

  static SurrogateTable from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "surrogate table must be an array", "surrogate");
    std::vector<SurrogateEntry> entries;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string path = "surrogate[" + std::to_string(i) + "]";
      entries.push_back({detail::json_rational(detail::json_field(j[i], "x", path), path + ".x"),
                         detail::json_rational(detail::json_field(j[i], "value", path), path + ".value"),
                         detail::json_rational(detail::json_field(j[i], "log_error", path), path + ".log_error")});
    }
    return from_entries(entries);
  }

  SurrogateEntry lookup(const Rational& x) const {
    if (auto it = table_.find(x); it != table_.end()) return it->second;
    if (!generated_) throw Error(ErrorKind::InvalidArgument, "no surrogate entry for x = " + x.str(), "surrogate");
    return generate(x);
  }

  static SurrogateEntry generate(const Rational& x) {
    if (x.is_zero()) return {x, Rational(1), Rational(0)};
    const ExpBracket e = exp_bracket(x, 64 + 4 * to_int64(ceil(abs(x))));
    const Rational value = round_significant(Rational(1) / e.lo, 9);
    // value * exp(x) lies in [value lo, value hi]; |log y| <= |y - 1| / min(y, 1)
    Rational err(0);
    for (const Rational& y : {value * e.lo, value * e.hi}) err = max(err, abs(y - Rational(1)) / min(y, Rational(1)));
    return {x, value, round_up_decimal(err, 12)};
  }

 private:
  bool generated_ = true;
  std::map<Rational, SurrogateEntry> table_;
};

}  // namespace orbitgauge
