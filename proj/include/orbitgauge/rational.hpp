#pragma once

// Exact rational scalars on top of GMP, plus the comparison primitives the
// orbit and window computations rely on: strict floors, m-th root comparisons
// and certified rational bounds on m-th roots.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "orbitgauge/error.hpp"

namespace orbitgauge {

using BigInt = mpz_class;

inline std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "integer out of 64-bit range: " + v.get_str());
  return v.get_si();
}

class Rational {
 public:
  Rational() = default;
  Rational(long long v) : q_(BigInt(static_cast<long>(v))) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den) : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  static Rational from_integer(const BigInt& v) { return Rational(v, BigInt(1)); }

  /// Accepts "p/q", integers, and decimals with an optional exponent
  /// ("-2.75", "1e-3", "0.5E2").
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sign() == 0; }
  const mpq_class& raw() const { return q_; }

  /// Lossless rendering: "p/q", or "p" for integers.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }
  /// Fixed-point display form rounded half away from zero. Not lossless.
  std::string decimal(int digits = 6) const;
  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer power; negative exponents invert (base must then be nonzero).
inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

struct FloorResult {
  BigInt floor;
  bool is_integer = false;
};

/// Greatest integer <= q, together with whether q itself is an integer.
inline FloorResult floor_strict(const Rational& q) {
  FloorResult r;
  mpz_fdiv_q(r.floor.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  r.is_integer = q.is_integer();
  return r;
}

inline BigInt ceil(const Rational& q) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  return c;
}

/// Orders x against y^(1/m) exactly. Negative x is always "less".
inline std::strong_ordering cmp_power(const Rational& x, const Rational& y, long m) {
  if (y.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "cmp_power requires y > 0, got " + y.str());
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "cmp_power requires m >= 1");
  if (x.sign() < 0) return std::strong_ordering::less;
  return pow(x, m) <=> y;
}

/// The rational m-th root of y >= 0 when one exists.
inline std::optional<Rational> exact_root(const Rational& y, long m) {
  if (y.sign() < 0 || m < 1) return std::nullopt;
  BigInt num, den;
  const bool num_exact = mpz_root(num.get_mpz_t(), y.raw().get_num_mpz_t(), static_cast<unsigned long>(m)) != 0;
  const bool den_exact = mpz_root(den.get_mpz_t(), y.raw().get_den_mpz_t(), static_cast<unsigned long>(m)) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  return Rational(num, den);
}

struct RootBracket {
  Rational lo;  ///< lo <= y^(1/m)
  Rational hi;  ///< y^(1/m) <= hi
};

/// Certified rational bracket around y^(1/m) for y > 0, bisected until the
/// width is at most lo * 2^-bits. Exact roots collapse the bracket.
inline RootBracket root_bracket(const Rational& y, long m, int bits = 64) {
  if (y.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "root_bracket requires y > 0");
  if (auto r = exact_root(y, m)) return {*r, *r};
  Rational lo = y < Rational(1) ? y : Rational(1);
  Rational hi = y < Rational(1) ? Rational(1) : y;
  const Rational tol = pow(Rational(2), -bits);
  for (int guard = 0; guard < 4096 && hi - lo > lo * tol; ++guard) {
    const Rational mid = (lo + hi) / Rational(2);
    if (cmp_power(mid, y, m) == std::strong_ordering::greater) hi = mid;
    else lo = mid;
  }
  return {lo, hi};
}

/// Rational or +infinity. Used for open-ended windows and unbounded suprema.
class Extended {
 public:
  Extended() : value_(Rational(0)) {}
  Extended(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Extended(long long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  static Extended infinity() {
    Extended e;
    e.value_.reset();
    return e;
  }
  static Extended parse(std::string_view text) {
    if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
    return Extended(Rational::parse(text));
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw Error(ErrorKind::InvalidArgument, "value of an infinite quantity requested");
    return *value_;
  }
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const Extended& a, const Extended& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.value_ <=> *b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.str(); }

 private:
  std::optional<Rational> value_;
};

inline Extended operator/(const Extended& a, const Rational& b) {
  if (a.is_infinite()) {
    if (b.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "infinite quantity divided by non-positive value");
    return a;
  }
  return Extended(a.value() / b);
}

// --- parsing / rendering -------------------------------------------------

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt parse_signed_int(std::string_view s, std::string_view original) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(original) + "'");
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = detail::parse_signed_int(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!detail::all_digits(den_text)) throw Error(ErrorKind::ParseError, "bad denominator in '" + std::string(text) + "'");
    const BigInt den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = to_int64(detail::parse_signed_int(s.substr(e + 1), text));
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)))
      throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!detail::all_digits(s)) throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational v = Rational::from_integer(BigInt(digits, 10)) * pow(Rational(10), exponent);
  return neg ? -v : v;
}

inline std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero on |q| * 10^digits
  const mpq_class scaled = abs(q_) * mpq_class(scale);
  BigInt twice = 2 * scaled.get_num();
  BigInt rounded;
  twice += scaled.get_den();
  mpz_fdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * scaled.get_den()).get_mpz_t());
  std::string body = rounded.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool negative = sign() < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

}  // namespace orbitgauge
