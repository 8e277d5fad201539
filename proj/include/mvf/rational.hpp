#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>
#include <utility>

#include "mvf/error.hpp"

namespace mvf {

using BigInt = mpz_class;

/// Exact rational in lowest terms with positive denominator; zero is 0/1.
///
/// Thin value wrapper over mpq_class. All gmpxx expression templates are
/// evaluated eagerly at the boundary, so `auto` is always safe with Rat.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "a" or "a/b" with an optional leading '-' on the numerator.
  static Rat parse(std::string_view s) {
    static const std::regex re(R"(^-?[0-9]+(/[0-9]+)?$)");
    std::string str(s);
    if (!std::regex_match(str, re)) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + str + "'");
    }
    const auto slash = str.find('/');
    if (slash == std::string::npos) return Rat(BigInt(str));
    return Rat(BigInt(str.substr(0, slash)), BigInt(str.substr(slash + 1)));
  }

  const mpq_class& value() const { return q_; }
  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  /// "a" when the denominator is 1, else "a/b".
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(ErrorCode::Singular, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  mpq_class q_{0};
};

/// base^e for e >= 0.
inline BigInt ipow(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// base^e as a rational, e of either sign.
inline Rat rpow(const BigInt& base, std::int64_t e) {
  if (e >= 0) return Rat(ipow(base, static_cast<std::uint64_t>(e)));
  return Rat(BigInt(1), ipow(base, static_cast<std::uint64_t>(-e)));
}

/// Non-negative remainder of a modulo m (m > 0).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::NotIntegral, "no inverse of " + a.get_str() +
                                            " modulo " + m.get_str());
  }
  return r;
}

}  // namespace mvf
