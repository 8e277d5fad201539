#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mvf/error.hpp"
#include "mvf/rational.hpp"

namespace mvf {

/// Element of Z ∪ {∞}. Infinity is strictly above every integer and
/// absorbs addition.
class ExtInt {
 public:
  constexpr ExtInt(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr ExtInt infinity() { return ExtInt(); }

  constexpr bool is_infinite() const { return !v_.has_value(); }
  constexpr bool is_finite() const { return v_.has_value(); }
  /// Precondition: is_finite().
  constexpr std::int64_t value() const { return *v_; }

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtInt(*a.v_ + *b.v_);
  }
  friend constexpr bool operator==(ExtInt a, ExtInt b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.v_ <=> *b.v_;
  }

  std::string str() const { return v_ ? std::to_string(*v_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, ExtInt e) {
    return os << e.str();
  }

 private:
  constexpr ExtInt() = default;
  std::optional<std::int64_t> v_;
};

/// A p-adic place on Q: valuation v_p, ring Z_(p), ideal pZ_(p), residue
/// field F_p and value group Z.
class Place {
 public:
  explicit Place(BigInt prime) : p_(std::move(prime)) {
    if (p_ < 2 || mpz_probab_prime_p(p_.get_mpz_t(), 40) == 0) {
      throw Error(ErrorCode::NotPrime, p_.get_str() + " is not prime");
    }
  }
  explicit Place(long prime) : Place(BigInt(prime)) {}

  const BigInt& prime() const { return p_; }

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    const int c = cmp(a.p_, b.p_);
    return c <=> 0;
  }

 private:
  BigInt p_;
};

/// Number of times p divides a nonzero integer.
inline std::int64_t ord(const BigInt& n, const BigInt& p) {
  if (n == 0) return 0;
  BigInt rest;
  return static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline ExtInt val(const Rat& x, const Place& P) {
  if (x.is_zero()) return ExtInt::infinity();
  return ExtInt(ord(x.num(), P.prime()) - ord(x.den(), P.prime()));
}

/// Finite valuation; callers guarantee x != 0.
inline std::int64_t val_finite(const Rat& x, const Place& P) {
  return val(x, P).value();
}

/// Image of x in F_p as the integer in [0, p).
inline BigInt residue(const Rat& x, const Place& P) {
  if (val(x, P) < ExtInt(0)) {
    throw Error(ErrorCode::NotIntegral,
                x.str() + " has negative valuation at " + P.prime().get_str());
  }
  const BigInt& p = P.prime();
  return mod_floor(mod_floor(x.num(), p) * mod_inverse(mod_floor(x.den(), p), p),
                   p);
}

/// Canonical representative of the coset x + p^r Z_(p): the truncated digit
/// expansion sum_{v(x) <= i < r} a_i p^i with a_i in [0, p). Zero when
/// v(x) >= r.
inline Rat truncate_digits(const Rat& x, const Place& P, std::int64_t r) {
  const ExtInt v = val(x, P);
  if (v >= ExtInt(r)) return Rat(0);
  const std::int64_t shift = std::max<std::int64_t>(0, -v.value());
  const BigInt& p = P.prime();
  const BigInt modulus = ipow(p, static_cast<std::uint64_t>(r + shift));
  // x * p^shift has non-negative valuation; reduce it as an element of Z_(p).
  const Rat scaled = x * rpow(p, shift);
  const BigInt n = mod_floor(
      scaled.num() * mod_inverse(mod_floor(scaled.den(), modulus), modulus),
      modulus);
  return Rat(n, ipow(p, static_cast<std::uint64_t>(shift)));
}

/// Digits a_lo .. a_{r-1} of truncate_digits(x, P, r) with lo = min(0, v(x)).
inline std::vector<BigInt> digit_string(const Rat& x, const Place& P,
                                        std::int64_t r) {
  const Rat t = truncate_digits(x, P, r);
  std::vector<BigInt> digits;
  if (t.is_zero()) return digits;
  const std::int64_t lo = std::min<std::int64_t>(0, val_finite(t, P));
  BigInt n = (t * rpow(P.prime(), -lo)).num();
  for (std::int64_t i = lo; i < r; ++i) {
    digits.push_back(mod_floor(n, P.prime()));
    n /= P.prime();
  }
  return digits;
}

/// Ordered list of pairwise distinct places: independent valuations.
class MultiPlaceContext {
 public:
  explicit MultiPlaceContext(std::vector<Place> places)
      : places_(std::move(places)) {
    for (std::size_t i = 0; i < places_.size(); ++i) {
      for (std::size_t j = i + 1; j < places_.size(); ++j) {
        if (places_[i] == places_[j]) {
          throw Error(ErrorCode::DuplicatePlace,
                      "place " + places_[i].prime().get_str() + " repeated");
        }
      }
    }
  }

  std::span<const Place> places() const { return places_; }
  std::size_t size() const { return places_.size(); }

 private:
  std::vector<Place> places_;
};

/// Coefficients (leading first) of the monic polynomial prod (x - a).
/// Input order is irrelevant; the caller supplies pairwise distinct points.
inline std::vector<Rat> code_finite_set(std::span<const Rat> points) {
  std::vector<Rat> coeffs{Rat(1)};
  for (const Rat& a : points) {
    std::vector<Rat> next(coeffs.size() + 1, Rat(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * a;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace mvf
