#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvf/error.hpp"
#include "mvf/rational.hpp"

namespace mvf {

/// Polynomial over F_p, coefficients low degree first, trailing zeros trimmed.
/// The zero polynomial has no coefficients.
class FFPoly {
 public:
  using Coeff = std::uint64_t;

  explicit FFPoly(Coeff p, std::vector<Coeff> coeffs = {}) : p_(p), c_(std::move(coeffs)) {
    if (p < 2 || mpz_probab_prime_p(BigInt(static_cast<unsigned long>(p)).get_mpz_t(), 40) == 0) {
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    }
    for (Coeff& a : c_) a %= p_;
    trim();
  }

  /// Coefficients reduced from arbitrary signed integers.
  static FFPoly from_signed(Coeff p, std::span<const std::int64_t> coeffs) {
    std::vector<Coeff> c;
    const auto sp = static_cast<std::int64_t>(p);
    for (std::int64_t a : coeffs) c.push_back(static_cast<Coeff>(((a % sp) + sp) % sp));
    return FFPoly(p, std::move(c));
  }

  static FFPoly x(Coeff p) { return FFPoly(p, {0, 1}); }

  Coeff characteristic() const { return p_; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Coeff lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  friend bool operator==(const FFPoly&, const FFPoly&) = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  friend struct FFArith;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Coeff p_;
  std::vector<Coeff> c_;
};

/// Polynomial arithmetic over F_p.
struct FFArith {
  using Coeff = FFPoly::Coeff;

  static Coeff mul(Coeff a, Coeff b, Coeff p) {
    return static_cast<Coeff>((static_cast<unsigned __int128>(a) * b) % p);
  }
  static Coeff add(Coeff a, Coeff b, Coeff p) { return static_cast<Coeff>((static_cast<unsigned __int128>(a) + b) % p); }
  static Coeff sub(Coeff a, Coeff b, Coeff p) { return add(a, p - b, p); }
  static Coeff pow(Coeff a, std::uint64_t e, Coeff p) {
    Coeff r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a, p);
      a = mul(a, a, p);
      e >>= 1;
    }
    return r;
  }
  static Coeff inv(Coeff a, Coeff p) { return pow(a, p - 2, p); }

  static void check(const FFPoly& a, const FFPoly& b) {
    if (a.p_ != b.p_) {
      throw Error(ErrorCode::CharacteristicMismatch,
                  std::to_string(a.p_) + " vs " + std::to_string(b.p_));
    }
  }

  static FFPoly add(const FFPoly& a, const FFPoly& b) {
    check(a, b);
    std::vector<Coeff> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = add(a[i], b[i], a.p_);
    return FFPoly(a.p_, std::move(c));
  }
  static FFPoly sub(const FFPoly& a, const FFPoly& b) {
    check(a, b);
    std::vector<Coeff> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub(a[i], b[i], a.p_);
    return FFPoly(a.p_, std::move(c));
  }
  static FFPoly mul(const FFPoly& a, const FFPoly& b) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return FFPoly(a.p_);
    std::vector<Coeff> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = add(c[i + j], mul(a.c_[i], b.c_[j], a.p_), a.p_);
    return FFPoly(a.p_, std::move(c));
  }

  /// (quotient, remainder); b nonzero.
  static std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b) {
    check(a, b);
    if (b.is_zero()) throw Error(ErrorCode::Singular, "polynomial division by zero");
    const Coeff p = a.p_;
    std::vector<Coeff> r = a.c_;
    if (a.degree() < b.degree()) return {FFPoly(p), a};
    std::vector<Coeff> q(r.size() - b.c_.size() + 1, 0);
    const Coeff lead_inv = inv(b.lead(), p);
    for (std::size_t i = q.size(); i-- > 0;) {
      const Coeff f = mul(r[i + b.c_.size() - 1], lead_inv, p);
      q[i] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = sub(r[i + j], mul(f, b.c_[j], p), p);
    }
    return {FFPoly(p, std::move(q)), FFPoly(p, std::move(r))};
  }
  static FFPoly mod(const FFPoly& a, const FFPoly& b) { return divmod(a, b).second; }

  static FFPoly monic(const FFPoly& a) {
    if (a.is_zero()) return a;
    const Coeff li = inv(a.lead(), a.p_);
    std::vector<Coeff> c = a.c_;
    for (Coeff& x : c) x = mul(x, li, a.p_);
    return FFPoly(a.p_, std::move(c));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  static FFPoly gcd(FFPoly a, FFPoly b) {
    check(a, b);
    while (!b.is_zero()) {
      FFPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  static FFPoly derivative(const FFPoly& a) {
    std::vector<Coeff> c;
    for (std::size_t i = 1; i < a.c_.size(); ++i) c.push_back(mul(a.c_[i], i % a.p_, a.p_));
    return FFPoly(a.p_, std::move(c));
  }

  /// base^e mod m.
  static FFPoly powmod(FFPoly base, BigInt e, const FFPoly& m) {
    FFPoly r = mod(FFPoly(base.p_, {1}), m);
    base = mod(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base), m);
      base = mod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }

  /// x^(p^k) mod m by k successive p-th powers.
  static FFPoly frobenius_x(const FFPoly& m, std::uint64_t k) {
    FFPoly r = mod(FFPoly::x(m.p_), m);
    const BigInt p(static_cast<unsigned long>(m.p_));
    for (std::uint64_t i = 0; i < k; ++i) r = powmod(r, p, m);
    return r;
  }
};

}  // namespace mvf
