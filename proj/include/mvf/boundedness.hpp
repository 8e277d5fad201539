#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvf/error.hpp"
#include "mvf/ffpoly.hpp"

namespace mvf {

namespace detail {
inline void require_nonconstant(const FFPoly& f) {
  if (f.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, f.str() + " is constant");
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace detail

/// Rabin's test: x^(p^d) = x mod f, and gcd(x^(p^(d/q)) - x, f) = 1 for every
/// prime q dividing d = deg f.
inline bool ff_irreducible(const FFPoly& f) {
  detail::require_nonconstant(f);
  const auto d = static_cast<std::uint64_t>(f.degree());
  const FFPoly x = FFArith::mod(FFPoly::x(f.characteristic()), f);
  if (FFArith::frobenius_x(f, d) != x) return false;
  for (std::uint64_t q : detail::prime_divisors(d)) {
    const FFPoly g = FFArith::gcd(FFArith::sub(FFArith::frobenius_x(f, d / q), x), f);
    if (g.degree() != 0) return false;
  }
  return true;
}

/// gcd(f, f') = 1.
inline bool ff_separable(const FFPoly& f) {
  detail::require_nonconstant(f);
  return FFArith::gcd(f, FFArith::derivative(f)).degree() == 0;
}

/// Whether separable f splits into linear factors over F_(p^d), d = deg r:
/// f divides x^(p^d) - x.
inline bool ff_splits_mod(const FFPoly& f, const FFPoly& r) {
  FFArith::check(f, r);
  if (!ff_separable(f)) throw Error(ErrorCode::NotSeparable, f.str() + " is not separable");
  if (r.degree() < 1 || !ff_irreducible(r)) {
    throw Error(ErrorCode::NotIrreducibleModulus, r.str() + " is not irreducible");
  }
  const auto d = static_cast<std::uint64_t>(r.degree());
  const FFPoly reduced = FFArith::sub(FFArith::frobenius_x(f, d),
                                      FFArith::mod(FFPoly::x(f.characteristic()), f));
  return FFArith::gcd(reduced, f) == FFArith::monic(f);
}

/// The boundedness data over F_p: the degree function m -> 𝔡(m) on a finite
/// domain and one monic r_m of degree 𝔡(m) per m.
class BoundednessSpec {
 public:
  BoundednessSpec(FFPoly::Coeff p, std::map<std::uint64_t, std::uint64_t> degree_map,
                  std::map<std::uint64_t, FFPoly> r_polys)
      : p_(p), degree_map_(std::move(degree_map)), r_polys_(std::move(r_polys)) {
    for (const auto& [m, d] : degree_map_) {
      auto it = r_polys_.find(m);
      if (it == r_polys_.end()) {
        throw Error(ErrorCode::UnknownDegree, "no r_m for m = " + std::to_string(m));
      }
      const FFPoly& r = it->second;
      if (r.characteristic() != p_) {
        throw Error(ErrorCode::CharacteristicMismatch, "r_" + std::to_string(m));
      }
      if (!r.is_monic() || r.degree() != static_cast<int>(d)) {
        throw Error(ErrorCode::ParseError,
                    "r_" + std::to_string(m) + " must be monic of degree " + std::to_string(d));
      }
    }
    if (r_polys_.size() != degree_map_.size()) {
      throw Error(ErrorCode::UnknownDegree, "r_m given for m outside the degree map");
    }
  }

  FFPoly::Coeff characteristic() const { return p_; }
  const std::map<std::uint64_t, std::uint64_t>& degree_map() const { return degree_map_; }
  const std::map<std::uint64_t, FFPoly>& r_polys() const { return r_polys_; }

 private:
  FFPoly::Coeff p_;
  std::map<std::uint64_t, std::uint64_t> degree_map_;
  std::map<std::uint64_t, FFPoly> r_polys_;
};

struct CandidateVerdict {
  FFPoly candidate;
  bool splits;
};

struct TbdReport {
  std::uint64_t m;
  bool r_irreducible;
  std::vector<CandidateVerdict> candidates;
  bool pass;
};

/// Checks both boundedness axioms for degree m on a finite candidate list.
/// Splitting verdicts are only computed when r_m is irreducible.
inline TbdReport check_Tbd(const BoundednessSpec& spec, std::uint64_t m,
                           std::span<const FFPoly> candidates) {
  auto it = spec.r_polys().find(m);
  if (it == spec.r_polys().end()) {
    throw Error(ErrorCode::UnknownDegree, "m = " + std::to_string(m) + " not in the degree map");
  }
  const FFPoly& r = it->second;
  TbdReport report{m, ff_irreducible(r), {}, false};
  bool all_split = true;
  for (const FFPoly& f : candidates) {
    if (f.degree() != static_cast<int>(m)) {
      throw Error(ErrorCode::DimensionMismatch, f.str() + " does not have degree " + std::to_string(m));
    }
    if (!ff_separable(f)) throw Error(ErrorCode::NotSeparable, f.str() + " is not separable");
    const bool splits = report.r_irreducible && ff_splits_mod(f, r);
    all_split = all_split && splits;
    report.candidates.push_back({f, splits});
  }
  report.pass = report.r_irreducible && all_split;
  return report;
}

}  // namespace mvf
