#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mvf/balls.hpp"
#include "mvf/error.hpp"
#include "mvf/lattices.hpp"
#include "mvf/matrix.hpp"
#include "mvf/valued_field.hpp"

namespace mvf {

/// Constraints of one place: one swiss cheese per coordinate.
struct PlaceConstraint {
  Place place;
  std::vector<SwissCheese> coords;
};

/// Per-place cheese constraints over pairwise distinct primes.
class ApproxProblem {
 public:
  explicit ApproxProblem(std::vector<PlaceConstraint> constraints)
      : context_(places_of(constraints)), constraints_(std::move(constraints)) {
    for (auto& pc : constraints_) {
      for (auto& sc : pc.coords) {
        if (sc.place() != pc.place) {
          throw Error(ErrorCode::PlaceMismatch, "cheese filed under the wrong place");
        }
        sc = sc_normalize(sc);
        if (sc_is_empty(sc)) {
          throw Error(ErrorCode::EmptyConstraint,
                      "empty constraint at " + pc.place.prime().get_str());
        }
      }
    }
  }

  /// One cheese per place, for the one-dimensional solver.
  static ApproxProblem one_dim(std::vector<SwissCheese> cheeses) {
    std::vector<PlaceConstraint> pcs;
    for (auto& sc : cheeses) pcs.push_back({sc.place(), {std::move(sc)}});
    return ApproxProblem(std::move(pcs));
  }

  const MultiPlaceContext& context() const { return context_; }
  const std::vector<PlaceConstraint>& constraints() const { return constraints_; }

 private:
  static MultiPlaceContext places_of(const std::vector<PlaceConstraint>& pcs) {
    std::vector<Place> ps;
    for (const auto& pc : pcs) ps.push_back(pc.place);
    return MultiPlaceContext(std::move(ps));
  }

  MultiPlaceContext context_;
  std::vector<PlaceConstraint> constraints_;
};

namespace detail {

/// Smallest non-negative solution of x = r_i mod m_i for coprime moduli.
inline std::pair<BigInt, BigInt> crt(std::span<const std::pair<BigInt, BigInt>> congruences) {
  BigInt x = 0;
  BigInt modulus = 1;
  for (const auto& [r, m] : congruences) {
    if (m == 1) continue;
    // x + modulus * k = r (mod m)
    const BigInt k = mod_floor((r - x) * mod_inverse(mod_floor(modulus, m), m), m);
    x += modulus * k;
    modulus *= m;
  }
  return {mod_floor(x, modulus), modulus};
}

/// Solves one coordinate for cheeses at distinct places.
///
/// Candidates are N / D with D = prod p_i^k_i, where k_i is large enough that
/// p_i^-k_i Z_(p_i) contains the outer ball. The outer-ball congruences on N
/// are solved by CRT; the remaining freedom N = N0 + M t is scanned for t =
/// 0, 1, 2, ... Every hole is determined modulo p_i^(R_i + k_i), R_i the
/// deepest hole radius, so t < prod p_i^(R_i - r_i) already meets every
/// residue class and the scan terminates on a nonempty system.
inline Rat solve_coordinate(std::span<const SwissCheese> cheeses) {
  BigInt denom = 1;
  std::vector<std::int64_t> shifts;
  for (const SwissCheese& sc : cheeses) {
    const Ball& outer = sc.outer();
    std::int64_t k = std::max<std::int64_t>(0, -outer.radius());
    if (!outer.center().is_zero()) k = std::max(k, -val_finite(outer.center(), sc.place()));
    shifts.push_back(k);
    denom *= ipow(sc.place().prime(), static_cast<std::uint64_t>(k));
  }

  std::vector<std::pair<BigInt, BigInt>> congruences;
  BigInt bound = 1;
  for (std::size_t i = 0; i < cheeses.size(); ++i) {
    const SwissCheese& sc = cheeses[i];
    const BigInt& p = sc.place().prime();
    const std::int64_t k = shifts[i];
    const std::int64_t r = sc.outer().radius();
    std::int64_t deepest = r;
    for (const Ball& h : sc.holes()) deepest = std::max(deepest, h.radius());
    bound *= ipow(p, static_cast<std::uint64_t>(deepest - r));
    if (r + k == 0) continue;  // the outer ball is all of p^-k Z_(p)
    const BigInt m = ipow(p, static_cast<std::uint64_t>(r + k));
    // N = D * c (mod p^(r+k)); D * c lies in Z_(p) by the choice of k.
    const Rat target = Rat(denom) * sc.outer().center();
    congruences.emplace_back(
        mod_floor(target.num() * mod_inverse(mod_floor(target.den(), m), m), m), m);
  }

  const auto [base, modulus] = crt(congruences);
  const Rat inv_denom = Rat(BigInt(1), denom);
  for (BigInt t = 0; t < bound; ++t) {
    const Rat x = Rat(BigInt(base + modulus * t)) * inv_denom;
    if (std::all_of(cheeses.begin(), cheeses.end(),
                    [&](const SwissCheese& sc) { return sc_member(x, sc); })) {
      return x;
    }
  }
  throw Error(ErrorCode::VerificationFailed, "digit scan exhausted without a solution");
}

}  // namespace detail

/// A rational in every per-place cheese (one coordinate per place).
inline Rat solve_1d(const ApproxProblem& problem) {
  std::vector<SwissCheese> cheeses;
  for (const auto& pc : problem.constraints()) {
    if (pc.coords.size() != 1) {
      throw Error(ErrorCode::DimensionMismatch, "solve_1d expects one cheese per place");
    }
    cheeses.push_back(pc.coords.front());
  }
  return detail::solve_coordinate(cheeses);
}

/// Coordinatewise solve_1d on a k-dimensional problem.
inline RatVector solve_nd(const ApproxProblem& problem, std::size_t k) {
  for (const auto& pc : problem.constraints()) {
    if (pc.coords.size() != k) {
      throw Error(ErrorCode::DimensionMismatch,
                  "place " + pc.place.prime().get_str() + " constrains " +
                      std::to_string(pc.coords.size()) + " coordinates, expected " +
                      std::to_string(k));
    }
  }
  RatVector out(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<SwissCheese> cheeses;
    for (const auto& pc : problem.constraints()) cheeses.push_back(pc.coords[j]);
    out[j] = detail::solve_coordinate(cheeses);
  }
  return out;
}

namespace detail {
inline std::size_t common_dim(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(ErrorCode::EmptyInput, "no classes to meet");
  for (std::size_t d : dims) {
    if (d != dims.front()) throw Error(ErrorCode::DimensionMismatch, "dimensions differ");
  }
  return dims.front();
}

inline Matrix meet_entries(std::span<const LatticeClass> classes, std::size_t m) {
  std::vector<PlaceConstraint> pcs;
  for (const auto& s : classes) {
    PlaceConstraint pc{s.place(), {}};
    for (auto& row : open_neighborhood(s))
      for (auto& ball : row) pc.coords.emplace_back(std::move(ball), std::vector<Ball>{});
    pcs.push_back(std::move(pc));
  }
  const RatVector flat = solve_nd(ApproxProblem(std::move(pcs)), m * m);
  Matrix c(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) c(j, k) = flat[j * m + k];
  for (const auto& s : classes) {
    if (!lat_eq(c, s.rep(), s.place())) {
      throw Error(ErrorCode::VerificationFailed, "meet fails lattice check");
    }
  }
  return c;
}
}  // namespace detail

/// An invertible matrix lying in every given class (one class per place).
inline Matrix meet_lattice_cosets(std::span<const LatticeClass> classes) {
  std::vector<std::size_t> dims;
  for (const auto& s : classes) dims.push_back(s.dim());
  const std::size_t m = detail::common_dim(dims);
  return detail::meet_entries(classes, m);
}

struct TorsorMeet {
  Matrix basis;
  RatVector vector;
};

/// A basis C in every lattice class and a vector d in every coset u_i + pΛ(s_i).
inline TorsorMeet meet_torsor_cosets(std::span<const TorsorElement> torsors) {
  std::vector<std::size_t> dims;
  std::vector<LatticeClass> classes;
  for (const auto& t : torsors) {
    dims.push_back(t.dim());
    classes.push_back(t.lat());
  }
  const std::size_t m = detail::common_dim(dims);
  Matrix c = detail::meet_entries(classes, m);

  // The coset u + pΛ(s) contains the box d_j in B(u_j, radius_j), with the
  // radii of open_neighborhood.
  std::vector<PlaceConstraint> pcs;
  for (const auto& t : torsors) {
    const auto radii = neighborhood_radii(t.lat().rep(), t.place());
    const RatVector u = t.lift();
    PlaceConstraint pc{t.place(), {}};
    for (std::size_t j = 0; j < m; ++j) {
      pc.coords.emplace_back(Ball(t.place(), u[j], radii[j]), std::vector<Ball>{});
    }
    pcs.push_back(std::move(pc));
  }
  RatVector d = solve_nd(ApproxProblem(std::move(pcs)), m);
  for (const auto& t : torsors) {
    if (!coset_member(d, t)) throw Error(ErrorCode::VerificationFailed, "meet fails coset check");
  }
  return {std::move(c), std::move(d)};
}

}  // namespace mvf
