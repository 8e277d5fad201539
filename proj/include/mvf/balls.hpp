#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvf/error.hpp"
#include "mvf/rational.hpp"
#include "mvf/valued_field.hpp"

namespace mvf {

/// Closed ultrametric ball {x : v(x - center) >= radius} at one place.
///
/// Open balls {v(x - c) > r} are accepted through Ball::open and stored as
/// the closed ball of radius r + 1. The center is always the truncated digit
/// representative, so equal sets compare equal member-wise.
class Ball {
 public:
  Ball(Place place, const Rat& center, std::int64_t radius)
      : place_(std::move(place)),
        center_(truncate_digits(center, place_, radius)),
        radius_(radius) {}

  static Ball closed(Place place, const Rat& center, std::int64_t radius) {
    return Ball(std::move(place), center, radius);
  }
  static Ball open(Place place, const Rat& center, std::int64_t radius) {
    return Ball(std::move(place), center, radius + 1);
  }

  const Place& place() const { return place_; }
  const Rat& center() const { return center_; }
  std::int64_t radius() const { return radius_; }

  bool contains(const Rat& x) const {
    return val(x - center_, place_) >= ExtInt(radius_);
  }

  /// The sub-ball of radius + 1 whose next digit is `digit`.
  Ball child(const BigInt& digit) const {
    return Ball(place_, center_ + Rat(digit) * rpow(place_.prime(), radius_),
                radius_ + 1);
  }

  /// Sort key: radius, then the canonical digit string of the center.
  friend bool operator<(const Ball& a, const Ball& b) {
    if (a.radius_ != b.radius_) return a.radius_ < b.radius_;
    return digit_string(a.center_, a.place_, a.radius_) <
           digit_string(b.center_, b.place_, b.radius_);
  }
  friend bool operator==(const Ball& a, const Ball& b) = default;

  std::string str() const {
    return "B(" + center_.str() + "," + std::to_string(radius_) + ")@" +
           place_.prime().get_str();
  }

 private:
  Place place_;
  Rat center_;
  std::int64_t radius_;
};

inline bool member(const Rat& x, const Ball& b) { return b.contains(x); }

enum class BallRelation { Equal, FirstInsideSecond, SecondInsideFirst, Disjoint };

inline std::string_view to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Equal: return "Equal";
    case BallRelation::FirstInsideSecond: return "FirstInsideSecond";
    case BallRelation::SecondInsideFirst: return "SecondInsideFirst";
    case BallRelation::Disjoint: return "Disjoint";
  }
  return "";
}

namespace detail {
inline void require_same_place(const Ball& a, const Ball& b) {
  if (a.place() != b.place()) {
    throw Error(ErrorCode::PlaceMismatch,
                a.str() + " and " + b.str() + " live at different places");
  }
}
}  // namespace detail

/// Two balls at one place are either nested or disjoint.
inline BallRelation compare(const Ball& a, const Ball& b) {
  detail::require_same_place(a, b);
  const std::int64_t r = std::min(a.radius(), b.radius());
  if (val(a.center() - b.center(), a.place()) < ExtInt(r)) {
    return BallRelation::Disjoint;
  }
  if (a.radius() == b.radius()) return BallRelation::Equal;
  return a.radius() > b.radius() ? BallRelation::FirstInsideSecond
                                 : BallRelation::SecondInsideFirst;
}

/// a ⊆ b.
inline bool is_inside(const Ball& a, const Ball& b) {
  const auto rel = compare(a, b);
  return rel == BallRelation::Equal || rel == BallRelation::FirstInsideSecond;
}

/// v(x - y) for any x in a, y in b; the balls must be disjoint.
inline std::int64_t dist(const Ball& a, const Ball& b) {
  if (compare(a, b) != BallRelation::Disjoint) {
    throw Error(ErrorCode::NotDisjoint, a.str() + " meets " + b.str());
  }
  return val_finite(a.center() - b.center(), a.place());
}

namespace detail {
inline void require_pairwise_disjoint(std::span<const Ball> balls) {
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (compare(balls[i], balls[j]) != BallRelation::Disjoint) {
        throw Error(ErrorCode::NotDisjoint,
                    balls[i].str() + " meets " + balls[j].str());
      }
    }
  }
}
}  // namespace detail

/// Smallest closed ball covering a family of pairwise disjoint balls: centered
/// at any member center with radius the minimum pairwise distance.
inline Ball min_closed_cover(std::span<const Ball> balls) {
  if (balls.empty()) throw Error(ErrorCode::EmptyInput, "no balls to cover");
  for (const Ball& b : balls) detail::require_same_place(balls.front(), b);
  if (balls.size() == 1) return balls.front();
  detail::require_pairwise_disjoint(balls);
  std::int64_t gamma = dist(balls[0], balls[1]);
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      gamma = std::min(gamma, dist(balls[i], balls[j]));
    }
  }
  return Ball(balls.front().place(), balls.front().center(), gamma);
}

/// Minimality witness for a cover of radius gamma: for the input ball at
/// `index`, a center of another input ball at distance exactly gamma. That
/// point lies outside the closed ball of radius gamma + 1 around
/// balls[index].center().
inline Rat cover_witness(std::span<const Ball> balls, std::size_t index) {
  if (balls.size() < 2) {
    throw Error(ErrorCode::EmptyInput, "a witness needs two or more balls");
  }
  const Ball cover = min_closed_cover(balls);
  for (std::size_t k = 0; k < balls.size(); ++k) {
    if (k != index && dist(balls[index], balls[k]) == cover.radius()) {
      return balls[k].center();
    }
  }
  throw Error(ErrorCode::VerificationFailed, "no ball at minimal distance");
}

/// A ball minus finitely many balls at the same place, or the empty set.
class SwissCheese {
 public:
  SwissCheese(Ball outer, std::vector<Ball> holes)
      : outer_(std::move(outer)), holes_(std::move(holes)) {
    for (const Ball& h : holes_) detail::require_same_place(outer_, h);
  }

  static SwissCheese empty(Place place) {
    SwissCheese sc(Ball(place, Rat(0), 0), {});
    sc.empty_ = true;
    return sc;
  }

  bool is_empty_form() const { return empty_; }
  const Place& place() const { return outer_.place(); }
  const Ball& outer() const { return outer_; }
  const std::vector<Ball>& holes() const { return holes_; }

  friend bool operator==(const SwissCheese&, const SwissCheese&) = default;

 private:
  Ball outer_;
  std::vector<Ball> holes_;
  bool empty_ = false;
};

inline bool sc_member(const Rat& x, const SwissCheese& sc) {
  if (sc.is_empty_form() || !sc.outer().contains(x)) return false;
  return std::none_of(sc.holes().begin(), sc.holes().end(),
                      [&](const Ball& h) { return h.contains(x); });
}

/// Same point set, canonical layout: holes lie strictly inside the outer ball,
/// are pairwise disjoint and maximal (p sibling holes collapse into their
/// parent), and are sorted by (radius, center digits). Covering the whole
/// outer ball yields the Empty form.
inline SwissCheese sc_normalize(const SwissCheese& sc) {
  if (sc.is_empty_form()) return SwissCheese::empty(sc.place());
  const Ball& outer = sc.outer();
  const BigInt& p = outer.place().prime();

  std::vector<Ball> inside;
  for (const Ball& h : sc.holes()) {
    switch (compare(h, outer)) {
      case BallRelation::Disjoint: break;
      case BallRelation::Equal:
      case BallRelation::SecondInsideFirst: return SwissCheese::empty(sc.place());
      case BallRelation::FirstInsideSecond: inside.push_back(h); break;
    }
  }

  // Largest holes first, so a hole nested in an earlier one is absorbed.
  std::sort(inside.begin(), inside.end(),
            [](const Ball& a, const Ball& b) { return a.radius() < b.radius(); });
  std::map<std::int64_t, std::vector<Ball>> by_radius;
  std::vector<const Ball*> kept;
  for (const Ball& h : inside) {
    const bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const Ball* k) {
      return is_inside(h, *k);
    });
    if (!absorbed) {
      kept.push_back(&h);
      by_radius[h.radius()].push_back(h);
    }
  }

  // Collapse complete sibling families bottom-up: p holes filling a common
  // parent are replaced by the parent.
  std::int64_t r = by_radius.empty() ? outer.radius() : by_radius.rbegin()->first;
  while (r > outer.radius()) {
    if (auto it = by_radius.find(r); it != by_radius.end()) {
      std::map<std::vector<BigInt>, std::vector<Ball>> families;
      for (const Ball& h : it->second) {
        families[digit_string(h.center(), h.place(), r - 1)].push_back(h);
      }
      std::vector<Ball> survivors;
      for (auto& [key, fam] : families) {
        if (BigInt(static_cast<unsigned long>(fam.size())) == p) {
          if (r - 1 == outer.radius()) return SwissCheese::empty(sc.place());
          by_radius[r - 1].emplace_back(outer.place(), fam.front().center(), r - 1);
        } else {
          survivors.insert(survivors.end(), fam.begin(), fam.end());
        }
      }
      it->second = std::move(survivors);
    }
    auto below = by_radius.lower_bound(r);
    if (below == by_radius.begin()) break;
    r = std::prev(below)->first;
  }

  std::vector<Ball> holes;
  for (auto& [rad, hs] : by_radius) holes.insert(holes.end(), hs.begin(), hs.end());
  std::sort(holes.begin(), holes.end());
  return SwissCheese(outer, std::move(holes));
}

/// Holes strictly inside the outer ball and pairwise disjoint.
inline bool is_normalized_layout(const SwissCheese& sc) {
  if (sc.is_empty_form()) return true;
  const auto& hs = sc.holes();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (compare(hs[i], sc.outer()) != BallRelation::FirstInsideSecond) return false;
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (compare(hs[i], hs[j]) != BallRelation::Disjoint) return false;
    }
  }
  return true;
}

/// Emptiness by ball counting: with G the largest hole radius, the outer ball
/// holds p^(G - r_outer) sub-balls of radius G and hole h covers p^(G - r_h)
/// of them.
inline bool sc_is_empty(const SwissCheese& sc) {
  if (!is_normalized_layout(sc)) {
    throw Error(ErrorCode::NotNormalized, "holes must be disjoint proper sub-balls");
  }
  if (sc.is_empty_form()) return true;
  if (sc.holes().empty()) return false;
  const BigInt& p = sc.place().prime();
  std::int64_t deepest = sc.holes().front().radius();
  for (const Ball& h : sc.holes()) deepest = std::max(deepest, h.radius());
  BigInt covered = 0;
  for (const Ball& h : sc.holes()) {
    covered += ipow(p, static_cast<std::uint64_t>(deepest - h.radius()));
  }
  return covered == ipow(p, static_cast<std::uint64_t>(deepest - sc.outer().radius()));
}

/// Finite family of balls at one place, totally ordered by inclusion.
/// Stored largest first.
class BallChain {
 public:
  explicit BallChain(std::vector<Ball> balls) : balls_(std::move(balls)) {
    if (balls_.empty()) throw Error(ErrorCode::EmptyInput, "empty ball chain");
    std::sort(balls_.begin(), balls_.end(),
              [](const Ball& a, const Ball& b) { return a.radius() < b.radius(); });
    for (std::size_t i = 0; i + 1 < balls_.size(); ++i) {
      detail::require_same_place(balls_[i], balls_[i + 1]);
      if (!is_inside(balls_[i + 1], balls_[i])) {
        throw Error(ErrorCode::InvalidChain,
                    balls_[i].str() + " and " + balls_[i + 1].str() + " are disjoint");
      }
    }
  }

  const std::vector<Ball>& balls() const { return balls_; }
  const Ball& smallest() const { return balls_.back(); }

 private:
  std::vector<Ball> balls_;
};

namespace detail {
// Depth-first over sub-balls, digits in increasing order; returns the center of
// the first sub-ball that no hole meets.
inline std::optional<Rat> first_free_point(const Ball& b, std::span<const Ball> holes) {
  std::vector<Ball> relevant;
  for (const Ball& h : holes) {
    switch (compare(h, b)) {
      case BallRelation::Disjoint: break;
      case BallRelation::Equal:
      case BallRelation::SecondInsideFirst: return std::nullopt;
      case BallRelation::FirstInsideSecond: relevant.push_back(h); break;
    }
  }
  if (relevant.empty()) return b.center();
  for (BigInt d = 0; d < b.place().prime(); ++d) {
    if (auto x = first_free_point(b.child(d), relevant)) return x;
  }
  return std::nullopt;
}
}  // namespace detail

/// A point of the smallest chain ball avoiding every `avoid` ball: the center
/// of the first hole-free sub-ball in increasing digit order.
inline Rat generic_point(const BallChain& chain, std::span<const Ball> avoid) {
  const SwissCheese sc = sc_normalize(
      SwissCheese(chain.smallest(), std::vector<Ball>(avoid.begin(), avoid.end())));
  if (sc.is_empty_form() || sc_is_empty(sc)) {
    throw Error(ErrorCode::Unsatisfiable, "avoid-balls cover " + chain.smallest().str());
  }
  auto x = detail::first_free_point(sc.outer(), sc.holes());
  if (!x) throw Error(ErrorCode::Unsatisfiable, "no free sub-ball");
  return *x;
}

}  // namespace mvf
