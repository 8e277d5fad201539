#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "mvf/balls.hpp"
#include "mvf/error.hpp"
#include "mvf/matrix.hpp"
#include "mvf/valued_field.hpp"

namespace mvf {

/// An element of GL_m(Q) / GL_m(Z_(p)), i.e. the Z_(p)-lattice spanned by the
/// columns of any representative.
///
/// The stored representative is the column Hermite form: upper triangular,
/// diagonal entries p^e_i, and each entry right of a diagonal reduced to the
/// truncated digit representative modulo that row's diagonal entry.
class LatticeClass {
 public:
  const Place& place() const { return place_; }
  std::size_t dim() const { return rep_.rows(); }
  const Matrix& rep() const { return rep_; }

  /// Exponents e_i of the diagonal.
  std::vector<std::int64_t> diagonal_exponents() const {
    std::vector<std::int64_t> e(dim());
    for (std::size_t i = 0; i < dim(); ++i) e[i] = val_finite(rep_(i, i), place_);
    return e;
  }

  friend bool operator==(const LatticeClass&, const LatticeClass&) = default;

 private:
  LatticeClass(Place place, Matrix rep) : place_(std::move(place)), rep_(std::move(rep)) {}
  friend LatticeClass canon(const Matrix& a, const Place& P);

  Place place_;
  Matrix rep_;
};

/// The projection GL_m(Q) -> S_m at place P.
inline LatticeClass canon(const Matrix& a, const Place& P) {
  if (!a.is_square() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "lattice basis must be a nonempty square matrix");
  }
  const std::size_t n = a.rows();
  const BigInt& p = P.prime();
  Matrix m = a;

  // Triangularize from the bottom row up with unimodular column operations.
  for (std::size_t r = n; r-- > 0;) {
    std::size_t best = n;
    std::int64_t best_v = 0;
    for (std::size_t c = 0; c <= r; ++c) {
      if (m(r, c).is_zero()) continue;
      const std::int64_t v = val_finite(m(r, c), P);
      if (best == n || v < best_v) {
        best = c;
        best_v = v;
      }
    }
    if (best == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
    m.swap_columns(best, r);
    const Rat power = rpow(p, best_v);
    m.scale_column(r, power / m(r, r));  // divides by a unit of Z_(p)
    for (std::size_t c = 0; c < r; ++c) {
      if (!m(r, c).is_zero()) m.add_column_multiple(c, r, -(m(r, c) / power));
    }
  }

  // Reduce the entries above the diagonal, nearest row first.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const std::int64_t e = val_finite(m(i, i), P);
      const Rat target = truncate_digits(m(i, j), P, e);
      const Rat factor = (m(i, j) - target) / rpow(p, e);
      if (!factor.is_zero()) m.add_column_multiple(j, i, -factor);
      m(i, j) = target;
    }
  }
  return LatticeClass(P, std::move(m));
}

namespace detail {
inline bool all_integral(std::span<const Rat> xs, const Place& P, std::int64_t min_val = 0) {
  return std::all_of(xs.begin(), xs.end(),
                     [&](const Rat& x) { return val(x, P) >= ExtInt(min_val); });
}

inline bool in_gl_o(const Matrix& x, const Place& P) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (val(x(i, j), P) < ExtInt(0)) return false;
  return val(det(x), P) == ExtInt(0);
}
}  // namespace detail

/// A^-1 B in GL_m(Z_(p)), checked directly without canonical forms.
inline bool lat_eq(const Matrix& a, const Matrix& b, const Place& P) {
  if (a.rows() != b.rows() || !b.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "lattice bases of different shapes");
  }
  if (det(b).is_zero()) throw Error(ErrorCode::Singular, "matrix is not invertible");
  return detail::in_gl_o(inverse(a) * b, P);
}

inline bool lattice_member(std::span<const Rat> x, const LatticeClass& s) {
  if (x.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length");
  const RatVector coords = inverse(s.rep()) * x;
  return detail::all_integral(coords, s.place());
}

/// Element (s, u + pΛ(s)) of T_m. The coset is recorded by the coordinates of
/// u in the canonical basis of Λ(s), reduced mod p.
class TorsorElement {
 public:
  TorsorElement(LatticeClass lat, std::vector<BigInt> residue)
      : lat_(std::move(lat)), residue_(std::move(residue)) {
    if (residue_.size() != lat_.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "residue vector length");
    }
    for (BigInt& r : residue_) r = mod_floor(r, lat_.place().prime());
  }

  const LatticeClass& lat() const { return lat_; }
  const std::vector<BigInt>& residue() const { return residue_; }
  const Place& place() const { return lat_.place(); }
  std::size_t dim() const { return lat_.dim(); }

  /// The lift u = rep * residue of the coset.
  RatVector lift() const {
    RatVector r(residue_.begin(), residue_.end());
    return lat_.rep() * r;
  }

  friend bool operator==(const TorsorElement&, const TorsorElement&) = default;

 private:
  LatticeClass lat_;
  std::vector<BigInt> residue_;
};

/// The map GL_m(Q) -> T_m sending B to (s_m(B), b_1 + pΛ) with b_1 the first
/// column of B.
inline TorsorElement t_m(const Matrix& b, const Place& P) {
  LatticeClass s = canon(b, P);
  const RatVector coords = inverse(s.rep()) * b.column(0);
  std::vector<BigInt> res;
  res.reserve(coords.size());
  for (const Rat& c : coords) res.push_back(residue(c, P));
  return TorsorElement(std::move(s), std::move(res));
}

inline bool torsor_eq(const TorsorElement& a, const TorsorElement& b) {
  if (a.place() != b.place()) {
    throw Error(ErrorCode::PlaceMismatch, "torsor elements at different places");
  }
  return a == b;
}

/// s -> (s, pΛ(s)).
inline TorsorElement embed_S_in_T(const LatticeClass& s) {
  return TorsorElement(s, std::vector<BigInt>(s.dim(), BigInt(0)));
}

/// d - u in pΛ(s), with u the lift of t's residue vector.
inline bool coset_member(std::span<const Rat> d, const TorsorElement& t) {
  if (d.size() != t.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length");
  RatVector diff(d.begin(), d.end());
  const RatVector u = t.lift();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= u[i];
  return detail::all_integral(inverse(t.lat().rep()) * diff, t.place(), 1);
}

/// Block-diagonal product Λ = ∏ Λ(s_j) with concatenated residues.
inline TorsorElement combine(std::span<const TorsorElement> parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyInput, "nothing to combine");
  const Place& P = parts.front().place();
  std::size_t n = 0;
  for (const auto& t : parts) {
    if (t.place() != P) throw Error(ErrorCode::PlaceMismatch, "combine across places");
    n += t.dim();
  }
  Matrix m(n, n);
  std::vector<BigInt> res;
  std::size_t off = 0;
  for (const auto& t : parts) {
    for (std::size_t i = 0; i < t.dim(); ++i)
      for (std::size_t j = 0; j < t.dim(); ++j) m(off + i, off + j) = t.lat().rep()(i, j);
    res.insert(res.end(), t.residue().begin(), t.residue().end());
    off += t.dim();
  }
  return TorsorElement(canon(m, P), std::move(res));
}

/// The j-th factor (1-based) of a torsor element whose lattice is block
/// diagonal with the given block sizes.
inline TorsorElement project(const TorsorElement& t, std::size_t block_index,
                             std::span<const std::size_t> block_dims) {
  if (std::accumulate(block_dims.begin(), block_dims.end(), std::size_t{0}) != t.dim() ||
      std::find(block_dims.begin(), block_dims.end(), 0) != block_dims.end()) {
    throw Error(ErrorCode::DimensionMismatch, "block sizes do not partition the dimension");
  }
  if (block_index < 1 || block_index > block_dims.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "block " + std::to_string(block_index));
  }
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < block_dims.size(); ++b) block_of.insert(block_of.end(), block_dims[b], b);
  const Matrix& rep = t.lat().rep();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      if (block_of[i] != block_of[j] && !rep(i, j).is_zero()) {
        throw Error(ErrorCode::NotBlockDiagonal,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is nonzero");
      }

  const std::size_t off = std::accumulate(block_dims.begin(),
                                          block_dims.begin() + static_cast<std::ptrdiff_t>(block_index - 1),
                                          std::size_t{0});
  const std::size_t m = block_dims[block_index - 1];
  Matrix block(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) block(i, j) = rep(off + i, off + j);
  std::vector<BigInt> res(t.residue().begin() + static_cast<std::ptrdiff_t>(off),
                          t.residue().begin() + static_cast<std::ptrdiff_t>(off + m));
  return TorsorElement(canon(block, t.place()), std::move(res));
}

/// Radius for row j of a basis perturbation: C with v(C - A) >= radius_j in
/// row j gives A^-1 C = I + (entries of valuation >= 1).
inline std::vector<std::int64_t> neighborhood_radii(const Matrix& a, const Place& P) {
  const Matrix inv = inverse(a);
  std::vector<std::int64_t> radii(a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) {
    ExtInt lowest = ExtInt::infinity();
    for (std::size_t i = 0; i < a.rows(); ++i) lowest = std::min(lowest, val(inv(i, j), P));
    radii[j] = 1 - lowest.value();
  }
  return radii;
}

/// Entrywise closed balls around rep(s) whose product lies inside s.
inline std::vector<std::vector<Ball>> open_neighborhood(const LatticeClass& s) {
  const auto radii = neighborhood_radii(s.rep(), s.place());
  std::vector<std::vector<Ball>> balls(s.dim());
  for (std::size_t j = 0; j < s.dim(); ++j)
    for (std::size_t k = 0; k < s.dim(); ++k)
      balls[j].emplace_back(s.place(), s.rep()(j, k), radii[j]);
  return balls;
}

}  // namespace mvf
