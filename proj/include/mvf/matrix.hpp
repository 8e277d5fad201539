#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "mvf/error.hpp"
#include "mvf/rational.hpp"

namespace mvf {

using RatVector = std::vector<Rat>;

/// Dense square-or-rectangular matrix over Q, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatVector column(std::size_t j) const {
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_columns(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// column j += factor * column k
  void add_column_multiple(std::size_t j, std::size_t k, const Rat& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += factor * (*this)(i, k);
  }
  void scale_column(std::size_t j, const Rat& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) *= factor;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend RatVector operator*(const Matrix& x, std::span<const Rat> v) {
    if (x.cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    RatVector r(x.rows_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) r[i] += x(i, k) * v[k];
    return r;
  }

  friend Matrix operator*(const Rat& s, Matrix m) {
    for (Rat& e : m.a_) e *= s;
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

/// Determinant by fraction-based Gaussian elimination.
inline Rat det(Matrix m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "det of non-square matrix");
  const std::size_t n = m.rows();
  Rat d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const Rat f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

/// Gauss-Jordan inverse; throws Singular.
inline Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const Rat pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      const Rat f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace mvf
