// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carnot/errors.hpp"

namespace carnot {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (integers, q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Dense row-major matrix over a ring-like scalar. `T{}` must be the zero.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionMismatch("column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product with explicit result scalar, so mixed Rational/Polynomial products work.
template <class R, class A, class B>
Matrix<R> multiply(const Matrix<A>& a, const Matrix<B>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Matrix<R> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (is_zero(b(k, j))) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  return out;
}

template <class R, class A, class B>
std::vector<R> multiply(const Matrix<A>& a, const std::vector<B>& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: dimensions differ");
  std::vector<R> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k)) || is_zero(x[k])) continue;
      out[i] += a(i, k) * x[k];
    }
  return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return multiply<T>(a, b);
}

using RatMatrix = Matrix<Rational>;

RatMatrix scaled(RatMatrix m, const Rational& s);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& m);
Rational determinant(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
/// Columns form a basis of the right null space.
RatMatrix nullspace(const RatMatrix& m);
/// Some exact solution of `a x = b`, or nothing when inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

bool is_symmetric(const RatMatrix& m);
bool is_skew_symmetric(const RatMatrix& m);
/// Exact test: every leading principal minor is positive.
bool is_positive_definite(const RatMatrix& m);

/// Indices of a maximal independent subset, chosen greedily in input order.
std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors, std::size_t dim);
std::size_t span_rank(const std::vector<RatVector>& vectors, std::size_t dim);

Eigen::MatrixXd to_eigen(const RatMatrix& m);

}  // namespace carnot
