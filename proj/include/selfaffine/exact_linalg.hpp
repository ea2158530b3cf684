#pragma once

// Exact integer and rational linear algebra. Entries are GMP integers and
// rationals; nothing in this header touches floating point.

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "selfaffine/errors.hpp"

namespace selfaffine {

using Integer = mpz_class;
using Rational = mpq_class;

/// n/d in lowest terms. mpq_class(n, d) leaves the fraction as given.
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix over an exact ring. Rectangular shapes are allowed
/// (Krylov blocks are n x r); most operations require a square matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != m.rows_)
        throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Copy of the block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "dot product length mismatch");
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
bool is_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
/// Throws Error(NotUnimodular) naming `what` if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m, const char* what = "matrix");
IntVector to_integer(const RatVector& v, const char* what = "vector");
bool is_zero(const IntVector& v);

/// Fractional part in [0, 1).
Rational frac(const Rational& x);

/// Monic-or-not integer polynomial, coefficients in ascending degree.
struct IntPolynomial {
  std::vector<Integer> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const Integer& leading() const { return coeffs.back(); }
  Integer operator()(const Integer& x) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

std::string to_string(const IntPolynomial& p);
std::ostream& operator<<(std::ostream& os, const IntPolynomial& p);

/// Horner evaluation p(M); the Cayley-Hamilton residual when p = char_poly(M).
IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m);

Integer det(const IntMatrix& m);

/// Monic characteristic polynomial det(xI - M).
IntPolynomial char_poly(const IntMatrix& m);

/// Rank of a rectangular integer matrix by fraction-free elimination.
std::size_t rank(const IntMatrix& m);

struct KrylovSequence {
  std::vector<IntVector> vectors;  // v, Mv, ..., M^{n-1} v
  std::size_t rank = 0;
};

KrylovSequence krylov(const IntMatrix& m, const IntVector& v);

/// b * a == echelon with b unimodular.
struct HermiteResult {
  IntMatrix transform;
  IntMatrix echelon;
};

HermiteResult hnf_unimodular(const IntMatrix& a);

RatMatrix inverse(const IntMatrix& m);
RatMatrix inverse(const RatMatrix& m);
IntMatrix inverse_unimodular(const IntMatrix& m);

/// True iff every root of p lies strictly inside the unit circle.
bool schur_stable(const IntPolynomial& p);

/// True iff every eigenvalue of m has modulus > 1; decided exactly.
bool is_expanding(const IntMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

}  // namespace selfaffine
