#pragma once

// Fixtures, random generators and independent oracles shared by the tests.
// The oracles deliberately use different algorithms from the library
// (plain rational Gaussian elimination, floating-point root finding).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "selfaffine/exact_linalg.hpp"

namespace fixtures {

using selfaffine::IntMatrix;
using selfaffine::IntVector;

// Full Krylov rank, char poly x^3 + 36.
inline IntMatrix cubic36() { return {{2, 6, 4}, {-1, 2, 2}, {-1, -1, -4}}; }
inline IntVector cubic36_digit() { return {0, 0, 1}; }

// Mv = 4v: Krylov rank 1 with blocks [4] and diag(-2, -2).
inline IntMatrix eigen4() { return {{1, -3, 3}, {3, -5, 3}, {6, -6, 4}}; }
inline IntVector eigen4_digit() { return {1, 1, 2}; }

inline IntMatrix companion36() { return {{0, 1, 0}, {0, 0, 1}, {-36, 0, 0}}; }

inline IntMatrix scalar(long b) { return {{b}}; }

}  // namespace fixtures

namespace oracle {

using selfaffine::Integer;
using selfaffine::IntMatrix;
using selfaffine::Rational;
using selfaffine::RatMatrix;

/// Row-echelon by rational Gaussian elimination with first-nonzero pivots.
/// Returns (rank, determinant for square input).
inline std::pair<std::size_t, Rational> gauss(const IntMatrix& a) {
  RatMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  Rational d = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) {
      d = 0;
      continue;
    }
    if (p != row) {
      m.swap_rows(p, row);
      d = -d;
    }
    d *= m(row, col);
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      const Rational f = m(i, col) / m(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    ++row;
  }
  if (row < m.rows()) d = 0;
  return {row, d};
}

/// Roots of a monic polynomial (ascending coefficients) by Durand-Kerner.
inline std::vector<std::complex<double>> roots(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
  double scale = 1.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  for (auto& x : z) x *= scale;
  for (int it = 0; it < 5000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> num = c[n];
      for (std::size_t k = n; k-- > 0;) num = num * z[i] + c[k];
      std::complex<double> den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= num / den;
    }
  }
  return z;
}

}  // namespace oracle

namespace gen {

using selfaffine::Integer;
using selfaffine::IntMatrix;
using selfaffine::IntVector;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntVector v(n);
  do {
    for (auto& x : v) x = d(rng);
  } while (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; }));
  return v;
}

/// Product of random elementary row operations; determinant +-1.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n,
                                   int steps = 6) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 1) {
    if (rng() % 2) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) b = (b + 1) % n;
    const long k = coef(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += k * u(b, j);
    if (rng() % 3 == 0) u.swap_rows(a, b);
  }
  return u;
}

}  // namespace gen
