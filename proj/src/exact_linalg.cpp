#include "selfaffine/exact_linalg.hpp"

#include <sstream>

namespace selfaffine {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotFullRank: return "NotFullRank";
    case ErrorKind::FullRank: return "FullRank";
    case ErrorKind::InternalRankError: return "InternalRankError";
    case ErrorKind::NotExpanding: return "NotExpanding";
    case ErrorKind::BadQ: return "BadQ";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::GcdOne: return "GcdOne";
    case ErrorKind::DuplicateFrequency: return "DuplicateFrequency";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m, const char* what) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1)
        throw Error(ErrorKind::NotUnimodular,
                    std::string(what) + " has a non-integer entry");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

IntVector to_integer(const RatVector& v, const char* what) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1)
      throw Error(ErrorKind::NotUnimodular,
                  std::string(what) + " has a non-integer entry");
    out.push_back(x.get_num());
  }
  return out;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(x - Rational(fl));
}

Integer IntPolynomial::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string to_string(const IntPolynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    const Integer& c = p.coeffs[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) {
  return os << to_string(p);
}

IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorKind::DimensionMismatch, "evaluate needs a square matrix");
  const std::size_t n = m.rows();
  IntMatrix acc(n, n);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

Integer det(const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorKind::DimensionMismatch, "det needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Faddeev-LeVerrier. Every division by k is exact over the integers because
// the coefficients of det(xI - M) are integers.
IntPolynomial char_poly(const IntMatrix& m) {
  if (!m.is_square())
    throw Error(ErrorKind::DimensionMismatch, "char_poly needs a square matrix");
  const std::size_t n = m.rows();
  IntPolynomial p;
  p.coeffs.assign(n + 1, Integer(0));
  p.coeffs[n] = 1;
  IntMatrix aux = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix prod = m * aux;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    Integer coeff = -trace;
    if (mpz_divisible_ui_p(coeff.get_mpz_t(), k) == 0)
      throw Error(ErrorKind::InternalRankError,
                  "char_poly: inexact Faddeev-LeVerrier division");
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), k);
    p.coeffs[n - k] = coeff;
    aux = std::move(prod);
    for (std::size_t i = 0; i < n; ++i) aux(i, i) += coeff;
  }
  const Integer expected = (n % 2 == 0 ? 1 : -1) * det(m);
  if (p.coeffs[0] != expected)
    throw Error(ErrorKind::InternalRankError,
                "char_poly: constant term disagrees with (-1)^n det");
  return p;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

KrylovSequence krylov(const IntMatrix& m, const IntVector& v) {
  if (!m.is_square() || m.rows() != v.size())
    throw Error(ErrorKind::DimensionMismatch, "krylov: dimension mismatch");
  if (is_zero(v))
    throw Error(ErrorKind::ZeroVector, "digit vector v must be nonzero");
  KrylovSequence out;
  out.vectors.reserve(v.size());
  out.vectors.push_back(v);
  for (std::size_t k = 1; k < v.size(); ++k)
    out.vectors.push_back(m * out.vectors.back());
  out.rank = rank(IntMatrix::from_columns(out.vectors));
  return out;
}

namespace {

// Row operation row[dst] -= factor * row[src] applied to both matrices.
void subtract_row(IntMatrix& a, IntMatrix& b, std::size_t dst, std::size_t src,
                  const Integer& factor) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) -= factor * a(src, j);
  for (std::size_t j = 0; j < b.cols(); ++j) b(dst, j) -= factor * b(src, j);
}

}  // namespace

// Column by column: bring the smallest nonzero entry (lowest row on ties) into
// the pivot row and reduce the rows below by Euclidean division until the
// column is cleared. This is the extended-gcd reduction written as repeated
// division steps.
HermiteResult hnf_unimodular(const IntMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t r = a.cols();
  if (r > n)
    throw Error(ErrorKind::RankDeficient,
                "hnf_unimodular: more columns than rows");
  HermiteResult out{IntMatrix::identity(n), a};
  IntMatrix& b = out.transform;
  IntMatrix& h = out.echelon;
  for (std::size_t c = 0; c < r; ++c) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t i = c; i < n; ++i) {
        if (h(i, c) == 0) continue;
        if (best == n || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == n)
        throw Error(ErrorKind::RankDeficient,
                    "hnf_unimodular: columns are linearly dependent");
      h.swap_rows(c, best);
      b.swap_rows(c, best);
      bool cleared = true;
      for (std::size_t i = c + 1; i < n; ++i) {
        if (h(i, c) == 0) continue;
        Integer quot;
        mpz_fdiv_q(quot.get_mpz_t(), h(i, c).get_mpz_t(), h(c, c).get_mpz_t());
        subtract_row(h, b, i, c, quot);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
  }
  return out;
}

namespace {

RatMatrix gauss_jordan_inverse(RatMatrix a) {
  if (!a.is_square())
    throw Error(ErrorKind::DimensionMismatch, "inverse needs a square matrix");
  const std::size_t n = a.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorKind::Singular, "matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace

RatMatrix inverse(const IntMatrix& m) {
  return gauss_jordan_inverse(to_rational(m));
}

RatMatrix inverse(const RatMatrix& m) { return gauss_jordan_inverse(m); }

IntMatrix inverse_unimodular(const IntMatrix& m) {
  const Integer d = det(m);
  if (d == 0) throw Error(ErrorKind::Singular, "matrix is singular");
  if (abs(d) != 1)
    throw Error(ErrorKind::NotUnimodular,
                "matrix is not unimodular (det " + d.get_str() + ")");
  return to_integer(inverse(m), "inverse of a unimodular matrix");
}

// Schur-Cohn recursion. With p of degree k and |p_0| < |p_k|, Rouche on |z| = 1
// shows q(z) = p_k p(z) - p_0 z^k p(1/z) has as many roots in the open unit
// disk as p; q(0) = 0, so p is stable iff q(z) / z (degree k - 1) is. If
// |p_0| >= |p_k| the product of the roots already has modulus >= 1.
bool schur_stable(const IntPolynomial& poly) {
  std::vector<Integer> p = poly.coeffs;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.empty())
    throw Error(ErrorKind::DimensionMismatch, "schur_stable: zero polynomial");
  while (p.size() > 1) {
    const std::size_t k = p.size() - 1;
    const Integer lo = p[0];
    const Integer hi = p[k];
    if (abs(lo) >= abs(hi)) return false;
    std::vector<Integer> next(k);
    Integer content = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      next[i - 1] = hi * p[i] - lo * p[k - i];
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
              next[i - 1].get_mpz_t());
    }
    if (content > 1)
      for (auto& x : next)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    p = std::move(next);
  }
  return true;
}

bool is_expanding(const IntMatrix& m) {
  const IntPolynomial f = char_poly(m);
  if (f.coeffs[0] == 0) return false;
  // Roots of the reversal are the reciprocals of the eigenvalues.
  IntPolynomial reversed{
      std::vector<Integer>(f.coeffs.rbegin(), f.coeffs.rend())};
  return schur_stable(reversed);
}

namespace {

template <typename T>
std::string matrix_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

template <typename T>
std::string vector_string(const std::vector<T>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }
std::string to_string(const IntVector& v) { return vector_string(v); }
std::string to_string(const RatVector& v) { return vector_string(v); }

}  // namespace selfaffine
