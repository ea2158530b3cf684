#include "selfaffine/conjugation.hpp"

namespace selfaffine {

IntMatrix companion_matrix(const IntPolynomial& p) {
  const std::size_t n = p.degree();
  if (n == 0 || p.leading() != 1)
    throw Error(ErrorKind::DimensionMismatch,
                "companion_matrix needs a monic polynomial of degree >= 1");
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    // a_{i+1} is the coefficient of x^{n-i-1}.
    out(i, 0) = -p.coeffs[n - i - 1];
    if (i + 1 < n) out(i, i + 1) = 1;
  }
  return out;
}

CompanionConjugation companion_conjugate(const IntMatrix& m,
                                         const IntVector& v) {
  const KrylovSequence k = krylov(m, v);
  const std::size_t n = v.size();
  if (k.rank != n)
    throw Error(ErrorKind::NotFullRank,
                "Krylov rank " + std::to_string(k.rank) + " < n = " +
                    std::to_string(n));
  std::vector<IntVector> columns(k.vectors.rbegin(), k.vectors.rend());
  CompanionConjugation out;
  out.b = IntMatrix::from_columns(columns);
  out.b_inv = inverse(out.b);
  out.m_tilde = companion_matrix(char_poly(m));
  out.v_tilde.assign(n, Integer(0));
  out.v_tilde[n - 1] = 1;

  if (out.b_inv * to_rational(m) * to_rational(out.b) !=
      to_rational(out.m_tilde))
    throw Error(ErrorKind::InternalRankError,
                "companion conjugation does not reproduce the companion matrix");
  if (out.b_inv * to_rational(v) != to_rational(out.v_tilde))
    throw Error(ErrorKind::InternalRankError,
                "companion conjugation does not map v to the last basis vector");
  return out;
}

BlockDecomposition block_decompose(const IntMatrix& m, const IntVector& v) {
  const KrylovSequence k = krylov(m, v);
  const std::size_t n = v.size();
  const std::size_t r = k.rank;
  if (r == n)
    throw Error(ErrorKind::FullRank,
                "Krylov sequence has full rank; use the companion conjugation");
  // A = [M^{r-1} v, ..., M v, v]
  std::vector<IntVector> columns(k.vectors.rend() - static_cast<long>(r),
                                 k.vectors.rend());
  const HermiteResult h = hnf_unimodular(IntMatrix::from_columns(columns));

  BlockDecomposition out;
  out.b = h.transform;
  out.b_inv = inverse_unimodular(out.b);
  out.r = r;
  const IntMatrix t = out.b * m * out.b_inv;
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (t(i, j) != 0)
        throw Error(ErrorKind::InternalRankError,
                    "block decomposition has a nonzero lower-left block");
  out.m1 = t.block(0, 0, r, r);
  out.c = t.block(0, r, r, n - r);
  out.m2 = t.block(r, r, n - r, n - r);

  const IntVector bv = out.b * v;
  for (std::size_t i = r; i < n; ++i)
    if (bv[i] != 0)
      throw Error(ErrorKind::InternalRankError,
                  "block decomposition: B v has a nonzero tail");
  out.x.assign(bv.begin(), bv.begin() + static_cast<long>(r));
  return out;
}

IntMatrix block_matrix(const BlockDecomposition& d) {
  const std::size_t r = d.m1.rows();
  const std::size_t n = r + d.m2.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out(i, j) = d.m1(i, j);
    for (std::size_t j = r; j < n; ++j) out(i, j) = d.c(i, j - r);
  }
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = r; j < n; ++j) out(i, j) = d.m2(i - r, j - r);
  return out;
}

ReducedInstance reduce_dimension(const BlockDecomposition& d, std::int64_t q) {
  ReducedInstance out{d.m1, d.x, q};
  if (krylov(out.m1, out.v_prime).rank != d.r)
    throw Error(ErrorKind::InternalRankError,
                "reduced Krylov sequence is not of full rank");
  return out;
}

std::vector<RatVector> map_spectrum(const IntMatrix& b,
                                    const std::vector<RatVector>& lambda_set,
                                    Direction direction) {
  const RatMatrix bt = transpose(to_rational(b));
  const RatMatrix op = direction == Direction::Forward ? bt : inverse(bt);
  std::vector<RatVector> out;
  out.reserve(lambda_set.size());
  for (const auto& lambda : lambda_set) out.push_back(op * lambda);
  return out;
}

RatVector Frame::to_original(const RatVector& head) const {
  const std::size_t n = basis.rows();
  if (head.size() != reduced_dim)
    throw Error(ErrorKind::DimensionMismatch, "frame head has wrong length");
  RatVector padded(n, Rational(0));
  for (std::size_t i = 0; i < reduced_dim; ++i) padded[i] = head[i];
  // P^{-T} y
  return transpose(basis_inv) * padded;
}

RatVector Frame::to_frame_head(const RatVector& xi) const {
  RatVector full = transpose(basis) * xi;
  full.resize(reduced_dim);
  return full;
}

Frame Frame::identity(const IntMatrix& m, const IntVector& v) {
  Frame f;
  f.basis = RatMatrix::identity(m.rows());
  f.basis_inv = f.basis;
  f.reduced_dim = m.rows();
  f.reduced_matrix = m;
  f.reduced_digit = v;
  f.companion_branch = false;
  return f;
}

Frame spectral_frame(const IntMatrix& m, const IntVector& v) {
  const std::size_t n = v.size();
  if (krylov(m, v).rank == n) return companion_frame(companion_conjugate(m, v));
  const BlockDecomposition d = block_decompose(m, v);
  try {
    return lift_frame(d, companion_conjugate(d.m1, d.x));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFullRank) throw;
    throw Error(ErrorKind::InternalRankError,
                "reduced Krylov sequence is not of full rank");
  }
}

Frame lift_frame(const BlockDecomposition& d, const CompanionConjugation& cc) {
  const std::size_t r = d.r;
  const std::size_t n = d.b.rows();
  if (cc.b.rows() != r)
    throw Error(ErrorKind::DimensionMismatch,
                "lift_frame: reduced conjugation has the wrong size");
  // P = B^{-1} diag(b2, I), P^{-1} = diag(b2^{-1}, I) B.
  RatMatrix lift = RatMatrix::identity(n);
  RatMatrix lift_inv = RatMatrix::identity(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      lift(i, j) = Rational(cc.b(i, j));
      lift_inv(i, j) = cc.b_inv(i, j);
    }
  Frame f;
  f.reduced_dim = r;
  f.basis = to_rational(d.b_inv) * lift;
  f.basis_inv = lift_inv * to_rational(d.b);
  f.reduced_matrix = cc.m_tilde;
  f.reduced_digit = cc.v_tilde;
  f.companion_branch = false;
  return f;
}

Frame companion_frame(const CompanionConjugation& cc) {
  Frame f;
  f.reduced_dim = cc.b.rows();
  f.basis = to_rational(cc.b);
  f.basis_inv = cc.b_inv;
  f.reduced_matrix = cc.m_tilde;
  f.reduced_digit = cc.v_tilde;
  f.companion_branch = true;
  return f;
}

bool verify_frame(const IntMatrix& m, const IntVector& v, const Frame& frame) {
  const std::size_t n = m.rows();
  const std::size_t r = frame.reduced_dim;
  if (!m.is_square() || v.size() != n || frame.basis.rows() != n ||
      !frame.basis.is_square() || frame.basis_inv.rows() != n ||
      !frame.basis_inv.is_square() || r == 0 || r > n ||
      frame.reduced_matrix.rows() != r || !frame.reduced_matrix.is_square() ||
      frame.reduced_digit.size() != r)
    return false;
  if (frame.basis * frame.basis_inv != RatMatrix::identity(n)) return false;
  const RatMatrix t = frame.basis_inv * to_rational(m) * frame.basis;
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (t(i, j) != 0) return false;
  if (t.block(0, 0, r, r) != to_rational(frame.reduced_matrix)) return false;
  const RatVector tv = frame.basis_inv * to_rational(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational expected = i < r ? Rational(frame.reduced_digit[i]) : 0;
    if (tv[i] != expected) return false;
  }
  return true;
}

}  // namespace selfaffine
