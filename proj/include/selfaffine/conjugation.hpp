#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "selfaffine/exact_linalg.hpp"

namespace selfaffine {

/// b_inv * M * b == m_tilde with b = [M^{n-1}v, ..., Mv, v] and
/// b_inv * v == (0, ..., 0, 1). b has a rational inverse in general.
struct CompanionConjugation {
  IntMatrix b;
  RatMatrix b_inv;
  IntMatrix m_tilde;
  IntVector v_tilde;
};

/// b * M * b_inv == [[m1, c], [0, m2]] with b unimodular and
/// b * v == (x, 0, ..., 0).
struct BlockDecomposition {
  IntMatrix b;
  IntMatrix b_inv;
  std::size_t r = 0;
  IntMatrix m1;
  IntMatrix c;
  IntMatrix m2;
  IntVector x;
};

struct ReducedInstance {
  IntMatrix m1;
  IntVector v_prime;
  std::int64_t q = 0;
};

enum class Direction { Forward, Inverse };

/// Companion matrix with -a_1, ..., -a_n down the first column and ones on
/// the superdiagonal, for p = x^n + a_1 x^{n-1} + ... + a_n.
IntMatrix companion_matrix(const IntPolynomial& p);

CompanionConjugation companion_conjugate(const IntMatrix& m,
                                         const IntVector& v);

BlockDecomposition block_decompose(const IntMatrix& m, const IntVector& v);

/// [[m1, c], [0, m2]].
IntMatrix block_matrix(const BlockDecomposition& d);

ReducedInstance reduce_dimension(const BlockDecomposition& d, std::int64_t q);

/// Forward applies b^T to every frequency, Inverse applies (b^T)^{-1}.
std::vector<RatVector> map_spectrum(const IntMatrix& b,
                                    const std::vector<RatVector>& lambda_set,
                                    Direction direction);

/// Coordinates in which (M, v) splits off a companion block.
///
/// With P = basis, P^{-1} M P is block upper triangular, its leading r x r
/// block is `reduced_matrix` (an integer companion matrix) and
/// P^{-1} v = (reduced_digit, 0). Frequencies transform contravariantly:
/// frame coordinates are P^T xi. Because the mask only sees the first r frame
/// coordinates and the leading block of (P^{-1} M P)^* acts on them alone, the
/// whole Fourier analysis of mu_{M,D} happens in the reduced r-dimensional
/// problem (reduced_matrix, {0..q-1} reduced_digit).
struct Frame {
  RatMatrix basis;
  RatMatrix basis_inv;
  std::size_t reduced_dim = 0;
  IntMatrix reduced_matrix;
  IntVector reduced_digit;
  bool companion_branch = true;

  /// P^{-T} (head, 0, ..., 0).
  RatVector to_original(const RatVector& head) const;
  /// First reduced_dim coordinates of P^T xi.
  RatVector to_frame_head(const RatVector& xi) const;

  /// Trivial frame: P = I, reduced problem is (m, v) itself.
  static Frame identity(const IntMatrix& m, const IntVector& v);
};

Frame companion_frame(const CompanionConjugation& cc);

/// Frame of the block decomposition d composed with the companion
/// conjugation cc of its reduced instance (M1, x).
Frame lift_frame(const BlockDecomposition& d, const CompanionConjugation& cc);

/// Companion branch when the Krylov rank is n, otherwise block decomposition
/// followed by the companion conjugation of (M1, x).
Frame spectral_frame(const IntMatrix& m, const IntVector& v);

/// Recomputes P^{-1} M P and P^{-1} v and checks every Frame invariant.
bool verify_frame(const IntMatrix& m, const IntVector& v, const Frame& frame);

}  // namespace selfaffine
