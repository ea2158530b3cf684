#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "selfaffine/conjugation.hpp"
#include "selfaffine/exact_linalg.hpp"

namespace selfaffine {

/// (m, digits, duals) with |digits| = |duals| = q, expressed in the reduced
/// coordinates of `frame`. `unitary` is only ever assigned from
/// verify_hadamard.
struct HadamardTriple {
  IntMatrix m;
  std::vector<IntVector> digits;
  std::vector<IntVector> duals;
  Frame frame;
  bool unitary = false;
};

/// q x q phases theta(k, l) = <m^{-1} d_k, s_l> mod 1; rows are digits.
using PhaseMatrix = RatMatrix;

struct CandidateSpectrum {
  std::size_t depth = 0;
  std::vector<RatVector> frequencies;  // original coordinates
  Frame frame;
};

/// Phi_L with integer coefficients, by dividing x^L - 1 by Phi_d for every
/// proper divisor d of L.
IntPolynomial cyclotomic(std::size_t order);

/// Exact test of sum_k exp(2 pi i phases[k]) == 0 for rational phases: the
/// exponent polynomial reduced mod x^L - 1 must vanish modulo Phi_L, where L
/// is the common denominator.
bool roots_of_unity_sum_vanishes(const std::vector<Rational>& phases);

/// Dual digits u = (-a_n / q, 0, ..., 0) in the companion coordinates of the
/// frame. Throws NotDivisible unless q | a_n.
HadamardTriple construct_dual_digits(const Frame& frame, std::int64_t q);
HadamardTriple construct_dual_digits(const CompanionConjugation& conj,
                                     std::int64_t q);

PhaseMatrix phase_matrix(const IntMatrix& m, const std::vector<IntVector>& digits,
                         const std::vector<IntVector>& duals);

/// H^* H == q I exactly for H = [exp(2 pi i <m^{-1} d, s>)].
bool verify_hadamard(const IntMatrix& m, const std::vector<IntVector>& digits,
                     const std::vector<IntVector>& duals);
bool verify_hadamard(const HadamardTriple& triple);

/// All sums sum_{j<depth} (m^T)^j s_j, s_j in duals, lifted to the original
/// coordinates of the triple's frame. Throws DuplicateFrequency on collisions.
CandidateSpectrum candidate_spectrum(const HadamardTriple& triple,
                                     std::size_t depth);

}  // namespace selfaffine
