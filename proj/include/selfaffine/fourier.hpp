#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "selfaffine/conjugation.hpp"
#include "selfaffine/exact_linalg.hpp"
#include "selfaffine/instance.hpp"

namespace selfaffine {

using Frequency = RatVector;

inline constexpr double kDefaultTailEps = 1e-9;

/// <v, xi>, the only quantity the mask of a collinear digit set sees.
Rational digit_phase(const ProblemInstance& inst, const Frequency& xi);

/// (1/q) sum_{k<q} exp(2 pi i k t), with t reduced mod 1 exactly first.
std::complex<double> mask_at_phase(std::int64_t q, const Rational& t);
/// t mod 1 == j/q for some j in 1..q-1.
bool phase_is_mask_zero(std::int64_t q, const Rational& t);

std::complex<double> mask(const ProblemInstance& inst, const Frequency& xi);
bool mask_is_zero_exact(const ProblemInstance& inst, const Frequency& xi);

/// Geometric decay certificate for M^{-1}: with c = ||M^{-p}||_inf < 1,
///   sum_{j>=0} ||M^{-j} w||_inf <= head_sum / (1 - c) * ||w||_inf
/// where head_sum = sum_{b<p} ||M^{-b}||_inf.
struct ContractionBound {
  std::size_t power = 0;
  Rational norm_at_power;
  Rational head_sum;

  /// head_sum / (1 - norm_at_power).
  double series_factor() const;
};

/// Throws NonConvergent when no power p <= 10 n contracts in the inf-norm.
ContractionBound contraction_bound(const IntMatrix& m);

struct MuHatValue {
  std::complex<double> value;
  double error_bound = 0.0;
  std::size_t factors = 0;
  bool exact_zero = false;
};

/// Evaluates mu_hat(xi) = prod_{j>=1} m_D((M^*)^{-j} xi) with a certified
/// truncation bound. Caches the pullbacks M^{-j} v, so an instance is cheap
/// to reuse across many frequencies but must not be shared between threads.
class FourierTransform {
 public:
  explicit FourierTransform(const ProblemInstance& inst);

  MuHatValue operator()(const Frequency& xi,
                        double tail_eps = kDefaultTailEps) const;

  std::int64_t q() const noexcept { return q_; }

 private:
  const RatVector& pullback(std::size_t j) const;

  std::int64_t q_;
  RatMatrix m_inv_;
  ContractionBound bound_;
  mutable std::vector<RatVector> pullbacks_;  // [j] = M^{-j} v
};

MuHatValue mu_hat(const ProblemInstance& inst, const Frequency& xi,
                  double tail_eps = kDefaultTailEps);

/// alpha is a mask zero and, in the reduced coordinates of `frame`,
/// (K^T)^ell alpha_head is integral, K the frame's reduced matrix. With the
/// identity frame this is literally M^{*ell} alpha in Z^n.
struct Witness {
  Frequency alpha;
  std::size_t ell = 1;
  Frame frame;
};

/// Throws GcdOne when gcd(q, |det M1|) == 1.
Witness construct_witness(const ProblemInstance& inst);
bool verify_witness(const ProblemInstance& inst, const Witness& w);

/// {0} together with (K^T)^{k ell} alpha_head for k = 1..count, mapped back to
/// original coordinates; pairwise orthogonal for mu_{M,D}.
std::vector<Frequency> witness_family(const ProblemInstance& inst,
                                      const Witness& w, std::size_t count);

struct OrthogonalityCertificate {
  Frequency lambda1;
  Frequency lambda2;
  std::size_t j = 0;
};

/// 3 n + ceil(log2(max |num| * den)) over the entries of delta.
std::size_t default_j_max(const ProblemInstance& inst, const Frequency& delta);

/// Searches j = 1..j_max for an exact zero factor m_D((M^*)^{-j} delta).
class OrthogonalityCertifier {
 public:
  OrthogonalityCertifier(const ProblemInstance& inst, std::size_t j_max);

  std::optional<std::size_t> first_zero_factor(const Frequency& delta) const;
  std::size_t j_max() const noexcept { return pullbacks_.size(); }

 private:
  std::int64_t q_;
  std::vector<RatVector> pullbacks_;  // [j-1] = M^{-j} v
};

/// Empty means not certified, which is weaker than "not orthogonal".
std::optional<OrthogonalityCertificate> certify_orthogonal(
    const ProblemInstance& inst, const Frequency& lambda1,
    const Frequency& lambda2, std::optional<std::size_t> j_max = std::nullopt);

struct PairwiseCertification {
  std::size_t pairs = 0;
  std::size_t certified = 0;
  std::size_t max_j = 0;
  std::vector<OrthogonalityCertificate> certificates;

  bool all_certified() const noexcept { return pairs == certified; }
};

PairwiseCertification certify_pairwise(const ProblemInstance& inst,
                                       const std::vector<Frequency>& freqs,
                                       std::size_t j_max);

}  // namespace selfaffine
