#include "selfaffine/fourier.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

namespace selfaffine {

namespace {

constexpr std::size_t kMaxFactors = 100000;

Rational inf_norm(const RatVector& v) {
  Rational best = 0;
  for (const auto& x : v)
    if (abs(x) > best) best = abs(x);
  return best;
}

Rational one_norm(const RatVector& v) {
  Rational sum = 0;
  for (const auto& x : v) sum += abs(x);
  return sum;
}

Rational inf_norm(const RatMatrix& m) {
  Rational best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += abs(m(i, j));
    if (row > best) best = row;
  }
  return best;
}

std::size_t ceil_log2(const Integer& x) {
  if (x <= 1) return 0;
  Integer y = x - 1;
  return mpz_sizeinbase(y.get_mpz_t(), 2);
}

}  // namespace

Rational digit_phase(const ProblemInstance& inst, const Frequency& xi) {
  return dot(to_rational(inst.digit_vector()), xi);
}

bool phase_is_mask_zero(std::int64_t q, const Rational& t) {
  const Rational r = frac(t);
  if (r == 0) return false;
  const Rational scaled = r * Rational(Integer(q));
  return scaled.get_den() == 1;
}

std::complex<double> mask_at_phase(std::int64_t q, const Rational& t) {
  if (phase_is_mask_zero(q, t)) return {0.0, 0.0};
  const Rational r = frac(t);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t k = 0; k < q; ++k) {
    const double angle =
        2.0 * std::numbers::pi * frac(r * Rational(Integer(k))).get_d();
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc / static_cast<double>(q);
}

std::complex<double> mask(const ProblemInstance& inst, const Frequency& xi) {
  return mask_at_phase(inst.q(), digit_phase(inst, xi));
}

bool mask_is_zero_exact(const ProblemInstance& inst, const Frequency& xi) {
  return phase_is_mask_zero(inst.q(), digit_phase(inst, xi));
}

double ContractionBound::series_factor() const {
  const Rational gap = Rational(1) - norm_at_power;
  return Rational(head_sum / gap).get_d();
}

ContractionBound contraction_bound(const IntMatrix& m) {
  const RatMatrix m_inv = inverse(m);
  const std::size_t limit = 10 * m.rows();
  RatMatrix power = RatMatrix::identity(m.rows());
  Rational head_sum = 0;
  for (std::size_t p = 1; p <= limit; ++p) {
    head_sum += inf_norm(power);
    power = power * m_inv;
    const Rational norm = inf_norm(power);
    if (norm < 1) return ContractionBound{p, norm, head_sum};
  }
  throw Error(ErrorKind::NonConvergent,
              "no power of M^{-1} up to " + std::to_string(limit) +
                  " contracts in the inf-norm");
}

FourierTransform::FourierTransform(const ProblemInstance& inst)
    : q_(inst.q()),
      m_inv_(inverse(inst.matrix())),
      bound_(contraction_bound(inst.matrix())) {
  pullbacks_.push_back(to_rational(inst.digit_vector()));
}

const RatVector& FourierTransform::pullback(std::size_t j) const {
  while (pullbacks_.size() <= j) pullbacks_.push_back(m_inv_ * pullbacks_.back());
  return pullbacks_[j];
}

// |m_D(eta) - 1| <= pi (q - 1) |<v, eta>| and |prod (1 + x_j) - 1| <=
// exp(sum |x_j|) - 1, so after J factors the remaining product moves the
// value by at most expm1(pi (q - 1) ||xi||_1 sum_{j>J} ||M^{-j} v||_inf).
MuHatValue FourierTransform::operator()(const Frequency& xi,
                                        double tail_eps) const {
  if (xi.size() != pullbacks_.front().size())
    throw Error(ErrorKind::DimensionMismatch, "frequency has wrong dimension");
  const double xi_norm = one_norm(xi).get_d();
  const double scale = std::numbers::pi * static_cast<double>(q_ - 1) *
                       xi_norm * bound_.series_factor();
  MuHatValue out;
  out.value = {1.0, 0.0};
  for (std::size_t j = 1;; ++j) {
    const RatVector& w = pullback(j);
    const double tail = std::expm1(scale * inf_norm(w).get_d());
    if (tail < tail_eps) {
      out.error_bound =
          tail + 4.0 * DBL_EPSILON * static_cast<double>(out.factors + 1);
      return out;
    }
    if (j > kMaxFactors)
      throw Error(ErrorKind::NonConvergent, "mu_hat product did not converge");
    const Rational t = dot(w, xi);
    if (phase_is_mask_zero(q_, t)) {
      out.value = {0.0, 0.0};
      out.error_bound = 0.0;
      out.factors = j;
      out.exact_zero = true;
      return out;
    }
    out.value *= mask_at_phase(q_, t);
    out.factors = j;
  }
}

MuHatValue mu_hat(const ProblemInstance& inst, const Frequency& xi,
                  double tail_eps) {
  return FourierTransform(inst)(xi, tail_eps);
}

Witness construct_witness(const ProblemInstance& inst) {
  Frame frame = spectral_frame(inst.matrix(), inst.digit_vector());
  const Integer d1 = det(frame.reduced_matrix);
  Integer s;
  const Integer q(inst.q());
  mpz_gcd(s.get_mpz_t(), q.get_mpz_t(), d1.get_mpz_t());
  if (s == 1)
    throw Error(ErrorKind::GcdOne,
                "gcd(q, det M1) = 1; no witness of this form exists");
  RatVector head(frame.reduced_dim, Rational(0));
  head.back() = Rational(1) / Rational(s);
  Witness w{frame.to_original(head), 1, std::move(frame)};
  if (!verify_witness(inst, w))
    throw Error(ErrorKind::InternalRankError,
                "constructed witness failed re-verification");
  return w;
}

bool verify_witness(const ProblemInstance& inst, const Witness& w) {
  if (w.ell == 0 || w.alpha.size() != inst.dim()) return false;
  if (!verify_frame(inst.matrix(), inst.digit_vector(), w.frame)) return false;
  if (!mask_is_zero_exact(inst, w.alpha)) return false;
  RatVector head = w.frame.to_frame_head(w.alpha);
  const RatMatrix kt = to_rational(transpose(w.frame.reduced_matrix));
  for (std::size_t i = 0; i < w.ell; ++i) head = kt * head;
  return is_integral(head);
}

std::vector<Frequency> witness_family(const ProblemInstance& inst,
                                      const Witness& w, std::size_t count) {
  if (!verify_witness(inst, w))
    throw Error(ErrorKind::InternalRankError, "witness does not verify");
  const RatMatrix kt = to_rational(transpose(w.frame.reduced_matrix));
  RatVector head = w.frame.to_frame_head(w.alpha);
  std::vector<Frequency> out;
  out.reserve(count + 1);
  out.push_back(Frequency(inst.dim(), Rational(0)));
  for (std::size_t k = 1; k <= count; ++k) {
    for (std::size_t i = 0; i < w.ell; ++i) head = kt * head;
    out.push_back(w.frame.to_original(head));
  }
  return out;
}

std::size_t default_j_max(const ProblemInstance& inst, const Frequency& delta) {
  Integer magnitude = 0;
  for (const auto& x : delta) {
    Integer size = abs(x.get_num()) * x.get_den();
    if (size > magnitude) magnitude = size;
  }
  return 3 * inst.dim() + ceil_log2(magnitude);
}

OrthogonalityCertifier::OrthogonalityCertifier(const ProblemInstance& inst,
                                               std::size_t j_max)
    : q_(inst.q()) {
  const RatMatrix m_inv = inverse(inst.matrix());
  RatVector w = to_rational(inst.digit_vector());
  pullbacks_.reserve(j_max);
  for (std::size_t j = 1; j <= j_max; ++j) {
    w = m_inv * w;
    pullbacks_.push_back(w);
  }
}

std::optional<std::size_t> OrthogonalityCertifier::first_zero_factor(
    const Frequency& delta) const {
  for (std::size_t j = 0; j < pullbacks_.size(); ++j)
    if (phase_is_mask_zero(q_, dot(pullbacks_[j], delta))) return j + 1;
  return std::nullopt;
}

std::optional<OrthogonalityCertificate> certify_orthogonal(
    const ProblemInstance& inst, const Frequency& lambda1,
    const Frequency& lambda2, std::optional<std::size_t> j_max) {
  if (lambda1.size() != inst.dim() || lambda2.size() != inst.dim())
    throw Error(ErrorKind::DimensionMismatch, "frequency has wrong dimension");
  Frequency delta(inst.dim());
  for (std::size_t i = 0; i < delta.size(); ++i)
    delta[i] = lambda1[i] - lambda2[i];
  const std::size_t limit = j_max.value_or(default_j_max(inst, delta));
  const auto j = OrthogonalityCertifier(inst, limit).first_zero_factor(delta);
  if (!j) return std::nullopt;
  return OrthogonalityCertificate{lambda1, lambda2, *j};
}

PairwiseCertification certify_pairwise(const ProblemInstance& inst,
                                       const std::vector<Frequency>& freqs,
                                       std::size_t j_max) {
  const OrthogonalityCertifier certifier(inst, j_max);
  PairwiseCertification out;
  Frequency delta(inst.dim());
  for (std::size_t a = 0; a < freqs.size(); ++a)
    for (std::size_t b = a + 1; b < freqs.size(); ++b) {
      ++out.pairs;
      for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = freqs[a][i] - freqs[b][i];
      if (auto j = certifier.first_zero_factor(delta)) {
        ++out.certified;
        out.max_j = std::max(out.max_j, *j);
        out.certificates.push_back({freqs[a], freqs[b], *j});
      }
    }
  return out;
}

}  // namespace selfaffine
