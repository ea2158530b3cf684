#include "selfaffine/classifier.hpp"

#include <array>
#include <utility>

namespace selfaffine {

namespace {

constexpr std::array<std::pair<Verdict, std::string_view>, 5> kVerdictNames{{
    {Verdict::Spectral, "spectral"},
    {Verdict::NotSpectralInfiniteOrthogonals,
     "not_spectral_infinite_orthogonals"},
    {Verdict::NotSpectralFinitelyMany, "not_spectral_finitely_many"},
    {Verdict::InfiniteOrthogonalsSpectralityUnknown,
     "infinite_orthogonals_spectrality_unknown"},
    {Verdict::Unknown, "unknown"},
}};

}  // namespace

std::string_view to_string(Verdict v) {
  for (const auto& [verdict, name] : kVerdictNames)
    if (verdict == v) return name;
  return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view name) {
  for (const auto& [verdict, n] : kVerdictNames)
    if (n == name) return verdict;
  return std::nullopt;
}

std::optional<Integer> pure_power_form(const IntPolynomial& p) {
  const std::size_t r = p.degree();
  if (r == 0 || p.leading() != 1) return std::nullopt;
  for (std::size_t k = 1; k < r; ++k)
    if (p.coeffs[k] != 0) return std::nullopt;
  return p.coeffs[0];
}

Classification classify(const ProblemInstance& inst) {
  const IntMatrix& m = inst.matrix();
  const IntVector& v = inst.digit_vector();
  Classification out;
  Conditions& cond = out.conditions;

  cond.r = krylov(m, v).rank;
  cond.companion_branch = cond.r == inst.dim();
  if (cond.companion_branch) {
    out.m1 = m;
    out.frame = companion_frame(companion_conjugate(m, v));
    cond.theorems.emplace_back(rule::kCompanion);
  } else {
    const BlockDecomposition d = block_decompose(m, v);
    const ReducedInstance reduced = reduce_dimension(d, inst.q());
    out.m1 = reduced.m1;
    out.frame = lift_frame(d, companion_conjugate(reduced.m1, reduced.v_prime));
    cond.theorems.emplace_back(rule::kBlockReduction);
  }

  cond.det_m1 = det(out.m1);
  const Integer q(inst.q());
  mpz_gcd(cond.gcd_q_detm1.get_mpz_t(), q.get_mpz_t(), cond.det_m1.get_mpz_t());
  cond.q_divides_detm1 = cond.gcd_q_detm1 == q;
  cond.pure_power_c = pure_power_form(char_poly(out.m1));
  const bool shared_factor = cond.gcd_q_detm1 > 1;

  if (cond.q_divides_detm1) {
    out.verdict = Verdict::Spectral;
    HadamardTriple triple = construct_dual_digits(out.frame, inst.q());
    if (!triple.unitary)
      throw Error(ErrorKind::InternalRankError,
                  "constructed dual digits are not a Hadamard triple");
    PhaseMatrix phases = phase_matrix(triple.m, triple.digits, triple.duals);
    out.certificate = HadamardCertificate{std::move(triple), std::move(phases)};
    cond.theorems.emplace_back(rule::kHadamard);
    return out;
  }

  if (shared_factor) {
    out.certificate = WitnessCertificate{construct_witness(inst)};
    cond.theorems.emplace_back(rule::kWitness);
  }
  if (cond.pure_power_c) {
    if (shared_factor) {
      out.verdict = Verdict::NotSpectralInfiniteOrthogonals;
      cond.theorems.emplace_back(rule::kPurePowerSpectral);
    } else {
      out.verdict = Verdict::NotSpectralFinitelyMany;
      cond.theorems.emplace_back(rule::kPurePowerOrthogonal);
    }
  } else {
    out.verdict = shared_factor ? Verdict::InfiniteOrthogonalsSpectralityUnknown
                                : Verdict::Unknown;
  }
  return out;
}

namespace {

struct CertificateChecker {
  const ProblemInstance& inst;

  bool operator()(const ConditionOnly&) const { return true; }

  bool operator()(const HadamardCertificate& c) const {
    const HadamardTriple& t = c.triple;
    if (!verify_frame(inst.matrix(), inst.digit_vector(), t.frame)) return false;
    if (t.m != t.frame.reduced_matrix) return false;
    if (t.digits.size() != static_cast<std::size_t>(inst.q())) return false;
    for (std::size_t k = 0; k < t.digits.size(); ++k) {
      IntVector expected = t.frame.reduced_digit;
      for (auto& x : expected) x *= static_cast<long>(k);
      if (t.digits[k] != expected) return false;
    }
    return verify_hadamard(t);
  }

  bool operator()(const WitnessCertificate& c) const {
    return verify_witness(inst, c.witness);
  }
};

}  // namespace

bool verify_certificate(const ProblemInstance& inst, const Certificate& cert) {
  return std::visit(CertificateChecker{inst}, cert);
}

}  // namespace selfaffine
