#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "selfaffine/conjugation.hpp"
#include "selfaffine/exact_linalg.hpp"
#include "selfaffine/fourier.hpp"
#include "selfaffine/hadamard.hpp"
#include "selfaffine/instance.hpp"

namespace selfaffine {

enum class Verdict {
  Spectral,
  NotSpectralInfiniteOrthogonals,
  NotSpectralFinitelyMany,
  InfiniteOrthogonalsSpectralityUnknown,
  Unknown,
};

/// Snake-case name used in reports, e.g. "not_spectral_infinite_orthogonals".
std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view name);

/// Names recorded in Conditions::theorems.
namespace rule {
inline constexpr std::string_view kCompanion = "companion_conjugation";
inline constexpr std::string_view kBlockReduction = "block_dimension_reduction";
inline constexpr std::string_view kHadamard = "hadamard_triple_sufficiency";
inline constexpr std::string_view kWitness = "witness_infinite_orthogonality";
inline constexpr std::string_view kPurePowerSpectral =
    "pure_power_spectrality_necessity";
inline constexpr std::string_view kPurePowerOrthogonal =
    "pure_power_orthogonality_necessity";
}  // namespace rule

struct Conditions {
  std::size_t r = 0;
  Integer det_m1;
  Integer gcd_q_detm1;
  bool q_divides_detm1 = false;
  std::optional<Integer> pure_power_c;
  bool companion_branch = true;
  std::vector<std::string> theorems;
};

struct HadamardCertificate {
  HadamardTriple triple;
  PhaseMatrix phases;
};

struct WitnessCertificate {
  Witness witness;
};

struct ConditionOnly {};

using Certificate =
    std::variant<ConditionOnly, HadamardCertificate, WitnessCertificate>;

struct Classification {
  Verdict verdict = Verdict::Unknown;
  Conditions conditions;
  Certificate certificate;
  Frame frame;
  IntMatrix m1;
};

/// c when p = x^r + c, i.e. every coefficient strictly between the constant
/// and the leading one vanishes. Degree-one monic polynomials always qualify.
std::optional<Integer> pure_power_form(const IntPolynomial& p);

Classification classify(const ProblemInstance& inst);

/// Independent re-check of a certificate against the instance: the frame is
/// recomputed from scratch and the triple or witness is verified exactly.
bool verify_certificate(const ProblemInstance& inst, const Certificate& cert);

}  // namespace selfaffine
