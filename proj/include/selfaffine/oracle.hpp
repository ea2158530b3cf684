#pragma once

// Brute-force and sampling evidence. Nothing here proves a theorem: clique
// sizes are lattice-restricted lower-level evidence and completeness defects
// are numerical diagnostics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "selfaffine/fourier.hpp"
#include "selfaffine/hadamard.hpp"
#include "selfaffine/instance.hpp"

namespace selfaffine {

inline constexpr std::size_t kDefaultCliqueCap = 5000;
inline constexpr std::size_t kBurnIn = 100;

/// Indices of a maximum clique of the undirected graph `adjacency` (symmetric,
/// false on the diagonal). Branch and bound with greedy-colouring bounds;
/// ties resolve towards lower indices.
std::vector<std::size_t> maximum_clique(
    const std::vector<std::vector<bool>>& adjacency);

struct CliqueReport {
  std::int64_t lattice_denominator = 1;
  std::int64_t box_radius = 0;
  std::size_t j_max = 0;
  std::size_t candidates = 0;
  std::size_t max_clique_size = 0;
  std::vector<Frequency> witness_set;  // contains 0
  std::vector<OrthogonalityCertificate> certificates;
  bool certified = false;
};

/// Exact maximum clique, containing 0, of the certified-orthogonality graph
/// on (1/L) Z^n intersected with [-N, N]^n. Throws TooLarge above `cap`
/// candidates.
CliqueReport max_orthogonal_clique(const ProblemInstance& inst,
                                   std::int64_t lattice_denominator,
                                   std::int64_t box_radius,
                                   std::optional<std::size_t> j_max = std::nullopt,
                                   std::size_t cap = kDefaultCliqueCap);

struct CompletenessReport {
  std::size_t depth = 0;
  double tail_eps = kDefaultTailEps;
  std::vector<Frequency> probes;
  std::vector<double> defects;  // 1 - sum_lambda |mu_hat(xi - lambda)|^2
};

CompletenessReport completeness_defect(const ProblemInstance& inst,
                                       const CandidateSpectrum& spectrum,
                                       const std::vector<Frequency>& probes,
                                       double tail_eps = kDefaultTailEps);

struct AttractorSample {
  std::vector<std::vector<double>> points;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t thin = 1;
  double bounding_radius = 0.0;  // inf-norm ball containing the attractor
};

/// Random iteration x <- M^{-1}(x + d), d uniform on D, from x = 0 after a
/// burn-in of kBurnIn steps. Records every `thin`-th iterate until
/// `iterations` points are collected. Deterministic for a given seed.
AttractorSample chaos_game(const ProblemInstance& inst, std::size_t iterations,
                           std::uint64_t seed, std::size_t thin = 1);

/// Radius of an inf-norm ball around 0 containing the attractor T(M, D).
double attractor_radius(const ProblemInstance& inst);

/// (1/N) sum_k exp(2 pi i <x_k, xi>).
std::complex<double> empirical_transform(const AttractorSample& sample,
                                         const Frequency& xi);

}  // namespace selfaffine
