#include "selfaffine/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace selfaffine {

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const std::vector<std::vector<bool>>& adj) : adj_(adj) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> all(adj_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    expand(all);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Greedy sequential colouring; order/bound come back sorted by colour so
  // bound[i] caps the clique size reachable from order[0..i].
  void colour_sort(const std::vector<std::size_t>& cand,
                   std::vector<std::size_t>& order,
                   std::vector<std::size_t>& bound) const {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cand) {
      std::size_t k = 0;
      for (; k < classes.size(); ++k) {
        bool clash = false;
        for (std::size_t u : classes[k])
          if (adj_[u][v]) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    order.clear();
    bound.clear();
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (std::size_t v : classes[k]) {
        order.push_back(v);
        bound.push_back(k + 1);
      }
  }

  void expand(const std::vector<std::size_t>& cand) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour_sort(cand, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t k = 0; k < i; ++k)
        if (adj_[v][order[k]]) next.push_back(order[k]);
      if (next.empty()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

using LatticePoint = std::vector<std::int64_t>;

// delta and -delta are orthogonal together (the mask is Hermitian), so the
// cache is keyed on a sign-normalized representative.
LatticePoint normalize_sign(LatticePoint p) {
  for (auto x : p) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : p) y = -y;
    break;
  }
  return p;
}

Frequency to_frequency(const LatticePoint& p, std::int64_t den) {
  Frequency f;
  f.reserve(p.size());
  for (auto x : p) f.emplace_back(Integer(x), Integer(den));
  for (auto& x : f) x.canonicalize();
  return f;
}

double inf_norm(const std::vector<double>& x) {
  double best = 0.0;
  for (double y : x) best = std::max(best, std::abs(y));
  return best;
}

}  // namespace

std::vector<std::size_t> maximum_clique(
    const std::vector<std::vector<bool>>& adjacency) {
  return CliqueSearch(adjacency).run();
}

CliqueReport max_orthogonal_clique(const ProblemInstance& inst,
                                   std::int64_t lattice_denominator,
                                   std::int64_t box_radius,
                                   std::optional<std::size_t> j_max,
                                   std::size_t cap) {
  if (lattice_denominator < 1 || box_radius < 0)
    throw Error(ErrorKind::DimensionMismatch,
                "lattice denominator must be >= 1 and box radius >= 0");
  const std::size_t n = inst.dim();
  const std::int64_t extent = box_radius * lattice_denominator;
  const double side = static_cast<double>(2 * extent + 1);
  const double count = std::pow(side, static_cast<double>(n));
  if (count > static_cast<double>(cap))
    throw Error(ErrorKind::TooLarge,
                "clique search over " + std::to_string(std::llround(count)) +
                    " candidates exceeds the cap of " + std::to_string(cap));

  CliqueReport report;
  report.lattice_denominator = lattice_denominator;
  report.box_radius = box_radius;
  report.candidates = static_cast<std::size_t>(std::llround(count));
  {
    Frequency span(n, Rational(Integer(2 * box_radius)));
    report.j_max = j_max.value_or(default_j_max(inst, span) + 1);
  }
  const OrthogonalityCertifier certifier(inst, report.j_max);

  // Lexicographic enumeration of the box.
  std::vector<LatticePoint> points;
  LatticePoint p(n, -extent);
  for (;;) {
    points.push_back(p);
    std::size_t i = n;
    while (i-- > 0) {
      if (p[i] < extent) {
        ++p[i];
        break;
      }
      p[i] = -extent;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }

  std::map<LatticePoint, bool> cache;
  auto orthogonal = [&](const LatticePoint& a, const LatticePoint& b) {
    LatticePoint delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = a[i] - b[i];
    delta = normalize_sign(std::move(delta));
    if (auto it = cache.find(delta); it != cache.end()) return it->second;
    const bool ok = certifier
                        .first_zero_factor(to_frequency(delta, lattice_denominator))
                        .has_value();
    cache.emplace(std::move(delta), ok);
    return ok;
  };

  const LatticePoint origin(n, 0);
  std::vector<LatticePoint> neighbours;
  for (const auto& q : points)
    if (q != origin && orthogonal(q, origin)) neighbours.push_back(q);

  std::vector<std::vector<bool>> adj(neighbours.size(),
                                     std::vector<bool>(neighbours.size(), false));
  for (std::size_t a = 0; a < neighbours.size(); ++a)
    for (std::size_t b = a + 1; b < neighbours.size(); ++b)
      adj[a][b] = adj[b][a] = orthogonal(neighbours[a], neighbours[b]);

  report.witness_set.push_back(to_frequency(origin, lattice_denominator));
  for (std::size_t idx : maximum_clique(adj))
    report.witness_set.push_back(to_frequency(neighbours[idx], lattice_denominator));
  report.max_clique_size = report.witness_set.size();

  const PairwiseCertification check =
      certify_pairwise(inst, report.witness_set, report.j_max);
  report.certified = check.all_certified();
  report.certificates = check.certificates;
  return report;
}

CompletenessReport completeness_defect(const ProblemInstance& inst,
                                       const CandidateSpectrum& spectrum,
                                       const std::vector<Frequency>& probes,
                                       double tail_eps) {
  const FourierTransform transform(inst);
  CompletenessReport report;
  report.depth = spectrum.depth;
  report.tail_eps = tail_eps;
  report.probes = probes;
  report.defects.reserve(probes.size());
  Frequency shifted(inst.dim());
  for (const auto& xi : probes) {
    double q_sum = 0.0;
    for (const auto& lambda : spectrum.frequencies) {
      for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted[i] = xi[i] - lambda[i];
      q_sum += std::norm(transform(shifted, tail_eps).value);
    }
    report.defects.push_back(1.0 - q_sum);
  }
  return report;
}

double attractor_radius(const ProblemInstance& inst) {
  // T consists of the points sum_{j>=1} M^{-j} d_j, so
  // ||x||_inf <= max ||d||_inf * sum_{j>=1} ||M^{-j}||_inf.
  const ContractionBound bound = contraction_bound(inst.matrix());
  const RatMatrix m_inv = inverse(inst.matrix());
  Rational digit_norm = 0;
  for (const auto& x : inst.digit_vector())
    if (Rational(abs(x)) > digit_norm) digit_norm = abs(x);
  digit_norm *= Integer(inst.q() - 1);
  // sum_{j>=1} ||M^{-j}|| <= ||M^{-1}|| * sum_{j>=0} ||M^{-j}||.
  Rational first = 0;
  for (std::size_t i = 0; i < m_inv.rows(); ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < m_inv.cols(); ++j) row += abs(m_inv(i, j));
    if (row > first) first = row;
  }
  return digit_norm.get_d() * first.get_d() * bound.series_factor();
}

AttractorSample chaos_game(const ProblemInstance& inst, std::size_t iterations,
                           std::uint64_t seed, std::size_t thin) {
  if (thin == 0) thin = 1;
  const std::size_t n = inst.dim();
  const RatMatrix exact_inv = inverse(inst.matrix());
  std::vector<double> m_inv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m_inv[i * n + j] = exact_inv(i, j).get_d();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = inst.digit_vector()[i].get_d();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> digit(0, inst.q() - 1);
  std::vector<double> x(n, 0.0);
  std::vector<double> y(n);
  auto step = [&] {
    const double k = static_cast<double>(digit(rng));
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += m_inv[i * n + j] * (x[j] + k * v[j]);
      y[i] = acc;
    }
    std::swap(x, y);
  };

  AttractorSample sample;
  sample.iterations = iterations;
  sample.seed = seed;
  sample.thin = thin;
  sample.bounding_radius = attractor_radius(inst);
  sample.points.reserve(iterations);
  for (std::size_t i = 0; i < kBurnIn; ++i) step();
  for (std::size_t i = 0; i < iterations; ++i) {
    for (std::size_t t = 0; t < thin; ++t) step();
    sample.points.push_back(x);
  }
  // Starting at 0, a point of T, every iterate stays in T.
  const double slack = 1e-9 * (1.0 + sample.bounding_radius);
  for (const auto& pt : sample.points)
    if (inf_norm(pt) > sample.bounding_radius + slack)
      throw Error(ErrorKind::InternalRankError,
                  "chaos game left the attractor bounding ball");
  return sample;
}

std::complex<double> empirical_transform(const AttractorSample& sample,
                                         const Frequency& xi) {
  std::vector<double> f(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) f[i] = xi[i].get_d();
  std::complex<double> acc{0.0, 0.0};
  for (const auto& pt : sample.points) {
    double phase = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) phase += pt[i] * f[i];
    const double angle = 2.0 * std::numbers::pi * phase;
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sample.points.empty()
             ? acc
             : acc / static_cast<double>(sample.points.size());
}

}  // namespace selfaffine
