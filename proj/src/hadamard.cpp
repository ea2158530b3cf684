#include "selfaffine/hadamard.hpp"

#include <map>
#include <numeric>
#include <set>

namespace selfaffine {

namespace {

using Coeffs = std::vector<Integer>;

void trim(Coeffs& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Quotient of a by the monic polynomial b; the division must be exact.
Coeffs divide_exact(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {Integer(0)};
  Coeffs quot(a.size() - db, Integer(0));
  for (std::size_t k = a.size(); k-- > db;) {
    const Integer c = a[k];
    if (c == 0) continue;
    quot[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  for (const auto& x : a)
    if (x != 0)
      throw Error(ErrorKind::InternalRankError,
                  "cyclotomic sieve: inexact polynomial division");
  trim(quot);
  return quot;
}

// Remainder of a modulo the monic polynomial b.
Coeffs remainder_monic(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    const Integer c = a[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  if (a.size() > db) a.resize(db == 0 ? 1 : db);
  trim(a);
  return a;
}

Coeffs cyclotomic_coeffs(std::size_t order, std::map<std::size_t, Coeffs>& memo) {
  if (auto it = memo.find(order); it != memo.end()) return it->second;
  Coeffs p(order + 1, Integer(0));
  p[0] = -1;
  p[order] = 1;
  for (std::size_t d = 1; d < order; ++d)
    if (order % d == 0) p = divide_exact(p, cyclotomic_coeffs(d, memo));
  memo.emplace(order, p);
  return p;
}

Integer lcm_of_denominators(const std::vector<Rational>& xs) {
  Integer l = 1;
  for (const auto& x : xs)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace

IntPolynomial cyclotomic(std::size_t order) {
  if (order == 0)
    throw Error(ErrorKind::DimensionMismatch, "cyclotomic order must be >= 1");
  std::map<std::size_t, Coeffs> memo;
  return IntPolynomial{cyclotomic_coeffs(order, memo)};
}

bool roots_of_unity_sum_vanishes(const std::vector<Rational>& phases) {
  if (phases.empty()) return true;
  const Integer common = lcm_of_denominators(phases);
  if (!common.fits_ulong_p() || common > 1'000'000)
    throw Error(ErrorKind::TooLarge,
                "phase denominator " + common.get_str() + " is too large");
  const std::size_t order = common.get_ui();
  Coeffs counts(order, Integer(0));
  for (const auto& t : phases) {
    const Rational scaled = frac(t) * Rational(common);
    counts[scaled.get_num().get_ui()] += 1;
  }
  std::map<std::size_t, Coeffs> memo;
  const Coeffs rem = remainder_monic(counts, cyclotomic_coeffs(order, memo));
  for (const auto& x : rem)
    if (x != 0) return false;
  return true;
}

HadamardTriple construct_dual_digits(const Frame& frame, std::int64_t q) {
  const std::size_t r = frame.reduced_dim;
  const IntMatrix& k = frame.reduced_matrix;
  if (r == 0 || k.rows() != r)
    throw Error(ErrorKind::DimensionMismatch, "frame has no reduced block");
  IntVector last(r, Integer(0));
  last[r - 1] = 1;
  if (frame.reduced_digit != last ||
      k != companion_matrix(char_poly(k)))
    throw Error(ErrorKind::DimensionMismatch,
                "dual digits need a frame in companion coordinates");
  // Companion first column holds -a_1, ..., -a_n.
  const Integer a_n = -k(r - 1, 0);
  const Integer qz(q);
  if (q < 2 || mpz_divisible_p(a_n.get_mpz_t(), qz.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotDivisible,
                "q = " + std::to_string(q) + " does not divide |det M1| = " +
                    Integer(abs(a_n)).get_str());
  IntVector u(r, Integer(0));
  u[0] = -a_n / qz;

  HadamardTriple t;
  t.m = k;
  t.frame = frame;
  for (std::int64_t j = 0; j < q; ++j) {
    IntVector d(r, Integer(0));
    d[r - 1] = j;
    t.digits.push_back(std::move(d));
    IntVector s = u;
    for (auto& x : s) x *= j;
    t.duals.push_back(std::move(s));
  }
  t.unitary = verify_hadamard(t);
  return t;
}

HadamardTriple construct_dual_digits(const CompanionConjugation& conj,
                                     std::int64_t q) {
  return construct_dual_digits(companion_frame(conj), q);
}

PhaseMatrix phase_matrix(const IntMatrix& m, const std::vector<IntVector>& digits,
                         const std::vector<IntVector>& duals) {
  const RatMatrix m_inv = inverse(m);
  PhaseMatrix out(digits.size(), duals.size());
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const RatVector pulled = m_inv * to_rational(digits[k]);
    for (std::size_t l = 0; l < duals.size(); ++l)
      out(k, l) = frac(dot(pulled, to_rational(duals[l])));
  }
  return out;
}

bool verify_hadamard(const IntMatrix& m, const std::vector<IntVector>& digits,
                     const std::vector<IntVector>& duals) {
  if (digits.size() != duals.size() || digits.empty())
    throw Error(ErrorKind::DimensionMismatch,
                "Hadamard triple needs |digits| == |duals| >= 1");
  const PhaseMatrix theta = phase_matrix(m, digits, duals);
  const std::size_t q = digits.size();
  std::vector<Rational> column_diff(q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = a + 1; b < q; ++b) {
      for (std::size_t k = 0; k < q; ++k)
        column_diff[k] = theta(k, b) - theta(k, a);
      if (!roots_of_unity_sum_vanishes(column_diff)) return false;
    }
  return true;
}

bool verify_hadamard(const HadamardTriple& triple) {
  return verify_hadamard(triple.m, triple.digits, triple.duals);
}

CandidateSpectrum candidate_spectrum(const HadamardTriple& triple,
                                     std::size_t depth) {
  if (depth == 0)
    throw Error(ErrorKind::DimensionMismatch, "candidate depth must be >= 1");
  if (triple.m != triple.frame.reduced_matrix)
    throw Error(ErrorKind::DimensionMismatch,
                "triple matrix does not match its frame");
  const std::size_t r = triple.m.rows();
  const IntMatrix mt = transpose(triple.m);

  std::vector<IntVector> sums{IntVector(r, Integer(0))};
  std::vector<IntVector> level = triple.duals;  // (M^T)^j S
  for (std::size_t j = 0; j < depth; ++j) {
    std::vector<IntVector> next;
    next.reserve(sums.size() * level.size());
    for (const auto& s : level)
      for (const auto& base : sums) {
        IntVector x = base;
        for (std::size_t i = 0; i < r; ++i) x[i] += s[i];
        next.push_back(std::move(x));
      }
    sums = std::move(next);
    if (j + 1 < depth)
      for (auto& s : level) s = mt * s;
  }

  std::set<IntVector> seen;
  for (const auto& s : sums)
    if (!seen.insert(s).second)
      throw Error(ErrorKind::DuplicateFrequency,
                  "candidate spectrum has a repeated frequency " + to_string(s));

  CandidateSpectrum out;
  out.depth = depth;
  out.frame = triple.frame;
  out.frequencies.reserve(sums.size());
  for (const auto& s : sums)
    out.frequencies.push_back(triple.frame.to_original(to_rational(s)));
  return out;
}

}  // namespace selfaffine
