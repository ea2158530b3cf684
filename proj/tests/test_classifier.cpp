#include <numeric>

#include "doctest.h"
#include "selfaffine/classifier.hpp"
#include "test_support.hpp"

using namespace selfaffine;

namespace {

Verdict verdict_of(const IntMatrix& m, const IntVector& v, std::int64_t q) {
  return classify(ProblemInstance(m, v, q)).verdict;
}

bool infinite_orthogonal(Verdict v) {
  return v == Verdict::Spectral || v == Verdict::NotSpectralInfiniteOrthogonals ||
         v == Verdict::InfiniteOrthogonalsSpectralityUnknown;
}

IntMatrix random_expanding(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    IntMatrix m = gen::random_matrix(rng, n, n, 9);
    if (is_expanding(m)) return m;
  }
}

}  // namespace

TEST_CASE("instance validation") {
  auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Malformed;
  };
  CHECK(kind_of([] { ProblemInstance(IntMatrix::identity(2), IntVector{1, 0}, 2); }) ==
        ErrorKind::NotExpanding);
  CHECK(kind_of([] { ProblemInstance(IntMatrix{{2}}, IntVector{0}, 2); }) ==
        ErrorKind::ZeroVector);
  CHECK(kind_of([] { ProblemInstance(IntMatrix{{2}}, IntVector{1}, 1); }) ==
        ErrorKind::BadQ);
  CHECK(kind_of([] { ProblemInstance(IntMatrix{{2}}, IntVector{1, 1}, 2); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { ProblemInstance(IntMatrix(2, 3), IntVector{1, 1}, 2); }) ==
        ErrorKind::DimensionMismatch);
  try {
    ProblemInstance(IntMatrix::identity(3), IntVector{1, 0, 0}, 2);
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "matrix is not expanding");
  }
}

TEST_CASE("verdict names round trip") {
  for (Verdict v : {Verdict::Spectral, Verdict::NotSpectralInfiniteOrthogonals,
                    Verdict::NotSpectralFinitelyMany,
                    Verdict::InfiniteOrthogonalsSpectralityUnknown, Verdict::Unknown})
    CHECK(parse_verdict(to_string(v)) == v);
  CHECK(to_string(Verdict::NotSpectralInfiniteOrthogonals) ==
        "not_spectral_infinite_orthogonals");
  CHECK_FALSE(parse_verdict("spectralish").has_value());
}

TEST_CASE("pure power form") {
  CHECK(pure_power_form(IntPolynomial{{36, 0, 0, 1}}) == Integer(36));
  CHECK(pure_power_form(IntPolynomial{{-4, 1}}) == Integer(-4));
  CHECK_FALSE(pure_power_form(IntPolynomial{{4, -4, 1}}).has_value());
}

TEST_CASE("fixture verdicts") {
  const IntMatrix c = fixtures::cubic36();
  const IntVector cv = fixtures::cubic36_digit();
  CHECK(verdict_of(c, cv, 6) == Verdict::Spectral);
  CHECK(verdict_of(c, cv, 5) == Verdict::NotSpectralFinitelyMany);
  CHECK(verdict_of(c, cv, 8) == Verdict::NotSpectralInfiniteOrthogonals);

  const IntMatrix e = fixtures::eigen4();
  const IntVector ev = fixtures::eigen4_digit();
  CHECK(verdict_of(e, ev, 6) == Verdict::NotSpectralInfiniteOrthogonals);
  CHECK(verdict_of(e, ev, 2) == Verdict::Spectral);
  CHECK(verdict_of(e, ev, 4) == Verdict::Spectral);
  CHECK(verdict_of(e, ev, 3) == Verdict::NotSpectralFinitelyMany);

  CHECK(verdict_of(IntMatrix{{3}}, IntVector{1}, 2) == Verdict::NotSpectralFinitelyMany);
}

TEST_CASE("conditions and certificates") {
  const ProblemInstance inst(fixtures::eigen4(), fixtures::eigen4_digit(), 6);
  const Classification c = classify(inst);
  CHECK(c.conditions.r == 1);
  CHECK_FALSE(c.conditions.companion_branch);
  CHECK(c.conditions.det_m1 == 4);
  CHECK(c.conditions.gcd_q_detm1 == 2);
  CHECK_FALSE(c.conditions.q_divides_detm1);
  CHECK(c.conditions.pure_power_c == Integer(-4));
  CHECK(c.m1 == IntMatrix{{4}});
  REQUIRE(std::holds_alternative<WitnessCertificate>(c.certificate));
  CHECK(verify_certificate(inst, c.certificate));
  CHECK(c.conditions.theorems ==
        std::vector<std::string>{std::string(rule::kBlockReduction),
                                 std::string(rule::kWitness),
                                 std::string(rule::kPurePowerSpectral)});

  const ProblemInstance spectral(fixtures::cubic36(), fixtures::cubic36_digit(), 12);
  const Classification s = classify(spectral);
  REQUIRE(std::holds_alternative<HadamardCertificate>(s.certificate));
  CHECK(verify_certificate(spectral, s.certificate));
  CHECK(s.conditions.theorems.front() == rule::kCompanion);

  const ProblemInstance finite(IntMatrix{{3}}, IntVector{1}, 2);
  const Classification f = classify(finite);
  CHECK(std::holds_alternative<ConditionOnly>(f.certificate));
  CHECK(f.conditions.theorems.back() == rule::kPurePowerOrthogonal);
}

TEST_CASE("tampered certificates fail verification") {
  const ProblemInstance spectral(fixtures::cubic36(), fixtures::cubic36_digit(), 6);
  Classification s = classify(spectral);
  auto& h = std::get<HadamardCertificate>(s.certificate);
  HadamardCertificate bad_duals = h;
  bad_duals.triple.duals[1] = IntVector{-5, 0, 0};
  CHECK_FALSE(verify_certificate(spectral, bad_duals));
  HadamardCertificate bad_digits = h;
  bad_digits.triple.digits[2] = IntVector{0, 0, 3};
  CHECK_FALSE(verify_certificate(spectral, bad_digits));
  HadamardCertificate bad_frame = h;
  bad_frame.triple.frame.basis(0, 0) += 1;
  CHECK_FALSE(verify_certificate(spectral, bad_frame));

  const ProblemInstance inst(fixtures::eigen4(), fixtures::eigen4_digit(), 6);
  Classification c = classify(inst);
  WitnessCertificate w = std::get<WitnessCertificate>(c.certificate);
  w.witness.alpha[0] += ratio(1, 3);
  CHECK_FALSE(verify_certificate(inst, w));
}

TEST_CASE("general characteristic polynomials") {
  // x^2 - 4x + 8 (roots 2 +- 2i), det 8: not a pure power.
  const IntMatrix m{{0, -8}, {1, 4}};
  const IntVector v{1, 0};
  CHECK(verdict_of(m, v, 4) == Verdict::Spectral);
  CHECK(verdict_of(m, v, 8) == Verdict::Spectral);
  CHECK(verdict_of(m, v, 6) == Verdict::InfiniteOrthogonalsSpectralityUnknown);
  CHECK(verdict_of(m, v, 3) == Verdict::Unknown);
  const ProblemInstance inst(m, v, 6);
  const Classification c = classify(inst);
  REQUIRE(std::holds_alternative<WitnessCertificate>(c.certificate));
  CHECK(verify_certificate(inst, c.certificate));
}

TEST_CASE("one-dimensional table") {
  for (long b = 2; b <= 12; ++b)
    for (std::int64_t q = 2; q <= 12; ++q) {
      for (long sign : {1L, -1L}) {
        const Verdict v = verdict_of(IntMatrix{{sign * b}}, IntVector{1}, q);
        CHECK((v == Verdict::Spectral) == (b % q == 0));
        CHECK(infinite_orthogonal(v) == (std::gcd<long, long>(b, q) > 1));
        CHECK(v != Verdict::Unknown);
      }
    }
}

TEST_CASE("eigenvector case reduces to the eigenvalue") {
  // M v = l v for integer l; verdict depends only on (l, q).
  std::mt19937_64 rng(111);
  for (int trial = 0; trial < 30; ++trial) {
    const long l = 2 + trial % 7;
    IntMatrix t(3, 3);
    t(0, 0) = l;
    t(0, 1) = static_cast<long>(rng() % 5) - 2;
    t(0, 2) = static_cast<long>(rng() % 5) - 2;
    t(1, 1) = 3;
    t(2, 2) = -3;
    t(1, 2) = static_cast<long>(rng() % 3);
    const IntMatrix u = gen::random_unimodular(rng, 3);
    const IntMatrix m = inverse_unimodular(u) * t * u;
    const IntVector v = inverse_unimodular(u) * IntVector{1, 0, 0};
    for (std::int64_t q = 2; q <= 8; ++q) {
      const Classification c = classify(ProblemInstance(m, v, q));
      CHECK(c.conditions.r == 1);
      CHECK(c.verdict == verdict_of(IntMatrix{{l}}, IntVector{1}, q));
    }
  }
}

TEST_CASE("property: conjugation invariance and certificate soundness") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix m = random_expanding(rng, n);
    const IntVector v = gen::random_vector(rng, n, 4);
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 7);
    const ProblemInstance inst(m, v, q);
    const Classification c = classify(inst);
    CHECK(verify_certificate(inst, c.certificate));
    for (int k = 0; k < 3; ++k) {
      const IntMatrix u = gen::random_unimodular(rng, n);
      const IntMatrix mu = u * m * inverse_unimodular(u);
      CHECK(char_poly(mu) == char_poly(m));
      CHECK(evaluate(char_poly(mu), mu) == IntMatrix(n, n));
      const ProblemInstance moved(mu, u * v, q);
      const Classification cm = classify(moved);
      CHECK(cm.verdict == c.verdict);
      CHECK(cm.conditions.r == c.conditions.r);
      CHECK(abs(cm.conditions.det_m1) == abs(c.conditions.det_m1));
      CHECK(verify_certificate(moved, cm.certificate));
    }
  }
}
