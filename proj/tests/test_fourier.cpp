#include <cmath>
#include <numbers>

#include "doctest.h"
#include "selfaffine/fourier.hpp"
#include "selfaffine/hadamard.hpp"
#include "test_support.hpp"

using namespace selfaffine;

namespace {

ProblemInstance line(long b, std::int64_t q, long v = 1) {
  return ProblemInstance(IntMatrix{{b}}, IntVector{v}, q);
}

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

// mu_hat for M = [b], D = {0..q-1}: prod_j of the Dirichlet kernel at
// xi / b^j, evaluated in plain floating point.
double dirichlet_product(double b, int q, double xi, int terms = 60) {
  double prod = 1.0;
  double t = xi;
  for (int j = 0; j < terms; ++j) {
    t /= b;
    const double s = std::sin(std::numbers::pi * t);
    const double ratio = std::abs(s) < 1e-300 ? q : std::sin(std::numbers::pi * q * t) / s;
    prod *= ratio / q;
  }
  return prod;
}

}  // namespace

TEST_CASE("mask at phases") {
  CHECK(std::abs(mask_at_phase(2, Rational(0)) - 1.0) < 1e-15);
  CHECK(std::abs(mask_at_phase(2, ratio(1, 2))) == 0.0);
  CHECK(std::abs(mask_at_phase(6, ratio(1, 6))) == 0.0);
  CHECK(phase_is_mask_zero(6, ratio(1, 6)));
  CHECK(phase_is_mask_zero(6, ratio(-7, 3)));
  CHECK_FALSE(phase_is_mask_zero(6, Rational(2)));
  CHECK_FALSE(phase_is_mask_zero(6, ratio(1, 12)));
  CHECK(std::abs(mask_at_phase(4, ratio(1, 8)) -
                 std::complex<double>(0.25, 0.25 * (1 + std::sqrt(2.0)))) < 1e-12);
}

TEST_CASE("exact mask zeros for a collinear digit set") {
  const ProblemInstance inst(fixtures::companion36(), IntVector{0, 0, 1}, 6);
  CHECK(mask_is_zero_exact(inst, rv({ratio(3, 10), Rational(7), ratio(1, 6)})));
  CHECK(mask_is_zero_exact(inst, rv({ratio(3, 10), Rational(7), ratio(1, 2)})));
  CHECK_FALSE(mask_is_zero_exact(inst, rv({ratio(3, 10), Rational(7), Rational(2)})));
  CHECK(std::abs(mask(inst, rv({Rational(0), Rational(0), Rational(0)})) - 1.0) < 1e-15);
}

TEST_CASE("mu_hat values") {
  const ProblemInstance two = line(2, 2);
  const MuHatValue zero = mu_hat(two, rv({Rational(0)}));
  CHECK(std::abs(zero.value - 1.0) <= zero.error_bound + 1e-15);
  const MuHatValue at_one = mu_hat(two, rv({Rational(1)}));
  CHECK(at_one.exact_zero);
  CHECK(at_one.value == std::complex<double>(0.0, 0.0));
  CHECK(at_one.factors == 1);
  // Lebesgue measure on [0, 1]: |mu_hat(1/2)| = |sin(pi/2) / (pi/2)|.
  const MuHatValue half = mu_hat(two, rv({ratio(1, 2)}));
  CHECK(std::abs(std::abs(half.value) - 2.0 / std::numbers::pi) < 1e-6);
  CHECK(half.error_bound < 1e-8);
}

TEST_CASE("mu_hat against an independent Dirichlet product") {
  for (long b : {3L, 4L, 5L, -3L}) {
    for (int q : {2, 3}) {
      const ProblemInstance inst = line(b, q);
      for (int num = -7; num <= 7; ++num) {
        const Rational xi(num, 5);
        const MuHatValue v = mu_hat(inst, rv({xi}), 1e-12);
        // The product is real up to a unimodular phase; compare moduli.
        const double expected =
            std::abs(dirichlet_product(static_cast<double>(b), q, xi.get_d()));
        CHECK(std::abs(std::abs(v.value) - expected) <= v.error_bound + 1e-9);
      }
    }
  }
}

TEST_CASE("contraction bound") {
  const ContractionBound four = contraction_bound(IntMatrix{{4}});
  CHECK(four.power == 1);
  CHECK(four.norm_at_power == ratio(1, 4));
  CHECK(std::abs(four.series_factor() - 4.0 / 3.0) < 1e-15);
  // A shear needs a few powers before the inf-norm drops below 1.
  const ContractionBound shear = contraction_bound(IntMatrix{{2, 9}, {0, 2}});
  CHECK(shear.power > 1);
  CHECK(shear.norm_at_power < 1);
}

TEST_CASE("witness construction") {
  const ProblemInstance comp(fixtures::companion36(), IntVector{0, 0, 1}, 6);
  const Witness w = construct_witness(comp);
  CHECK(w.alpha == rv({Rational(0), Rational(0), ratio(1, 6)}));
  CHECK(w.ell == 1);
  CHECK(to_rational(transpose(fixtures::companion36())) * w.alpha ==
        rv({Rational(-6), Rational(0), Rational(0)}));
  CHECK(verify_witness(comp, w));

  const ProblemInstance four = line(4, 2);
  const Witness w4 = construct_witness(four);
  CHECK(w4.alpha == rv({ratio(1, 2)}));
  CHECK(verify_witness(four, w4));

  const ProblemInstance eig(fixtures::eigen4(), fixtures::eigen4_digit(), 6);
  const Witness we = construct_witness(eig);
  CHECK(we.ell == 1);
  CHECK(we.frame.reduced_dim == 1);
  CHECK(we.frame.to_frame_head(we.alpha) == rv({ratio(1, 2)}));
  CHECK(verify_witness(eig, we));

  const ProblemInstance cubic(fixtures::cubic36(), fixtures::cubic36_digit(), 6);
  const Witness wc = construct_witness(cubic);
  CHECK(verify_witness(cubic, wc));
  CHECK(mask_is_zero_exact(cubic, wc.alpha));

  try {
    construct_witness(line(3, 2));
    FAIL("expected GcdOne");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GcdOne);
  }
}

TEST_CASE("witness verification rejects bad witnesses") {
  const ProblemInstance comp(fixtures::companion36(), IntVector{0, 0, 1}, 6);
  Witness w = construct_witness(comp);
  Witness integer = w;
  integer.alpha = rv({Rational(1), Rational(2), Rational(3)});
  CHECK_FALSE(verify_witness(comp, integer));
  integer.ell = 4;
  CHECK_FALSE(verify_witness(comp, integer));

  const ProblemInstance three = line(3, 2);
  const Witness fake{rv({ratio(1, 2)}), 1, Frame::identity(IntMatrix{{3}}, IntVector{1})};
  CHECK_FALSE(verify_witness(three, fake));

  Witness zero_ell = w;
  zero_ell.ell = 0;
  CHECK_FALSE(verify_witness(comp, zero_ell));
}

TEST_CASE("witness families are pairwise orthogonal") {
  const std::vector<ProblemInstance> instances{
      ProblemInstance(fixtures::companion36(), IntVector{0, 0, 1}, 6),
      ProblemInstance(fixtures::cubic36(), fixtures::cubic36_digit(), 4),
      ProblemInstance(fixtures::eigen4(), fixtures::eigen4_digit(), 6),
      line(4, 2),
      line(6, 4),
  };
  for (const auto& inst : instances) {
    const Witness w = construct_witness(inst);
    const auto family = witness_family(inst, w, 24);
    CHECK(family.size() == 25);
    const PairwiseCertification c = certify_pairwise(inst, family, 80);
    CHECK(c.all_certified());
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b)
        CHECK(family[a] != family[b]);
  }
}

TEST_CASE("orthogonality certificates") {
  const ProblemInstance four = line(4, 2);
  const auto c = certify_orthogonal(four, rv({Rational(0)}), rv({Rational(2)}));
  REQUIRE(c.has_value());
  CHECK(c->j == 1);
  CHECK_FALSE(certify_orthogonal(four, rv({Rational(0)}), rv({Rational(1)}), 40));
  CHECK(default_j_max(four, rv({ratio(3, 4)})) == 3 + 4);
  CHECK_THROWS_AS(certify_orthogonal(four, rv({Rational(0), Rational(1)}), rv({Rational(1)})),
                  Error);
}

TEST_CASE("property: certified pairs have vanishing mu_hat") {
  std::mt19937_64 rng(909);
  const ProblemInstance inst(fixtures::cubic36(), fixtures::cubic36_digit(), 6);
  const FourierTransform ft(inst);
  std::uniform_int_distribution<long> num(-30, 30);
  int certified = 0;
  for (int trial = 0; trial < 300; ++trial) {
    RatVector delta(3);
    for (auto& x : delta) {
      x = ratio(num(rng), 6);
      x.canonicalize();
    }
    const auto c = certify_orthogonal(inst, delta, RatVector(3, Rational(0)));
    const MuHatValue v = ft(delta);
    if (c) {
      ++certified;
      CHECK(v.exact_zero);
    }
    if (!v.exact_zero) CHECK(v.error_bound < 1e-8);
  }
  CHECK(certified > 0);
}
