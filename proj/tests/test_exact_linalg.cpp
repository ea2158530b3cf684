#include "doctest.h"
#include "selfaffine/exact_linalg.hpp"
#include "test_support.hpp"

using namespace selfaffine;

TEST_CASE("determinant of fixed matrices") {
  CHECK(det(fixtures::cubic36()) == -36);
  CHECK(det(IntMatrix::identity(3)) == 1);
  CHECK(det(IntMatrix{{4, -3, 3}, {0, -2, 0}, {0, 0, -2}}) == 16);
  CHECK(det(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(fixtures::cubic36()) == IntPolynomial{{36, 0, 0, 1}});
  CHECK(to_string(char_poly(fixtures::cubic36())) == "x^3 + 36");
  IntMatrix two{{2, 0}, {0, 2}};
  CHECK(char_poly(two) == IntPolynomial{{4, -4, 1}});
  CHECK(to_string(char_poly(two)) == "x^2 - 4x + 4");
  CHECK(char_poly(fixtures::scalar(3)) == IntPolynomial{{-3, 1}});
}

TEST_CASE("Krylov rank") {
  CHECK(krylov(fixtures::eigen4(), fixtures::eigen4_digit()).rank == 1);
  CHECK(krylov(fixtures::cubic36(), fixtures::cubic36_digit()).rank == 3);
  CHECK(krylov(IntMatrix::identity(3), IntVector{2, -1, 5}).rank == 1);
  CHECK_THROWS_AS(krylov(IntMatrix::identity(2), IntVector{0, 0}), Error);
  const KrylovSequence k = krylov(fixtures::cubic36(), fixtures::cubic36_digit());
  REQUIRE(k.vectors.size() == 3);
  CHECK(k.vectors[1] == fixtures::cubic36() * fixtures::cubic36_digit());
}

TEST_CASE("unimodular echelon of a column") {
  const IntMatrix a{{1}, {1}, {2}};
  const HermiteResult h = hnf_unimodular(a);
  CHECK(h.echelon == IntMatrix{{1}, {0}, {0}});
  CHECK(h.transform * a == h.echelon);
  CHECK(abs(det(h.transform)) == 1);

  const HermiteResult id = hnf_unimodular(IntMatrix::identity(2));
  CHECK(id.transform * IntMatrix::identity(2) == id.echelon);
  CHECK(id.echelon == IntMatrix::identity(2));

  const IntMatrix five{{0}, {0}, {5}};
  const HermiteResult p = hnf_unimodular(five);
  CHECK(p.echelon == IntMatrix{{5}, {0}, {0}});
  CHECK(p.transform * five == p.echelon);
  for (std::size_t i = 0; i < 3; ++i) {
    int nonzero = 0;
    for (std::size_t j = 0; j < 3; ++j)
      if (p.transform(i, j) != 0) {
        ++nonzero;
        CHECK(abs(p.transform(i, j)) == 1);
      }
    CHECK(nonzero == 1);
  }
}

TEST_CASE("rank-deficient echelon input is rejected") {
  CHECK_THROWS_AS(hnf_unimodular(IntMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("inverses") {
  const IntMatrix b{{1, 0, 0}, {-1, 1, 0}, {-2, 0, 1}};
  CHECK(inverse_unimodular(b) == IntMatrix{{1, 0, 0}, {1, 1, 0}, {2, 0, 1}});
  CHECK(inverse_unimodular(IntMatrix::identity(3)) == IntMatrix::identity(3));
  try {
    inverse_unimodular(IntMatrix{{2, 0}, {0, 2}});
    FAIL("expected NotUnimodular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnimodular);
  }
  CHECK_THROWS_AS(inverse(IntMatrix{{1, 2}, {2, 4}}), Error);
  const RatMatrix half = inverse(IntMatrix{{2, 0}, {0, 2}});
  CHECK(half(0, 0) == ratio(1, 2));
}

TEST_CASE("expanding test on fixed matrices") {
  CHECK(is_expanding(fixtures::cubic36()));
  CHECK_FALSE(is_expanding(IntMatrix::identity(3)));
  CHECK_FALSE(is_expanding(IntMatrix{{2, 0}, {0, 1}}));
  CHECK(is_expanding(IntMatrix{{0, 1}, {-4, 0}}));
  CHECK_FALSE(is_expanding(IntMatrix{{0, 0}, {0, 3}}));
  CHECK_FALSE(is_expanding(IntMatrix{{-1}}));
  CHECK(is_expanding(IntMatrix{{-2}}));
  // x^2 - x + 2: roots of modulus sqrt(2).
  CHECK(is_expanding(IntMatrix{{0, -2}, {1, 1}}));
  // x^2 - 3x + 1: roots 2.618 and 0.382.
  CHECK_FALSE(is_expanding(IntMatrix{{0, -1}, {1, 3}}));
}

TEST_CASE("polynomial evaluation") {
  const IntPolynomial p{{36, 0, 0, 1}};
  CHECK(p(Integer(-3)) == 9);
  CHECK(p.degree() == 3);
}

TEST_CASE("fractional part") {
  CHECK(frac(ratio(7, 3)) == ratio(1, 3));
  CHECK(frac(ratio(-1, 4)) == ratio(3, 4));
  CHECK(frac(Rational(-2)) == 0);
}

TEST_CASE("property: Cayley-Hamilton and determinant against elimination") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const IntMatrix m = gen::random_matrix(rng, n, n, 9);
    const IntPolynomial p = char_poly(m);
    CHECK(p.degree() == n);
    CHECK(p.leading() == 1);
    CHECK(evaluate(p, m) == IntMatrix(n, n));
    const Integer sign = n % 2 == 0 ? 1 : -1;
    CHECK(p.coeffs[0] == sign * det(m));
    const auto [r, d] = oracle::gauss(m);
    CHECK(Rational(det(m)) == d);
    CHECK(rank(m) == r);
  }
}

TEST_CASE("property: Krylov rank against elimination oracle") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    IntMatrix m = gen::random_matrix(rng, n, n, 3);
    if (trial % 4 == 0) {
      // Force low Krylov rank: block diagonal with v in the first block.
      m = IntMatrix(n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = static_cast<long>(i % 2 + 2);
    }
    const IntVector v = gen::random_vector(rng, n, 3);
    const KrylovSequence k = krylov(m, v);
    CHECK(k.rank == oracle::gauss(IntMatrix::from_columns(k.vectors)).first);
  }
}

TEST_CASE("property: inverses and rectangular echelon forms") {
  std::mt19937_64 rng(303);
  int invertible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const IntMatrix m = gen::random_matrix(rng, n, n, 6);
    if (det(m) != 0) {
      ++invertible;
      const RatMatrix inv = inverse(m);
      CHECK(inv * to_rational(m) == to_rational(IntMatrix::identity(n)));
      CHECK(to_rational(m) * inv == to_rational(IntMatrix::identity(n)));
    }
    const IntMatrix u = gen::random_unimodular(rng, n);
    CHECK(abs(det(u)) == 1);
    CHECK(inverse_unimodular(u) * u == IntMatrix::identity(n));

    const std::size_t cols = 1 + trial % n;
    const IntMatrix a = gen::random_matrix(rng, n, cols, 7);
    if (rank(a) < cols) continue;
    const HermiteResult h = hnf_unimodular(a);
    CHECK(abs(det(h.transform)) == 1);
    CHECK(h.transform * a == h.echelon);
    for (std::size_t i = cols; i < n; ++i)
      for (std::size_t j = 0; j < cols; ++j) CHECK(h.echelon(i, j) == 0);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = j + 1; i < n; ++i) CHECK(h.echelon(i, j) == 0);
  }
  CHECK(invertible > 100);
}

TEST_CASE("property: expanding test against numerical roots") {
  std::mt19937_64 rng(404);
  int decided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix m = gen::random_matrix(rng, n, n, 5);
    const IntPolynomial p = char_poly(m);
    std::vector<double> c;
    for (const auto& x : p.coeffs) c.push_back(x.get_d());
    const auto z = oracle::roots(c);
    double min_mod = 1e300;
    for (const auto& r : z) min_mod = std::min(min_mod, std::abs(r));
    if (std::abs(min_mod - 1.0) < 1e-6) continue;  // numerically ambiguous
    ++decided;
    CHECK(is_expanding(m) == (min_mod > 1.0));
  }
  CHECK(decided > 200);
}

TEST_CASE("Schur stability of simple polynomials") {
  CHECK(schur_stable(IntPolynomial{{0, 1}}));         // x
  CHECK(schur_stable(IntPolynomial{{1, 0, 4}}));      // 4x^2 + 1
  CHECK_FALSE(schur_stable(IntPolynomial{{-1, 1}}));  // x - 1
  CHECK_FALSE(schur_stable(IntPolynomial{{1, 0, 1}}));
}

TEST_CASE("matrix helpers") {
  const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(transpose(m) == IntMatrix{{1, 4}, {2, 5}, {3, 6}});
  CHECK(m.block(0, 1, 2, 2) == IntMatrix{{2, 3}, {5, 6}});
  CHECK(m.column(2) == IntVector{3, 6});
  CHECK(dot(IntVector{1, 2}, IntVector{3, 4}) == 11);
  CHECK(is_integral(RatVector{Rational(2), ratio(4, 2)}));
  CHECK_FALSE(is_integral(RatVector{ratio(1, 2)}));
  CHECK(to_string(m) == "[[1, 2, 3], [4, 5, 6]]");
  CHECK_THROWS_AS(to_integer(RatVector{ratio(1, 3)}), Error);
}
