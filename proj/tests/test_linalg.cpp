#include "doctest.h"
#include "siegel/error.hpp"
#include "siegel/lattice_enum.hpp"
#include "siegel/linalg.hpp"
#include "test_support.hpp"

using namespace siegel;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int r, int c, int b) {
  std::uniform_int_distribution<int> e(-b, b);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

}  // namespace

TEST_CASE("determinant and rank") {
  CHECK(determinant(IntMatrix(2, 2, {4, 2, 2, 4})) == 12);
  CHECK(determinant(IntMatrix(3, 3, {0, 1, 2, 1, 0, 3, 4, -3, 8})) == -2);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(rank(IntMatrix(2, 2, {2, 2, 2, 2})) == 1);
  CHECK(rank(IntMatrix(3, 2)) == 0);
  CHECK(rank(IntMatrix(2, 3, {1, 2, 3, 2, 4, 7})) == 2);
}

TEST_CASE("row Hermite form transforms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix a = random_matrix(rng, r, c, 6);
    const HermiteForm hf = row_hermite(a);
    CHECK(hf.V * a == hf.H);
    CHECK(hf.V * hf.V_inverse == IntMatrix::identity(r));
    CHECK(abs(determinant(hf.V)) == 1);
    CHECK(hf.rank == rank(a));
    for (int i = hf.rank; i < r; ++i)
      for (int j = 0; j < c; ++j) CHECK(hf.H(i, j) == 0);
    for (int k = 0; k < hf.rank; ++k) {
      const Int& piv = hf.H(k, hf.pivots[k]);
      CHECK(piv > 0);
      for (int i = 0; i < k; ++i) {
        CHECK(hf.H(i, hf.pivots[k]) >= 0);
        CHECK(hf.H(i, hf.pivots[k]) < piv);
      }
    }
  }
}

TEST_CASE("integer kernel is saturated") {
  const IntMatrix a(1, 2, {2, 4});
  const IntMatrix k = integer_kernel(a);
  REQUIRE(k.cols() == 1);
  CHECK(a * k == IntMatrix(1, 1));
  CHECK(gcd(k(0, 0), k(1, 0)) == 1);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix m = random_matrix(rng, 2, 4, 5);
    const IntMatrix ker = integer_kernel(m);
    CHECK(ker.cols() == 4 - rank(m));
    CHECK((m * ker).is_zero());
    // Saturated: the kernel basis has trivial elementary divisors.
    for (const auto& d : smith_form(ker).divisors) CHECK(d == 1);
  }
}

TEST_CASE("Smith form: chain and transforms") {
  const SmithForm s = smith_form(IntMatrix(2, 2, {2, 0, 0, 3}));
  CHECK(s.divisors == IntVector{1, 6});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + trial % 4, c = 1 + (trial / 3) % 4;
    const IntMatrix a = random_matrix(rng, r, c, 9);
    const SmithForm sf = smith_form(a);
    IntMatrix d(r, c);
    for (size_t i = 0; i < sf.divisors.size(); ++i) d(static_cast<int>(i), static_cast<int>(i)) = sf.divisors[i];
    CHECK(sf.P * a * sf.Q == d);
    CHECK(sf.P * sf.P_inverse == IntMatrix::identity(r));
    CHECK(abs(determinant(sf.Q)) == 1);
    for (size_t i = 0; i + 1 < sf.divisors.size(); ++i) {
      CHECK(sf.divisors[i] >= 0);
      if (sf.divisors[i] != 0) CHECK(mpz_divisible_p(sf.divisors[i + 1].get_mpz_t(), sf.divisors[i].get_mpz_t()));
      else CHECK(sf.divisors[i + 1] == 0);
    }
  }
}

TEST_CASE("rational and integer inverse") {
  const IntMatrix a(2, 2, {2, 1, 1, 2});
  const RationalInverse inv = rational_inverse(a);
  CHECK(inv.denominator == 3);
  CHECK(a * inv.numerator == IntMatrix::identity(2) * Int(3));
  CHECK_FALSE(integer_inverse(a).has_value());
  const IntMatrix u(2, 2, {1, 1, 0, 1});
  CHECK(*integer_inverse(u) == IntMatrix(2, 2, {1, -1, 0, 1}));
  CHECK_THROWS_AS(rational_inverse(IntMatrix(2, 2, {1, 1, 1, 1})), Error);
}

TEST_CASE("short vectors agree with a box search") {
  const IntMatrix a2(2, 2, {2, 1, 1, 2});
  const auto v = short_vectors(a2, 2);
  CHECK(v.size() == 6);
  // Box oracle for a 3-dimensional form.
  const IntMatrix g(3, 3, {4, 1, 0, 1, 6, 2, 0, 2, 8});
  const auto sv = short_vectors(g, 30, true);
  size_t box = 0;
  for (long x = -6; x <= 6; ++x)
    for (long y = -6; y <= 6; ++y)
      for (long z = -6; z <= 6; ++z) {
        const long n = 4 * x * x + 6 * y * y + 8 * z * z + 2 * x * y + 4 * y * z;
        if (n <= 30) ++box;
      }
  CHECK(sv.size() == box);
}

TEST_CASE("representation counts") {
  // A2: 6 vectors of norm 2, 12 automorphisms.
  const IntMatrix a2(2, 2, {2, 1, 1, 2});
  RepresentationCounter rc(a2, 8);
  CHECK(rc.count(IntMatrix(1, 1, {2})) == 6);
  CHECK(rc.count(a2) == 12);
  CHECK(rc.count(IntMatrix(1, 1, {0})) == 1);
  CHECK(rc.count(IntMatrix(3, 3)) == 1);
}
