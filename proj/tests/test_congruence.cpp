#include "doctest.h"
#include "siegel/congruence.hpp"
#include "siegel/error.hpp"
#include "siegel/linalg.hpp"
#include "test_support.hpp"
#include "theta_fixtures.hpp"

using namespace siegel;
using siegel::testing::half;

TEST_CASE("theorem check") {
  CHECK(theorem_modulus(5, 1) == 4);
  CHECK(theorem_modulus(5, 2) == 20);
  CHECK(theorem_modulus(3, 3) == 18);
  CHECK(theorem_check(4, 0, 3, 1));
  CHECK(theorem_check(4, 0, 5, 1));
  CHECK_FALSE(theorem_check(4, 0, 7, 1));
  CHECK_FALSE(theorem_check(4, 1, 7, 1));
  CHECK(theorem_check(1, 2, 5, 3));
  CHECK(theorem_check(12, 4, 11, 1));
  CHECK_THROWS_AS(theorem_modulus(5, 0), Error);
}

TEST_CASE("choice of t") {
  for (int p : {3, 5, 7})
    for (int m = 1; m <= 3; ++m) {
      IntMatrix g = IntMatrix::identity(2) * Int(2 * p);
      CHECK(choose_t(HalfIntegralMatrix(g), p, m) == m + 1);
    }
  const auto a2 = half(2, {2, 1, 2});
  CHECK(choose_t(a2, 3, 1) == 2);
  CHECK(choose_t(a2, 5, 1) == 1);
  CHECK(choose_t(a2, 5, 2) == 2);
  CHECK(choose_t(HalfIntegralMatrix::zero(0), 5, 2) == 2);
  CHECK_THROWS_AS(choose_t(half(2, {2, 0, 0}), 5, 1), Error);

  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 3;
    const auto t = siegel::testing::random_psd(rng, n, n);
    if (!is_positive_definite(t)) continue;
    const int p = k % 2 ? 3 : 5;
    const int m = 1 + k % 2;
    const int chosen = choose_t(t, p, m);
    CHECK(chosen >= m);
    const IntMatrix sub = sublattice_matrix(t, p, chosen);
    const Int pm = power(Int(p), m);
    for (const auto& x : sub.data()) CHECK(mpz_divisible_p(x.get_mpz_t(), pm.get_mpz_t()));
    CHECK(is_positive_definite(gram_of_sublattice(t, sub)));
  }
}

TEST_CASE("singularity reports") {
  const auto a2 = scalar_theta(catalog("A2"), 3, 4);
  const auto r = report(a2, 5, 1);
  CHECK(r.status == ReportStatus::Pass);
  CHECK(r.singular_rank == 2);
  CHECK(r.p_rank == 2);
  CHECK(r.weight == 1);
  CHECK(r.lhs == 0);
  CHECK(r.modulus == 4);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].T == half(2, {2, 1, 2}));
  CHECK(r.witnesses[0].residues == IntVector{2});
  CHECK(to_string(r.status) == "PASS");

  const auto e8 = scalar_theta(catalog("E8"), 2, 2);
  CHECK(report(e8, 3, 1).status == ReportStatus::Pass);
  CHECK(report(e8, 5, 1).status == ReportStatus::Pass);
  CHECK(report(e8, 11, 1).status == ReportStatus::NotSingular);
  // Within trace bound 2 every rank 2 coefficient of theta_E8 vanishes mod 7,
  // so the truncation looks singular of rank 1 and 2k - 1 fails the congruence.
  const auto e8p7 = report(e8, 7, 1);
  CHECK(e8p7.status == ReportStatus::Contradiction);
  CHECK(e8p7.singular_rank == 1);
  CHECK(e8p7.theorem_holds == false);
  CHECK(to_string(e8p7.status) == "CONTRADICTION");
  // One more trace level exposes a unit rank 2 coefficient.
  const auto e8b3 = report(scalar_theta(catalog("E8"), 2, 3), 7, 1);
  CHECK(e8b3.status == ReportStatus::NotSingular);
  CHECK(e8b3.p_rank == 2);

  FourierExpansion five(2, build_rep(2, {0, 0}), LevelSpec{}, 0, 2);
  for (const auto& t : enumerate_classes(2, 2)) five.set(t, IntVector{t.trace() == 0 ? 5 : 0});
  CHECK(report(five, 5, 1).status == ReportStatus::Trivial);
  CHECK(report(five, 3, 1).status == ReportStatus::Pass);
}

TEST_CASE("slice identities") {
  const auto a2 = scalar_theta(catalog("A2"), 3, 4);
  for (int m : {1, 2}) {
    const auto i1 = identity1_check(a2, 5, m);
    CHECK(i1.holds);
    CHECK(i1.r == 2);
    CHECK(i1.checked > 0);
    const auto i3 = identity3_check(a2, 5, m);
    CHECK(i3.holds);
    CHECK(i3.t == m);
    CHECK(i3.checked > 0);
  }
  const auto i3 = identity3_check(a2, 5, 1, 3);
  CHECK(i3.t == 3);
  CHECK(i3.holds);

  const auto h = siegel::testing::sym6_theta(3, 4);
  CHECK(identity1_check(h, 5, 1).holds);
  CHECK(identity3_check(h, 5, 1).holds);
  CHECK_THROWS_AS(identity1_check(scalar_theta(catalog("E8"), 2, 2), 11, 1), Error);
}

TEST_CASE("scalar extraction") {
  const auto a2 = scalar_theta(catalog("A2"), 3, 4);
  const auto ex = scalar_extraction(a2, 5, 1);
  CHECK(ex.j0 == 0);
  CHECK(ex.c == 12);
  CHECK(ex.alphas == IntVector{1});
  CHECK(ex.verdict);
  CHECK(ex.g[0] == 12);
  CHECK(ex.theta[0] == 1);

  const auto h = siegel::testing::sym6_theta(3, 4);
  const auto hx = scalar_extraction(h, 5, 1);
  CHECK(hx.alphas == IntVector(7, 1));
  CHECK(hx.j0 == 0);
  CHECK(hx.c == -24);
  CHECK(hx.verdict);
  CHECK_THROWS_AS(scalar_extraction(scalar_theta(catalog("E8"), 2, 2), 3, 1), Error);
}

TEST_CASE("square comparison") {
  const auto r = half(2, {2, 1, 2});
  const std::int64_t b = 12;
  const QSeries theta = theta_qseries(r, b);
  CHECK(square_compare(theta, r, 1, 5, 1, b));
  CHECK(square_compare(q_scale(theta, 3), r, 3, 7, 2, b));
  QSeries noisy = theta;
  for (std::int64_t j = 0; j <= b; ++j) noisy.coeffs[j] += 5 * (j % 3);
  CHECK(square_compare(noisy, r, 1, 5, 1, b));
  QSeries shifted = theta;
  shifted.coeffs[0] += 1;
  CHECK_FALSE(square_compare(shifted, r, 1, 5, 1, b));
}

TEST_CASE("pipeline") {
  const auto res = pipeline(scalar_theta(catalog("A2"), 3, 4), 5, 2);
  CHECK(res.passed());
  REQUIRE(res.extraction);
  CHECK(res.square == true);

  const auto e8 = pipeline(scalar_theta(catalog("E8"), 2, 2), 3, 1);
  CHECK(e8.passed());
  CHECK_FALSE(e8.extraction.has_value());
  CHECK_FALSE(e8.skipped.empty());

  const auto bad = pipeline(scalar_theta(catalog("E8"), 2, 2), 7, 1);
  CHECK_FALSE(bad.passed());
  CHECK(bad.report.status == ReportStatus::Contradiction);

  const auto ns = pipeline(scalar_theta(catalog("E8"), 2, 2), 11, 1);
  CHECK_FALSE(ns.passed());
  CHECK_FALSE(ns.identity1.has_value());
}
