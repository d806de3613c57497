#include <sstream>

#include "doctest.h"
#include "siegel/error.hpp"
#include "siegel/expansion.hpp"
#include "siegel/linalg.hpp"
#include "siegel/sfex.hpp"
#include "siegel/theta.hpp"
#include "test_support.hpp"
#include "theta_fixtures.hpp"

using namespace siegel;
using siegel::testing::half;

namespace {

// Checks a(U T U^t) = chi(det U) rho(U) a(T) for random U on every stored T.
// `transposed` swaps rho(U) for rho(U^t).
long closure_failures(const FourierExpansion& f, int trials, std::uint64_t seed, bool transposed = false) {
  std::mt19937_64 rng(seed);
  long failures = 0, checked = 0;
  for (const auto& [t, value] : f.coefficients()) {
    for (int k = 0; k < trials; ++k) {
      const IntMatrix u = siegel::testing::random_unimodular(rng, f.degree(), 4);
      const HalfIntegralMatrix moved = t.transform(u);
      if (moved.trace() > f.trace_bound()) continue;
      IntVector expect = f.rho(transposed ? u.transpose() : u) * get_coeff(f, t);
      if (f.level().char_parity == -1 && determinant(u) == -1)
        for (auto& x : expect) x = -x;
      ++checked;
      if (get_coeff(f, moved) != f.reduce(expect)) ++failures;
    }
  }
  REQUIRE(checked > 0);
  return failures;
}

FourierExpansion constant_form(int n, const Int& bound, const Int& value) {
  FourierExpansion f(n, build_rep(n, HighestWeight(n, 0)), LevelSpec{}, 0, bound);
  for (const auto& t : enumerate_classes(n, bound)) f.set(t, IntVector{t.trace() == 0 ? value : Int(0)});
  return f;
}

}  // namespace

TEST_CASE("stored keys and bounds") {
  const auto f = scalar_theta(catalog("A2"), 2, 3);
  for (const auto& [t, v] : f.coefficients()) {
    CHECK(canonical(t).form == t);
    CHECK(get_coeff(f, t) == v);
    CHECK(t.trace() <= 3);
  }
  CHECK_THROWS_AS(get_coeff(f, half(2, {4, 0, 4})), Error);
  FourierExpansion g = f;
  CHECK_THROWS_AS(g.set(half(2, {2, -1, 2}), IntVector{1}), Error);  // not canonical
  CHECK_THROWS_AS(g.set(half(2, {2, 1, 2}), IntVector{1, 2}), Error);
}

TEST_CASE("missing keys: zero in exploratory mode, error in strict mode") {
  FourierExpansion f(2, build_rep(2, {2, 2}), LevelSpec{}, 0, 2);
  f.set(HalfIntegralMatrix::zero(2), IntVector{1});
  CHECK(get_coeff(f, half(2, {2, 0, 0})) == IntVector{0});
  f.set_missing_keys(MissingKeys::Error);
  CHECK_THROWS_AS(get_coeff(f, half(2, {2, 0, 0})), Error);
}

TEST_CASE("equivariance closure on theta expansions") {
  CHECK(closure_failures(scalar_theta(catalog("A2"), 3, 4), 30, 1) == 0);
  CHECK(closure_failures(scalar_theta(catalog("D4"), 2, 3), 30, 2) == 0);
  CHECK(closure_failures(scalar_theta(catalog("E8"), 2, 2), 30, 3) == 0);
  const auto h = siegel::testing::sym6_theta(3, 4);
  CHECK(closure_failures(h, 30, 4) == 0);

  // Scalar case: independent of U up to the character.
  const auto a2 = scalar_theta(catalog("A2"), 2, 3);
  CHECK(a2.level().char_parity == -1);
  std::mt19937_64 rng(5);
  for (const auto& [t, v] : a2.coefficients())
    for (int k = 0; k < 10; ++k) {
      const IntMatrix u = siegel::testing::random_unimodular(rng, 2, 3);
      const auto moved = t.transform(u);
      if (moved.trace() > 3) continue;
      CHECK(abs(get_coeff(a2, moved)[0]) == abs(v[0]));
    }
}

TEST_CASE("the other orientation and the other character fail closure") {
  const auto h = siegel::testing::sym6_theta(3, 4);
  CHECK(closure_failures(h, 30, 6, true) > 0);

  const auto a2 = scalar_theta(catalog("A2"), 2, 4);
  LevelSpec even = a2.level();
  even.char_parity = 1;
  FourierExpansion flipped(2, a2.rep_ptr(), even, 0, 4);
  for (const auto& [t, v] : a2.coefficients()) flipped.set(t, v);
  CHECK(closure_failures(a2, 30, 8) == 0);
  CHECK(closure_failures(flipped, 30, 8) > 0);
}

TEST_CASE("rank subseries") {
  const auto f = scalar_theta(catalog("A2"), 3, 4);
  const auto f0 = rank_subseries(f, 0);
  for (const auto& [t, v] : f0.coefficients()) CHECK(v[0] == (t.trace() == 0 ? 1 : 0));
  std::map<HalfIntegralMatrix, Int> total;
  for (int r = 0; r <= 3; ++r) {
    const auto part = rank_subseries(f, r);
    for (const auto& [t, v] : part.coefficients()) total[t] += v[0];
  }
  for (const auto& [t, v] : f.coefficients()) CHECK(total[t] == v[0]);
  const auto f3 = rank_subseries(f, 3);
  for (const auto& [t, v] : f3.coefficients()) CHECK(v[0] == 0);
}

TEST_CASE("f0 extraction") {
  const auto f = scalar_theta(catalog("A2"), 3, 4);
  const auto e0 = f0_extract(f, 0);
  REQUIRE(e0.size() == 1);
  CHECK(e0.begin()->second == IntVector{1});
  const IntMatrix gram = catalog("A2").gram;
  for (const auto& [t, v] : f0_extract(f, 2)) {
    CHECK(rank(t) == 2);
    CHECK(v[0] == siegel::testing::box_count(gram, t.doubled(), 3));
  }
  CHECK(f0_extract(f, 2).at(half(2, {2, 1, 2})) == IntVector{12});
  for (const auto& [t, v] : f0_extract(f, 3)) CHECK(v[0] == 0);
}

TEST_CASE("Phi operator") {
  const auto d1 = scalar_theta(catalog("E8"), 1, 2);
  const auto c = phi_operator(d1);
  CHECK(c.degree() == 0);
  REQUIRE(c.coefficients().size() == 1);
  CHECK(c.coefficients().begin()->second == IntVector{1});

  for (const char* name : {"A2", "D4"}) {
    const auto l = catalog(name);
    const auto f3 = scalar_theta(l, 3, 3);
    const auto phi = phi_operator(f3);
    const auto f2 = scalar_theta(l, 2, 3);
    CHECK(phi.trace_bound() == 3);
    CHECK(phi.coefficients() == f2.coefficients());
    CHECK(phi.rep().weight() == f2.rep().weight());
  }

  const auto h = siegel::testing::sym6_theta(3, 4);
  const auto ph = phi_operator(h);
  CHECK(ph.embed() == 1);
  CHECK(ph.degree() == 2);
  CHECK(closure_failures(ph, 30, 7) == 0);
  bool nonzero = false;
  for (const auto& [t, v] : ph.coefficients())
    if (rank(t) == 2 && !is_zero_mod(v, 0)) nonzero = true;
  CHECK(nonzero);
}

TEST_CASE("twist filter") {
  const auto f = scalar_theta(catalog("A2"), 3, 4);
  CHECK(twist_filter(f, 5, 0, 2) == f);
  const auto once = twist_filter(f, 3, 1, 2);
  CHECK(twist_filter(once, 3, 1, 2) == once);

  for (const auto& t : enumerate_raw(3, 3)) {
    const IntMatrix block = t.doubled().block(0, 1, 1, 2);
    const bool keep = mpz_divisible_p(block(0, 0).get_mpz_t(), Int(3).get_mpz_t()) &&
                      mpz_divisible_p(block(0, 1).get_mpz_t(), Int(3).get_mpz_t());
    CHECK(get_coeff(once, t) == (keep ? get_coeff(f, t) : IntVector{0}));
  }
  // Twist and rank stratification commute.
  for (int r = 0; r <= 3; ++r) {
    const auto a = twist_filter(rank_subseries(f, r), 3, 1, 2);
    const auto b = rank_subseries(twist_filter(f, 3, 1, 2), r);
    for (const auto& t : enumerate_raw(3, 2)) CHECK(get_coeff(a, t) == get_coeff(b, t));
  }
}

TEST_CASE("Jacobi slices") {
  const auto l = catalog("A2");
  const auto f = scalar_theta(l, 3, 4);
  const auto t = half(2, {2, 1, 2});
  const JacobiSlice s = jacobi_slice(f, t);
  CHECK(s.bound == 2);
  for (const auto& [key, value] : s.entries) {
    const auto& [s1, s2] = key;
    IntMatrix full(3, 3);
    full.set_block(0, 0, s1.doubled());
    full.set_block(0, 1, s2);
    full.set_block(1, 0, s2.transpose());
    full.set_block(1, 1, t.doubled());
    const HalfIntegralMatrix m(full);
    CHECK(is_psd(m));
    CHECK(m.trace() <= 4);
    if (s1.trace() <= 1) CHECK(value[0] == siegel::testing::box_count(l.gram, full, 2));
  }
  // r = 0: the whole expansion over raw indices.
  const auto g = scalar_theta(l, 2, 2);
  const JacobiSlice whole = jacobi_slice(g, HalfIntegralMatrix::zero(0));
  CHECK(whole.entries.size() == enumerate_raw(2, 2).size());
  for (const auto& [key, value] : whole.entries) CHECK(value == get_coeff(g, key.first));

  // collapse_z2 sums the S2 strata and is linear.
  const auto col = collapse_z2(s);
  for (const auto& [s1, v] : col) {
    Int sum = 0;
    for (const auto& [key, value] : s.entries)
      if (key.first == s1) sum += value[0];
    CHECK(v[0] == sum);
  }
  JacobiSlice doubled = s;
  for (auto& [key, value] : doubled.entries) value[0] *= 2;
  for (const auto& [s1, v] : collapse_z2(doubled)) CHECK(v[0] == 2 * col.at(s1)[0]);
}

TEST_CASE("p-rank and singularity") {
  const auto e8 = scalar_theta(catalog("E8"), 2, 2);
  CHECK(p_rank(e8, 3) == 0);
  CHECK(is_mod_singular(e8, 3, 1) == 0);
  CHECK(is_mod_singular(e8, 5, 1) == 0);
  CHECK(p_rank(e8, 7) == 1);
  CHECK(p_rank(e8, 11) == 2);
  CHECK_FALSE(is_mod_singular(e8, 11, 1).has_value());

  const auto a2 = scalar_theta(catalog("A2"), 3, 4);
  CHECK(p_rank(a2, 5) == 2);
  CHECK(is_mod_singular(a2, 5, 1) == 2);
  CHECK(is_mod_singular(a2, 5, 3) == 2);

  const auto one = constant_form(2, 3, 1);
  CHECK(p_rank(one, 5) == 0);
  CHECK(is_mod_singular(one, 5, 2) == 0);

  // p F vanishes mod p.
  FourierExpansion scaled(3, a2.rep_ptr(), a2.level(), 0, 4);
  for (const auto& [t, v] : a2.coefficients()) scaled.set(t, IntVector{5 * v[0]});
  CHECK(p_rank(scaled, 5) == -1);
  CHECK_FALSE(is_mod_singular(scaled, 5, 1).has_value());

  FourierExpansion residues(3, a2.rep_ptr(), a2.level(), 5, 4);
  for (const auto& [t, v] : a2.coefficients()) residues.set(t, v);
  CHECK(is_mod_singular(residues, 5, 1) == 2);
  CHECK_THROWS_AS(is_mod_singular(residues, 5, 2), Error);
  CHECK_THROWS_AS(is_mod_singular(residues, 3, 1), Error);
}

TEST_CASE("minimal determinant witness") {
  const auto a2 = scalar_theta(catalog("A2"), 3, 4);
  CHECK(minimal_det_witness(a2, 5, 2) == half(2, {2, 1, 2}));
  CHECK(minimal_det_witness(constant_form(2, 2, 1), 5, 0) == HalfIntegralMatrix::zero(0));
  CHECK_THROWS_AS(minimal_det_witness(a2, 5, 3), Error);
  CHECK_THROWS_AS(minimal_det_witness(constant_form(2, 2, 5), 5, 0), Error);
}

TEST_CASE("cyclotomic arithmetic") {
  for (int p : {3, 5})
    for (int t : {1, 2}) {
      const Int q = power(Int(p), t);
      CHECK(CyclotomicInt::power_of_zeta(p, t, q).as_integer() == Int(1));
      CyclotomicInt s = CyclotomicInt::zero(p, t);
      for (long k = 0; k < q; ++k) s += CyclotomicInt::power_of_zeta(p, t, k);
      CHECK(s.as_integer() == Int(0));
      const auto z = CyclotomicInt::power_of_zeta(p, t, 1);
      CHECK_FALSE(z.as_integer().has_value());
      CHECK((z * CyclotomicInt::power_of_zeta(p, t, q - 1)).as_integer() == Int(1));
    }
}

TEST_CASE("twist orthogonality identity") {
  std::mt19937_64 rng(31);
  for (int p : {3, 5})
    for (int t : {1, 2}) {
      const Int q = power(Int(p), t);
      const long ql = q.get_si();
      std::uniform_int_distribution<long> entry(-ql, ql);
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          const long cells_space = static_cast<long>(std::pow(static_cast<double>(ql), a * b));
          const int direct_samples = cells_space <= 10000 ? 40 : 4;
          for (int sample = 0; sample < 200; ++sample) {
            IntMatrix m(a, b);
            for (int i = 0; i < a; ++i)
              for (int j = 0; j < b; ++j) m(i, j) = sample % 4 == 0 ? q * (entry(rng) % 2) : Int(entry(rng));
            bool vanishes = true;
            for (const auto& x : m.data())
              if (!mpz_divisible_p(x.get_mpz_t(), q.get_mpz_t())) vanishes = false;
            const auto product = exponential_sum(m, p, t);
            CHECK(product.as_integer() == (vanishes ? power(q, a * b) : Int(0)));
            if (sample < direct_samples) CHECK(exponential_sum_direct(m, p, t).coeffs == product.coeffs);
          }
        }
    }
}

TEST_CASE("SFEX round trip") {
  std::vector<FourierExpansion> cases = {scalar_theta(catalog("E8"), 2, 2), scalar_theta(catalog("A2"), 3, 4),
                                         siegel::testing::sym6_theta(3, 3), scalar_theta(catalog("D4"), 1, 5)};
  cases.push_back(twist_filter(cases[1], 5, 2, 2));
  cases.push_back(phi_operator(cases[2]));
  FourierExpansion residues(3, cases[1].rep_ptr(), cases[1].level(), 25, 4);
  for (const auto& [t, v] : cases[1].coefficients()) residues.set(t, v);
  cases.push_back(residues);
  for (const auto& f : cases) {
    std::ostringstream os;
    write_sfex(os, f);
    std::istringstream is(os.str());
    const FourierExpansion back = read_sfex(is);
    CHECK(back == f);
    std::ostringstream again;
    write_sfex(again, back);
    CHECK(again.str() == os.str());
  }
}

TEST_CASE("SFEX rejects malformed input") {
  std::ostringstream os;
  write_sfex(os, scalar_theta(catalog("A2"), 2, 2));
  const std::string good = os.str();
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_sfex(is);
  };
  CHECK_NOTHROW(parse(good));
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(parse(replace("#degree: 2\n", "")), Error);
  CHECK_THROWS_AS(parse(replace("T: 0 0 0 C: 1", "T: 0 0 0 C: x")), Error);
  CHECK_THROWS_AS(parse(replace("T: 0 0 0 C: 1", "T: 0 0 C: 1")), Error);
  CHECK_THROWS_AS(parse(good + "T: 2 -1 2 C: 6\n"), Error);    // not canonical, out of order
  CHECK_THROWS_AS(parse(good + "T: 0 0 0 C: 1\n"), Error);     // duplicate
  CHECK_THROWS_AS(parse(replace("#weight: 1,1", "#weight: 1")), Error);
  try {
    parse(replace("T: 0 0 0 C: 1", "T: 0 0 0 C: 1 1"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}
