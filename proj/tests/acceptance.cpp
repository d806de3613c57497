#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "siegel/congruence.hpp"
#include "siegel/error.hpp"
#include "siegel/linalg.hpp"
#include "siegel/sfex.hpp"
#include "siegel/theta.hpp"
#include "test_support.hpp"
#include "theta_fixtures.hpp"

using namespace siegel;
using siegel::testing::half;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

int failures = 0;

void run(const std::string& id, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.notes.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::cout << id << ' ' << (out.pass ? "PASS" : "FAIL");
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << " (" << t.str() << "s)";
  for (const auto& n : out.notes) std::cout << "; " << n;
  std::cout << '\n' << std::flush;
}

std::string str(const Int& x) { return x.get_str(); }

HalfIntegralMatrix embedded(const HalfIntegralMatrix& t, int n) { return canonical(block_embed(t, n)).form; }

bool all_rank_at_least_zero_mod(const FourierExpansion& f, int min_rank, const Int& p) {
  for (const auto& [t, v] : f.coefficients())
    if (rank(t) >= min_rank && !is_zero_mod(v, p)) return false;
  return true;
}

long closure_failures(const FourierExpansion& f, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long bad = 0;
  for (const auto& [t, value] : f.coefficients())
    for (int k = 0; k < trials; ++k) {
      const IntMatrix u = siegel::testing::random_unimodular(rng, f.degree(), 4);
      const HalfIntegralMatrix moved = t.transform(u);
      if (moved.trace() > f.trace_bound()) continue;
      IntVector expect = f.rho(u) * value;
      if (f.level().char_parity == -1 && determinant(u) == -1)
        for (auto& x : expect) x = -x;
      if (get_coeff(f, moved) != f.reduce(expect)) ++bad;
    }
  return bad;
}

bool divisor_chain(const IntVector& d) {
  for (size_t i = 1; i < d.size(); ++i)
    if (d[i - 1] == 0 ? d[i] != 0 : !mpz_divisible_p(d[i].get_mpz_t(), d[i - 1].get_mpz_t())) return false;
  return true;
}

// Semistandard fillings of shape lambda with entries 1..n, by exhaustion.
long brute_tableaux(const HighestWeight& lambda, int n) {
  std::vector<std::pair<int, int>> cells;
  for (size_t r = 0; r < lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) cells.emplace_back(r, c);
  std::vector<int> fill(cells.size(), 1);
  long count = 0;
  while (true) {
    std::map<std::pair<int, int>, int> at;
    for (size_t i = 0; i < cells.size(); ++i) at[cells[i]] = fill[i];
    bool ok = true;
    for (const auto& [cell, v] : at) {
      const auto right = at.find({cell.first, cell.second + 1});
      const auto below = at.find({cell.first + 1, cell.second});
      if (right != at.end() && right->second < v) ok = false;
      if (below != at.end() && below->second <= v) ok = false;
    }
    if (ok) ++count;
    size_t k = 0;
    while (k < fill.size() && fill[k] == n) fill[k++] = 1;
    if (k == fill.size()) break;
    ++fill[k];
  }
  return count;
}

void partitions(int total, int parts, int max_part, HighestWeight& cur, std::vector<HighestWeight>& out) {
  if (static_cast<int>(cur.size()) == parts) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int k = std::min(total, max_part); k >= 0; --k) {
    cur.push_back(k);
    partitions(total - k, parts, k, cur, out);
    cur.pop_back();
  }
}

// Q-rank of the coefficient vectors of several PolyCoeffs with equal shape.
int span_rank(const std::vector<PolyCoeff>& ps) {
  std::map<std::pair<size_t, Polynomial::Exponent>, int> index;
  for (const auto& p : ps)
    for (size_t c = 0; c < p.components.size(); ++c)
      for (const auto& [e, x] : p.components[c].terms()) index.emplace(std::make_pair(c, e), 0);
  int next = 0;
  for (auto& [k, v] : index) v = next++;
  IntMatrix m(static_cast<int>(ps.size()), next);
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t c = 0; c < ps[i].components.size(); ++c)
      for (const auto& [e, x] : ps[i].components[c].terms()) m(static_cast<int>(i), index.at({c, e})) = x;
  return rank(m);
}

}  // namespace

int main() {
  const EvenLattice e8 = catalog("E8");
  const EvenLattice a2 = catalog("A2");
  const HalfIntegralMatrix a2form = half(2, {2, 1, 2});
  FourierExpansion theta_e8, theta_a2;

  run("AC-1", [&](Outcome& o) {
    theta_e8 = scalar_theta(e8, 2, 2);
    o.expect(get_coeff(theta_e8, HalfIntegralMatrix::zero(2)) == IntVector{1}, "a(0) = 1");
    const Int roots = get_coeff(theta_e8, half(2, {0, 0, 2}))[0];
    o.expect(roots == 240, "norm 2 count 240, got " + str(roots));
    o.expect(all_rank_at_least_zero_mod(theta_e8, 1, 3), "rank >= 1 coefficients vanish mod 3");
    for (int p : {3, 5}) {
      const auto r = report(theta_e8, p, 1);
      o.expect(r.singular_rank == 0, "singular rank 0 for p = " + std::to_string(p));
      o.expect(theorem_check(4, 0, p, 1), "theorem check (4, 0, " + std::to_string(p) + ", 1)");
      o.expect(r.status == ReportStatus::Pass, "status PASS for p = " + std::to_string(p));
    }
    o.note("classes " + std::to_string(theta_e8.coefficients().size()));
  });

  run("AC-2", [&](Outcome& o) {
    theta_a2 = scalar_theta(a2, 3, 4);
    o.expect(all_rank_at_least_zero_mod(theta_a2, 3, 0), "rank 3 coefficients are exactly 0");
    const Int c = get_coeff(theta_a2, embedded(a2form, 3))[0];
    o.expect(c == 12, "a(blockdiag(0, A2)) = 12, got " + str(c));
    o.expect(mod_nonneg(c, 5) == 2, "12 = 2 mod 5");
    o.expect(Int(automorphisms(a2form).size()) == c, "|Aut(A2)| = 12");
    const auto r = report(theta_a2, 5, 1);
    o.expect(r.singular_rank == 2, "singular rank 2");
    o.expect(theorem_check(1, 2, 5, 1), "theorem check (1, 2, 5, 1)");
    o.expect(r.status == ReportStatus::Pass, "status PASS");
  });

  run("AC-3", [&](Outcome& o) {
    const auto i1 = identity1_check(theta_a2, 5, 2);
    const auto i3 = identity3_check(theta_a2, 5, 2);
    o.expect(i1.holds && i1.counterexamples.empty(), "identity1");
    o.expect(i3.holds && i3.counterexamples.empty(), "identity3");
    int v = 0;
    for (const auto& d : smith_form(i3.witness.doubled()).divisors) v = std::max(v, valuation(d, 5));
    const int t = choose_t(i3.witness, 5, 2);
    o.expect(t == 2 + v && i3.t == t, "chooseT = m + v_5");
    const IntMatrix sub = sublattice_matrix(i3.witness, 5, t);
    for (const auto& x : sub.data()) o.expect(mpz_divisible_p(x.get_mpz_t(), Int(25).get_mpz_t()), "R = 0 mod 25");
    o.note("identity1 checked " + std::to_string(i1.checked) + ", identity3 checked " + std::to_string(i3.checked) +
           ", t = " + std::to_string(t));
  });

  run("AC-4", [&](Outcome& o) {
    const auto ex = scalar_extraction(theta_a2, 5, 1);
    o.expect(ex.verdict, "g = c theta_R mod 5");
    o.expect(square_compare(ex.g, ex.R, ex.c, 5, 1, ex.effective_bound), "g^2 = c^2 theta_{R+R} mod 5");
    o.note("c = " + str(ex.c) + ", effective bound " + std::to_string(ex.effective_bound));
  });

  run("AC-5", [&](Outcome& o) {
    // Sym^2 solutions exist but their theta series vanish identically, so the
    // vector valued path is exercised with rep0 = Sym^6.
    const auto sym2 = solve_harmonic_coefficients(a2, 2, {2, 0});
    bool sym2_zero = true;
    for (const auto& p : sym2) {
      o.expect(pluriharmonic_check(p, a2) && equivariance_check(p), "Sym^2 solution passes both checks");
      const auto f = poly_theta(a2, 2, p, 4);
      for (const auto& [t, v] : f.coefficients())
        if (!is_zero_mod(v, 0)) sym2_zero = false;
    }
    o.note("Sym^2 solutions " + std::to_string(sym2.size()) + (sym2_zero ? " (theta identically 0)" : " (nonzero)"));

    const auto sym6 = solve_harmonic_coefficients(a2, 2, {6, 0});
    const auto q = invariant_harmonics(a2, 6);
    o.expect(q.size() == 1, "one Aut(A2)-invariant harmonic of degree 6");
    std::vector<PolyCoeff> span = sym6;
    span.push_back(sym_power_coefficient(q.at(0), 2));
    o.expect(span_rank(span) == static_cast<int>(sym6.size()), "invariant harmonic lies in the solved space");

    const PolyCoeff p = sym_power_coefficient(q.at(0), 3);
    o.expect(pluriharmonic_check(p, a2), "pluriharmonic");
    o.expect(equivariance_check(p), "equivariant");
    const auto f = poly_theta(a2, 3, p, 4);
    o.expect(closure_failures(f, 30, 0x5eed) == 0, "equivariance closure");
    const auto ex = scalar_extraction(f, 5, 1);
    o.expect(static_cast<int>(ex.alphas.size()) > 0, "alphas reported");
    o.expect(divisor_chain(ex.alphas), "alpha divisibility chain");
    o.expect(ex.j0 >= 0 && mod_nonneg(ex.c, 5) != 0, "unit coordinate");
    o.expect(ex.verdict, "extraction verdict");
    std::string alphas;
    for (const auto& a : ex.alphas) alphas += (alphas.empty() ? "" : ",") + str(a);
    o.note("rep0 Sym^6, weight " + format_weight(f.rep().weight()) + ", alphas [" + alphas + "], c = " + str(ex.c));
  });

  run("AC-6", [&](Outcome& o) {
    const Int roots = get_coeff(theta_e8, half(2, {0, 0, 2}))[0];
    o.expect(mod_nonneg(roots, 7) == 2, "240 = 2 mod 7");
    o.expect(p_rank(theta_e8, 7) >= 1, "p-rank >= 1");
    const auto r = report(theta_e8, 7, 1);
    o.expect(r.singular_rank != 0, "not singular of rank 0");
    o.expect(r.status != ReportStatus::Contradiction, "no CONTRADICTION status");
    o.note("status " + to_string(r.status) + ", p-rank " + std::to_string(r.p_rank) + ", singular rank " +
           (r.singular_rank ? std::to_string(*r.singular_rank) : std::string("none")));
  });

  run("AC-6 supplementary (bound 3)", [&](Outcome& o) {
    const auto r = report(scalar_theta(e8, 2, 3), 7, 1);
    o.expect(r.status == ReportStatus::NotSingular, "NOT_SINGULAR");
    o.expect(r.singular_rank != 0, "not singular of rank 0");
    o.note("status " + to_string(r.status) + ", p-rank " + std::to_string(r.p_rank));
  });

  run("AC-7", [&](Outcome& o) {
    std::mt19937_64 rng(0x5eed);
    long bad = 0;
    for (int k = 0; k < 500; ++k) {
      const int n = 2 + k % 3;
      const auto t = siegel::testing::random_psd(rng, n, n);
      const auto c = canonical(t);
      const auto moved = t.transform(siegel::testing::random_unimodular(rng, n));
      const auto cm = canonical(moved);
      if (cm.form != c.form || moved.transform(cm.U) != cm.form) ++bad;
    }
    o.expect(bad == 0, "canonical form orbit invariance");

    o.expect(closure_failures(theta_a2, 20, 1) == 0 && closure_failures(theta_e8, 20, 2) == 0 &&
                 closure_failures(scalar_theta(catalog("D4"), 2, 3), 20, 3) == 0,
             "equivariance closure on theta expansions");

    for (int p : {3, 5})
      for (int t : {1, 2}) {
        const Int q = power(Int(p), t);
        std::uniform_int_distribution<long> entry(-2 * q.get_si(), 2 * q.get_si());
        for (int a = 1; a <= 2; ++a)
          for (int b = 1; b <= 2; ++b)
            for (int s = 0; s < 30; ++s) {
              IntMatrix m(a, b);
              bool vanishes = true;
              for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) {
                  m(i, j) = s % 3 == 0 ? q * entry(rng) : Int(entry(rng));
                  if (!mpz_divisible_p(m(i, j).get_mpz_t(), q.get_mpz_t())) vanishes = false;
                }
              const auto product = exponential_sum(m, p, t);
              const bool formula = product.as_integer() == (vanishes ? power(q, a * b) : Int(0));
              const bool direct = s >= 3 || exponential_sum_direct(m, p, t).coeffs == product.coeffs;
              if (!formula || !direct) ++bad;
            }
      }
    o.expect(bad == 0, "twist orthogonality");

    for (int n = 1; n <= 4; ++n)
      for (int total = 0; total <= 6; ++total) {
        std::vector<HighestWeight> ws;
        HighestWeight cur;
        partitions(total, n, total, cur, ws);
        for (const auto& w : ws)
          if (weyl_dimension(w) != brute_tableaux(w, n)) ++bad;
      }
    o.expect(bad == 0, "Weyl dimension = tableau count");

    for (const HighestWeight& w : {HighestWeight{2, 1, 0}, HighestWeight{3, 1}, HighestWeight{2, 2, 1}}) {
      const auto rep = build_rep(static_cast<int>(w.size()), w);
      for (int k = 0; k < 200 / 3 + 1; ++k) {
        const IntMatrix g = siegel::testing::random_unimodular(rng, rep->degree());
        const IntMatrix h = siegel::testing::random_unimodular(rng, rep->degree());
        if (rep->matrix(g * h) != rep->matrix(g) * rep->matrix(h)) ++bad;
      }
    }
    o.expect(bad == 0, "rep matrix homomorphism");

    std::uniform_int_distribution<int> e(-9, 9);
    for (int k = 0; k < 100; ++k) {
      IntMatrix a(3, 4);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = e(rng);
      const auto s = smith_form(a);
      IntMatrix d(3, 4);
      for (int i = 0; i < 3; ++i) d(i, i) = s.divisors[i];
      if (!divisor_chain(s.divisors) || s.P * a * s.Q != d || abs(determinant(s.P)) != 1) ++bad;
    }
    o.expect(bad == 0, "Smith form divisor chains");

    for (const auto& f : {theta_e8, theta_a2, twist_filter(theta_a2, 5, 1, 2)}) {
      std::ostringstream os;
      write_sfex(os, f);
      std::istringstream is(os.str());
      const auto back = read_sfex(is);
      std::ostringstream again;
      write_sfex(again, back);
      if (!(back == f) || again.str() != os.str()) ++bad;
    }
    o.expect(bad == 0, "SFEX round trip");
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion check(s) failed") << '\n';
  return failures == 0 ? 0 : 1;
}
