#include "siegel/congruence.hpp"

#include "siegel/error.hpp"
#include "siegel/lattice_enum.hpp"
#include "siegel/linalg.hpp"

namespace siegel {

Int theorem_modulus(const Int& p, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  return (p - 1) * power(p, m - 1);
}

bool theorem_check(const Int& k, int r, const Int& p, int m) {
  return mod_nonneg(2 * k - r, theorem_modulus(p, m)) == 0;
}

std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass:
      return "PASS";
    case ReportStatus::Contradiction:
      return "CONTRADICTION";
    case ReportStatus::NotSingular:
      return "NOT_SINGULAR";
    case ReportStatus::Trivial:
      return "TRIVIAL";
  }
  return "?";
}

namespace {

IntVector residues(IntVector v, const Int& modulus) {
  for (auto& x : v) x = mod_nonneg(x, modulus);
  return v;
}

struct SingularSetup {
  int r = 0;
  HalfIntegralMatrix T;
  IntVector a0;
};

SingularSetup singular_setup(const FourierExpansion& f, const Int& p, int m) {
  const auto sr = is_mod_singular(f, p, m);
  if (!sr) throw Error(ErrorCode::NoWitness, "expansion is not mod p^m singular within its trace bound");
  SingularSetup s;
  s.r = *sr;
  s.T = minimal_det_witness(f, p, s.r);
  s.a0 = get_coeff(f, block_embed(s.T, f.degree()));
  return s;
}

// Number of X in Z^{r x s} with X^t G X = target, G positive definite r x r.
class GramCounter {
 public:
  GramCounter(const HalfIntegralMatrix& r, const Int& trace_bound) : r_(r.degree()) {
    if (r_ > 0) counter_.emplace(r.doubled(), std::max<std::int64_t>(0, 2 * to_int64(trace_bound)));
  }
  Int count(const HalfIntegralMatrix& s1) const {
    if (r_ == 0) return s1.doubled().is_zero() ? 1 : 0;
    return counter_->count(s1.doubled());
  }

 private:
  int r_;
  std::optional<RepresentationCounter> counter_;
};

}  // namespace

SingularityReport report(const FourierExpansion& f, const Int& p, int m) {
  SingularityReport rep;
  rep.p = p;
  rep.m = m;
  rep.trace_bound = f.trace_bound();
  rep.modulus = theorem_modulus(p, m);
  rep.weight = scalar_weight(f.rep());
  rep.singular_rank = is_mod_singular(f, p, m);
  rep.p_rank = p_rank(f, p);
  const Int pm = power(p, m);

  int top = -1;
  std::optional<HalfIntegralMatrix> top_key;
  for (const auto& [key, value] : f.coefficients()) {
    const IntVector v = get_coeff(f, key);
    if (!is_zero_mod(v, pm) && rank_of_key(key) > top) {
      top = rank_of_key(key);
      top_key = key;
    }
  }
  if (top < 0) {
    rep.status = ReportStatus::Trivial;
    return rep;
  }
  if (rep.singular_rank) {
    const int r = *rep.singular_rank;
    rep.lhs = 2 * rep.weight - r;
    rep.theorem_holds = theorem_check(rep.weight, r, p, m);
    rep.status = *rep.theorem_holds ? ReportStatus::Pass : ReportStatus::Contradiction;
    const HalfIntegralMatrix w = minimal_det_witness(f, p, r);
    rep.witnesses.push_back({w, residues(get_coeff(f, block_embed(w, f.degree())), pm)});
  } else {
    rep.status = ReportStatus::NotSingular;
    rep.witnesses.push_back({*top_key, residues(get_coeff(f, *top_key), pm)});
  }
  return rep;
}

int choose_t(const HalfIntegralMatrix& t, const Int& p, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  const int r = t.degree();
  if (r == 0) return m;
  if (!is_positive_definite(t)) throw Error(ErrorCode::NotDefinite, to_string(t));
  int e = 0;
  for (const auto& d : smith_form(t.doubled()).divisors) e = std::max(e, valuation(d, p));
  const int chosen = m + e;
  const Int pm = power(p, m);
  const IntMatrix sub = sublattice_matrix(t, p, chosen);
  for (const auto& x : sub.data())
    if (!mpz_divisible_p(x.get_mpz_t(), pm.get_mpz_t()))
      throw Error(ErrorCode::InvalidArgument, "sublattice for t = " + std::to_string(chosen) + " is not divisible by p^m");
  return chosen;
}

SliceCheck identity1_check(const FourierExpansion& f, const Int& p, int m) {
  const SingularSetup s = singular_setup(f, p, m);
  const int n = f.degree();
  const int top = n - s.r;
  const Int pm = power(p, m);
  const JacobiSlice slice = jacobi_slice(f, s.T);

  SliceCheck out;
  out.witness = s.T;
  out.r = s.r;
  out.effective_bound = slice.bound;
  std::optional<RationalInverse> inv;
  if (s.r > 0) inv = rational_inverse(s.T.doubled());

  for (const auto& [key, value] : slice.entries) {
    const auto& [s1, s2] = key;
    IntVector expected(value.size(), 0);
    bool on_support = false;
    IntMatrix u(top, s.r);
    if (s.r == 0) {
      on_support = s1.doubled().is_zero();
    } else {
      const IntMatrix num = s2 * inv->numerator;
      on_support = true;
      for (int i = 0; i < top && on_support; ++i)
        for (int j = 0; j < s.r; ++j) {
          if (!mpz_divisible_p(num(i, j).get_mpz_t(), inv->denominator.get_mpz_t())) {
            on_support = false;
            break;
          }
          u(i, j) = num(i, j) / inv->denominator;
        }
      if (on_support) on_support = u * s.T.doubled() * u.transpose() == s1.doubled();
    }
    if (on_support) {
      IntMatrix big = IntMatrix::identity(n);
      big.set_block(0, top, u);
      expected = f.rho(big) * s.a0;
    }
    ++out.checked;
    IntVector diff(value.size());
    for (size_t i = 0; i < value.size(); ++i) diff[i] = value[i] - expected[i];
    if (!is_zero_mod(diff, pm)) {
      out.holds = false;
      out.counterexamples.push_back(key);
    }
  }
  return out;
}

namespace {

struct TwistedCollapse {
  SingularSetup setup;
  int t = 0;
  HalfIntegralMatrix R;
  Int bound;
  std::map<HalfIntegralMatrix, IntVector> collapsed;
};

TwistedCollapse twisted_collapse(const FourierExpansion& f, const Int& p, int m, int t_override) {
  TwistedCollapse tc;
  tc.setup = singular_setup(f, p, m);
  tc.t = t_override > 0 ? t_override : choose_t(tc.setup.T, p, m);
  const FourierExpansion twisted = twist_filter(f, p, tc.t, tc.setup.r);
  const JacobiSlice slice = jacobi_slice(twisted, tc.setup.T);
  tc.bound = slice.bound;
  tc.collapsed = collapse_z2(slice);
  tc.R = tc.setup.r == 0 ? HalfIntegralMatrix::zero(0)
                         : gram_of_sublattice(tc.setup.T, sublattice_matrix(tc.setup.T, p, tc.t));
  return tc;
}

}  // namespace

SliceCheck identity3_check(const FourierExpansion& f, const Int& p, int m, int t_override) {
  const TwistedCollapse tc = twisted_collapse(f, p, m, t_override);
  const Int pm = power(p, m);
  SliceCheck out;
  out.witness = tc.setup.T;
  out.r = tc.setup.r;
  out.t = tc.t;
  out.effective_bound = tc.bound;
  const GramCounter counter(tc.R, std::max(tc.bound, Int(0)));
  for (const auto& [s1, value] : tc.collapsed) {
    const Int count = counter.count(s1);
    IntVector diff(value.size());
    for (size_t i = 0; i < value.size(); ++i) diff[i] = value[i] - count * tc.setup.a0[i];
    ++out.checked;
    if (!is_zero_mod(diff, pm)) {
      out.holds = false;
      out.counterexamples.emplace_back(s1, IntMatrix());
    }
  }
  return out;
}

Extraction scalar_extraction(const FourierExpansion& f, const Int& p, int m, int t_override) {
  const TwistedCollapse tc = twisted_collapse(f, p, m, t_override);
  const int n = f.degree();
  if (n != tc.setup.r + 1) throw Error(ErrorCode::InvalidArgument, "scalar extraction needs n = r + 1");

  const int k = scalar_weight(f.rep());
  const auto pieces = weight_grading(f.rep(), f.embed());
  const GradedPiece* piece = nullptr;
  for (const auto& pc : pieces)
    if (pc.weight == k) piece = &pc;
  if (!piece) throw Error(ErrorCode::InvalidArgument, "representation has no piece of weight " + std::to_string(k));

  Extraction ex;
  ex.witness = tc.setup.T;
  ex.R = tc.R;
  ex.t = tc.t;
  const ElementaryDivisorBasis basis = elementary_divisor_basis(piece->basis);
  ex.alphas = basis.divisors;
  const IntVector coords = coordinates(basis, tc.setup.a0);
  const Int pm = power(p, m);
  for (int j = basis.count; j < static_cast<int>(coords.size()); ++j)
    if (!mpz_divisible_p(coords[j].get_mpz_t(), pm.get_mpz_t()))
      throw Error(ErrorCode::InvalidArgument, "witness coefficient lies outside the weight piece");
  ex.betas.assign(coords.begin(), coords.begin() + basis.count);
  for (int j = 0; j < basis.count; ++j)
    if (!mpz_divisible_p(coords[j].get_mpz_t(), p.get_mpz_t())) {
      ex.j0 = j;
      break;
    }
  if (ex.j0 < 0) throw Error(ErrorCode::NoUnitCoordinate, "every coordinate of the witness coefficient vanishes mod p");
  ex.c = coords[ex.j0];

  ex.effective_bound = std::max<std::int64_t>(-1, to_int64(tc.bound));
  ex.g.bound = ex.effective_bound;
  for (const auto& [s1, value] : tc.collapsed) {
    const Int gj = coordinates(basis, value)[ex.j0];
    if (gj != 0) ex.g.coeffs[to_int64(s1.doubled()(0, 0)) / 2] = gj;
  }
  ex.theta = theta_qseries(tc.R, ex.effective_bound);
  ex.verdict = q_congruent(ex.g, q_scale(ex.theta, ex.c), p, 1, ex.effective_bound);
  return ex;
}

bool square_compare(const QSeries& g, const HalfIntegralMatrix& r, const Int& c, const Int& p, int m, std::int64_t bound) {
  const QSeries lhs = q_mul(g, g);
  const QSeries rhs = q_scale(theta_qseries(orthogonal_sum(r, r), bound), c * c);
  return q_congruent(lhs, rhs, p, m, bound);
}

bool PipelineResult::passed() const {
  if (report.status != ReportStatus::Pass) return false;
  if (identity1 && !identity1->holds) return false;
  if (identity3 && !identity3->holds) return false;
  if (extraction && !extraction->verdict) return false;
  if (square && !*square) return false;
  return true;
}

PipelineResult pipeline(const FourierExpansion& f, const Int& p, int m, int t_override) {
  PipelineResult res;
  res.report = report(f, p, m);
  if (!res.report.singular_rank) {
    res.skipped = res.report.status == ReportStatus::Trivial ? "expansion vanishes mod p^m" : "not singular";
    return res;
  }
  res.identity1 = identity1_check(f, p, m);
  res.identity3 = identity3_check(f, p, m, t_override);
  if (f.degree() == *res.report.singular_rank + 1) {
    res.extraction = scalar_extraction(f, p, m, t_override);
    res.square = square_compare(res.extraction->g, res.extraction->R, res.extraction->c, p, 1,
                                res.extraction->effective_bound);
  } else {
    res.skipped = "scalar extraction needs n = r + 1";
  }
  return res;
}

}  // namespace siegel
