#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/expansion.hpp"
#include "siegel/theta.hpp"

namespace siegel {

/// (2k - r) = 0 mod (p-1) p^{m-1}.
bool theorem_check(const Int& k, int r, const Int& p, int m);
Int theorem_modulus(const Int& p, int m);

enum class ReportStatus {
  Pass,           // singular of rank r < n and the congruence holds
  Contradiction,  // singular within the bound but the congruence fails
  NotSingular,
  Trivial,        // every coefficient vanishes mod p^m
};

std::string to_string(ReportStatus s);

struct Witness {
  HalfIntegralMatrix T;
  IntVector residues;
};

struct SingularityReport {
  Int p;
  int m = 1;
  Int trace_bound;
  int p_rank = -1;
  std::optional<int> singular_rank;
  Int weight;  // scalar weight k
  Int lhs;     // 2k - r when singular
  Int modulus;
  std::optional<bool> theorem_holds;
  ReportStatus status = ReportStatus::NotSingular;
  std::vector<Witness> witnesses;
};

SingularityReport report(const FourierExpansion& f, const Int& p, int m);

/// t = m + max v_p(elementary divisors of 2T); checks that the sublattice
/// matrix for this t is divisible by p^m.
int choose_t(const HalfIntegralMatrix& t, const Int& p, int m);

struct SliceCheck {
  bool holds = true;
  HalfIntegralMatrix witness;
  int r = 0;
  int t = 0;
  Int effective_bound;  // trace bound on S1
  long checked = 0;
  std::vector<std::pair<HalfIntegralMatrix, IntMatrix>> counterexamples;  // (S1, 2 S2) or (S1, empty)
};

/// The slice at the witness T is supported mod p^m on S = (u T u^t, u T),
/// where it equals rho([[1,u],[0,1]]) a(blockdiag(0,T)).
SliceCheck identity1_check(const FourierExpansion& f, const Int& p, int m);

/// After the partial twist with t = choose_t, the collapsed slice equals
/// theta of R^t T R times a(blockdiag(0,T)) mod p^m. A nonzero t_override replaces t.
SliceCheck identity3_check(const FourierExpansion& f, const Int& p, int m, int t_override = 0);

struct Extraction {
  int j0 = -1;
  Int c;
  IntVector alphas;
  IntVector betas;  // coordinates of a(blockdiag(0,T)), equal to beta_j alpha_j
  HalfIntegralMatrix witness;
  HalfIntegralMatrix R;  // R^t T R
  int t = 0;
  QSeries g;
  QSeries theta;
  std::int64_t effective_bound = 0;
  bool verdict = false;
};

/// Needs n = r + 1. Decomposes the collapsed slice in an elementary divisor
/// basis adapted to the weight-k piece of the representation.
Extraction scalar_extraction(const FourierExpansion& f, const Int& p, int m, int t_override = 0);

/// g^2 = c^2 theta_{R + R} mod p^m up to `bound`.
bool square_compare(const QSeries& g, const HalfIntegralMatrix& r, const Int& c, const Int& p, int m, std::int64_t bound);

struct PipelineResult {
  SingularityReport report;
  std::optional<SliceCheck> identity1;
  std::optional<SliceCheck> identity3;
  std::optional<Extraction> extraction;
  std::optional<bool> square;
  std::string skipped;  // reason when the identities were not run
  bool passed() const;
};

PipelineResult pipeline(const FourierExpansion& f, const Int& p, int m, int t_override = 0);

}  // namespace siegel
