#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "siegel/matrix.hpp"
#include "siegel/symmat.hpp"
#include "siegel/weylrep.hpp"

namespace siegel {

/// Level data carried as metadata; no analytic checks are made.
struct LevelSpec {
  Int N = 1;
  Int Nprime = 1;
  Int p_power = 1;
  int char_parity = 1;  // chi(-1)

  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

enum class MissingKeys { Zero, Error };

/// Keeps a(T) only where the doubled off-diagonal block (rows 0..n-r-1,
/// columns n-r..n-1) of T vanishes mod `modulus` (= p^t).
struct Twist {
  int r = 0;
  Int p = 0;
  int t = 0;
  Int modulus = 1;

  friend bool operator==(const Twist&, const Twist&) = default;
};

bool twist_admits(const Twist& twist, const HalfIntegralMatrix& t);

/// Truncated Fourier expansion stored at canonical keys.
///
/// The representation has degree `degree() + embed()`: a Phi-image of a
/// vector valued form keeps the original rep and acts through
/// blockdiag(I_embed, U).
class FourierExpansion {
 public:
  FourierExpansion() = default;
  FourierExpansion(int degree, RepPtr rep, LevelSpec level, Int modulus, Int trace_bound, int embed = 0);

  int degree() const { return n_; }
  const IntegralRep& rep() const { return *rep_; }
  const RepPtr& rep_ptr() const { return rep_; }
  int dimension() const { return rep_->dimension(); }
  int embed() const { return embed_; }
  const LevelSpec& level() const { return level_; }
  const Int& modulus() const { return modulus_; }
  const Int& trace_bound() const { return bound_; }
  const std::map<HalfIntegralMatrix, IntVector>& coefficients() const { return coeffs_; }
  const std::vector<Twist>& twists() const { return twists_; }
  MissingKeys missing_keys() const { return missing_; }

  void set_missing_keys(MissingKeys mode) { missing_ = mode; }
  void add_twist(const Twist& twist);
  /// Key must be canonical with trace <= bound; values are reduced mod modulus.
  void set(const HalfIntegralMatrix& key, IntVector value);
  const IntVector* find(const HalfIntegralMatrix& key) const;

  /// Rep matrix of blockdiag(I_embed, u) for u in GL(degree).
  IntMatrix rho(const IntMatrix& u) const;
  /// Reduce a vector mod the expansion modulus (identity when exact).
  IntVector reduce(IntVector v) const;

  friend bool operator==(const FourierExpansion& a, const FourierExpansion& b);

 private:
  int n_ = 0;
  RepPtr rep_;
  int embed_ = 0;
  LevelSpec level_;
  Int modulus_ = 0;
  Int bound_ = 0;
  std::map<HalfIntegralMatrix, IntVector> coeffs_;
  std::vector<Twist> twists_;
  MissingKeys missing_ = MissingKeys::Zero;
};

/// a(T) = chi(det U) rho(U^{-1}) a(T_can) where U T U^t = T_can.
IntVector get_coeff(const FourierExpansion& f, const HalfIntegralMatrix& t);

FourierExpansion rank_subseries(const FourierExpansion& f, int r);
std::map<HalfIntegralMatrix, IntVector> f0_extract(const FourierExpansion& f, int r);
FourierExpansion phi_operator(const FourierExpansion& f);
/// Twisted view of f for the block split (n-r, r); t = 0 returns f.
FourierExpansion twist_filter(const FourierExpansion& f, const Int& p, int t, int r);

struct JacobiSlice {
  HalfIntegralMatrix T;
  int r = 0;
  int n = 0;
  Int bound = 0;  // trace bound on S1
  Int modulus = 0;
  std::map<std::pair<HalfIntegralMatrix, IntMatrix>, IntVector> entries;  // (S1, 2 S2) -> value
};

/// All (S1, S2) with [[S1,S2],[S2^t,T]] PSD and trace <= B.
JacobiSlice jacobi_slice(const FourierExpansion& f, const HalfIntegralMatrix& t);
std::map<HalfIntegralMatrix, IntVector> collapse_z2(const JacobiSlice& slice);

bool is_zero_mod(const IntVector& v, const Int& modulus);
int rank_of_key(const HalfIntegralMatrix& t);

/// Largest rank of a key whose coefficient is nonzero mod p, or -1.
int p_rank(const FourierExpansion& f, const Int& p);
/// Rank r < n in the sense of mod p^m singularity within the trace bound.
std::optional<int> is_mod_singular(const FourierExpansion& f, const Int& p, int m);
/// Definite T of size r with f0 value nonzero mod p and minimal det(2T).
HalfIntegralMatrix minimal_det_witness(const FourierExpansion& f, const Int& p, int r);

/// Element of Z[zeta_q], q = p^t, as coefficients of 1, zeta, ..., zeta^{phi(q)-1}.
struct CyclotomicInt {
  Int p;
  int t = 1;
  IntVector coeffs;

  static CyclotomicInt zero(const Int& p, int t);
  static CyclotomicInt power_of_zeta(const Int& p, int t, const Int& k);
  CyclotomicInt& operator+=(const CyclotomicInt& o);
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
  std::optional<Int> as_integer() const;
};

/// sum over R in (Z/p^t)^{a x b} of zeta^{tr(R M^t)}, summed term by term.
CyclotomicInt exponential_sum_direct(const IntMatrix& m, const Int& p, int t);
/// The same sum evaluated as a product over matrix entries.
CyclotomicInt exponential_sum(const IntMatrix& m, const Int& p, int t);

}  // namespace siegel
