#pragma once

#include <memory>
#include <string>
#include <vector>

#include "siegel/matrix.hpp"

namespace siegel {

/// Non-increasing, non-negative integer tuple (k_1 >= ... >= k_n >= 0).
using HighestWeight = std::vector<int>;

/// Rows of a semistandard tableau; entries are 1-based row indices.
using Tableau = std::vector<std::vector<int>>;

void validate_weight(const HighestWeight& lambda);
HighestWeight parse_weight(const std::string& text);
std::string format_weight(const HighestWeight& lambda);

/// prod_{i<j} (l_i - l_j + j - i) / (j - i).
Int weyl_dimension(const HighestWeight& lambda);

/// Semistandard tableaux of shape `lambda` with entries <= n, ordered by
/// their row reading word.
std::vector<Tableau> semistandard_tableaux(const HighestWeight& lambda, int n);

/// Integral model of the polynomial representation of GL(n) with highest
/// weight lambda. Basis: bideterminants f_tau(Y) = prod over columns c of tau
/// of the minor of Y on rows c and columns 1..|c|. GL(n) acts by
/// (rho(g) f)(Y) = f(g^t Y); coordinates of a polynomial in the span are
/// recovered from its values at ell fixed integer points.
class IntegralRep {
 public:
  static std::shared_ptr<const IntegralRep> build(int n, HighestWeight lambda);

  int degree() const { return n_; }
  const HighestWeight& weight() const { return lambda_; }
  int dimension() const { return static_cast<int>(tableaux_.size()); }
  const std::vector<Tableau>& tableaux() const { return tableaux_; }
  bool is_scalar() const { return scalar_; }

  /// f_tau evaluated at the n x n matrix y.
  Int evaluate_basis(int index, const IntMatrix& y) const;

  /// Matrix of rho(u) in the bideterminant basis, columns are images of basis vectors.
  IntMatrix matrix(const IntMatrix& u) const;

 private:
  IntegralRep() = default;

  int n_ = 0;
  HighestWeight lambda_;
  bool scalar_ = false;
  std::vector<Tableau> tableaux_;
  std::vector<std::vector<std::vector<int>>> columns_;  // per tableau, per column: 0-based rows
  std::vector<IntMatrix> points_;
  IntMatrix inverse_numerator_;
  Int inverse_denominator_;
};

using RepPtr = std::shared_ptr<const IntegralRep>;

inline RepPtr build_rep(int n, HighestWeight lambda) { return IntegralRep::build(n, std::move(lambda)); }
inline IntMatrix rep_matrix(const IntegralRep& rep, const IntMatrix& u) { return rep.matrix(u); }
int scalar_weight(const IntegralRep& rep);

/// Saturated eigenlattice of rho(diag(1,..,x,..,1)), x at position `axis`,
/// for the eigenvalue x^weight.
struct GradedPiece {
  int weight = 0;
  IntMatrix basis;  // ell x d, columns primitive
};

std::vector<GradedPiece> weight_grading(const IntegralRep& rep, int axis = 0);

/// Unimodular basis a_1..a_ell of Z^ell and divisors alpha_1 | ... | alpha_d
/// with alpha_j a_j (j <= d) a basis of a given sublattice.
struct ElementaryDivisorBasis {
  IntMatrix full_basis;   // columns a_j
  IntMatrix to_basis;     // full_basis^{-1}
  IntVector divisors;
  int count = 0;
};

ElementaryDivisorBasis elementary_divisor_basis(const IntMatrix& sublattice_basis);

/// Coordinates of v in the basis a_1..a_ell.
IntVector coordinates(const ElementaryDivisorBasis& basis, const IntVector& v);

}  // namespace siegel
