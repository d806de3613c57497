#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/matrix.hpp"

namespace siegel {

/// Element T of Sym_n(Q) with integral diagonal and half-integral
/// off-diagonal entries, stored as the doubled Gram matrix G = 2T.
class HalfIntegralMatrix {
 public:
  HalfIntegralMatrix() = default;
  /// Throws InvalidArgument unless `doubled` is symmetric with even diagonal.
  explicit HalfIntegralMatrix(IntMatrix doubled);

  static HalfIntegralMatrix zero(int n);
  /// n(n+1)/2 entries of G, upper triangle row-major.
  static HalfIntegralMatrix from_upper_triangle(int n, const IntVector& entries);

  int degree() const { return doubled_.rows(); }
  const IntMatrix& doubled() const { return doubled_; }
  /// trace(T) = trace(G) / 2.
  Int trace() const;
  IntVector upper_triangle() const;

  /// U T U^t for an integer matrix U with `degree()` columns.
  HalfIntegralMatrix transform(const IntMatrix& u) const;

  friend bool operator==(const HalfIntegralMatrix&, const HalfIntegralMatrix&) = default;
  /// Degree, then trace, then the row-major entries of G.
  friend std::strong_ordering operator<=>(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b);

 private:
  IntMatrix doubled_;
};

std::string to_string(const HalfIntegralMatrix& t);

/// U T U^t = blockdiag(0_{n-r}, definite_part), U unimodular.
struct RadicalSplit {
  IntMatrix U;
  int rank = 0;
  HalfIntegralMatrix definite_part;
};

/// Canonical GL(n,Z)-orbit representative together with U, U T U^t = form.
struct CanonicalForm {
  HalfIntegralMatrix form;
  IntMatrix U;
};

bool is_psd(const HalfIntegralMatrix& a);
bool is_positive_definite(const HalfIntegralMatrix& a);
int rank(const HalfIntegralMatrix& a);

RadicalSplit radical_split(const HalfIntegralMatrix& a);

/// The radical goes to the leading block. The definite part is replaced by
/// the Gram matrix of the basis minimising, step by step, the key
/// (norm of b_j, -<b_1,b_j>, ..., -<b_{j-1},b_j>) over all bases of the
/// lattice; ties are resolved exhaustively, so the result is an orbit invariant.
CanonicalForm canonical(const HalfIntegralMatrix& a);

/// Backtracking isometry search on short vectors: U with U A U^t = B.
std::optional<IntMatrix> isometric(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b);

/// All U with U A U^t = A, sorted.
std::vector<IntMatrix> automorphisms(const HalfIntegralMatrix& a);

/// Every PSD matrix of degree n with trace <= bound, uses
/// (2t_ij)^2 <= (2t_ii)(2t_jj) to bound the off-diagonal entries.
std::vector<HalfIntegralMatrix> enumerate_raw(int n, const Int& trace_bound);

/// One canonical representative per GL(n,Z)-class of PSD matrices with
/// trace <= bound, sorted by (trace, key).
std::vector<HalfIntegralMatrix> enumerate_classes(int n, const Int& trace_bound);

HalfIntegralMatrix block_embed(const HalfIntegralMatrix& t, int n);

/// Columns: Hermite basis of {u in Z^r : 2T u = 0 mod p^t}.
IntMatrix sublattice_matrix(const HalfIntegralMatrix& t, const Int& p, int exponent);

/// R^t T R.
HalfIntegralMatrix gram_of_sublattice(const HalfIntegralMatrix& t, const IntMatrix& r);

HalfIntegralMatrix orthogonal_sum(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b);

}  // namespace siegel
