#pragma once

#include <optional>
#include <vector>

#include "siegel/matrix.hpp"

namespace siegel {

Int determinant(const IntMatrix& a);
int rank(const IntMatrix& a);

/// Row-style Hermite normal form: V * A = H with V unimodular.
/// The first `rank` rows of H are nonzero with positive pivots in columns
/// `pivots`; entries above each pivot lie in [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix V;
  IntMatrix V_inverse;
  int rank = 0;
  std::vector<int> pivots;
};

HermiteForm row_hermite(const IntMatrix& a);

/// Columns form a basis of the saturated lattice {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Column Hermite basis of the lattice spanned by the columns of `generators`.
/// Zero columns are dropped.
IntMatrix column_hermite_basis(const IntMatrix& generators);

/// P * A * Q = D with P, Q unimodular and D diagonal, d_1 | d_2 | ...,
/// all d_i >= 0.
struct SmithForm {
  IntVector divisors;  // min(rows, cols) entries of the diagonal
  IntMatrix P;
  IntMatrix P_inverse;
  IntMatrix Q;
};

SmithForm smith_form(const IntMatrix& a);

/// A^{-1} = numerator / denominator with denominator > 0.
struct RationalInverse {
  IntMatrix numerator;
  Int denominator;
};

RationalInverse rational_inverse(const IntMatrix& a);

/// Inverse of a unimodular matrix; empty when A is not invertible over Z.
std::optional<IntMatrix> integer_inverse(const IntMatrix& a);

/// Solve A X = B over Q; returns X = numerator / denominator, or empty if A is singular.
std::optional<RationalInverse> solve_rational(const IntMatrix& a, const IntMatrix& b);

}  // namespace siegel
