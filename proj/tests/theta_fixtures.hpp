#pragma once

#include "siegel/theta.hpp"

namespace siegel::testing {

// Harmonic theta of A2 in degree n with the Aut(A2)-invariant degree 6 harmonic.
inline FourierExpansion sym6_theta(int n, const Int& bound) {
  const EvenLattice a2 = catalog("A2");
  const auto qs = invariant_harmonics(a2, 6);
  return poly_theta(a2, n, sym_power_coefficient(qs.at(0), n), bound);
}

// X^t G X = target by a box search, entries of X in [-b, b].
inline long box_count(const IntMatrix& gram, const IntMatrix& target, int b) {
  const int m = gram.rows(), n = target.rows();
  const int cells = m * n;
  IntMatrix x(m, n);
  std::vector<int> digits(cells, -b);
  long count = 0;
  while (true) {
    for (int k = 0; k < cells; ++k) x(k / n, k % n) = digits[k];
    if (x.transpose() * gram * x == target) ++count;
    int k = 0;
    while (k < cells && digits[k] == b) digits[k++] = -b;
    if (k == cells) break;
    ++digits[k];
  }
  return count;
}

}  // namespace siegel::testing
