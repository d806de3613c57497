#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "siegel/matrix.hpp"

namespace siegel {

using SmallVector = std::vector<std::int64_t>;

/// All x in Z^m with x^t G x <= max_norm for a positive definite integer G,
/// sorted by (norm, lexicographic). Fincke-Pohst with long double bounds and
/// an exact int64 check at every leaf.
std::vector<SmallVector> short_vectors(const IntMatrix& gram, std::int64_t max_norm, bool include_zero = false);

std::int64_t small_norm(const std::vector<std::int64_t>& gram, int dim, const SmallVector& x);

/// Counts or visits X in Z^{m x n} with X^t G X = H, G positive definite (m x m),
/// H symmetric (n x n). Shells are precomputed up to `max_norm`; every target
/// diagonal entry must be <= max_norm.
class RepresentationCounter {
 public:
  RepresentationCounter(const IntMatrix& gram, std::int64_t max_norm);

  int dimension() const { return dim_; }
  std::int64_t max_norm() const { return max_norm_; }

  Int count(const IntMatrix& target) const;

  /// `columns[a]` is column a of X.
  void visit(const IntMatrix& target,
             const std::function<void(const std::vector<const SmallVector*>& columns)>& fn) const;

 private:
  int dim_;
  std::int64_t max_norm_;
  std::vector<std::int64_t> gram_;
  std::map<std::int64_t, std::vector<SmallVector>> shells_;        // norm -> vectors
  std::map<std::int64_t, std::vector<SmallVector>> shell_images_;  // norm -> G x
};

}  // namespace siegel
