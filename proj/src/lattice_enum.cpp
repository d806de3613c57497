#include "siegel/lattice_enum.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

std::int64_t small_norm(const std::vector<std::int64_t>& gram, int dim, const SmallVector& x) {
  std::int64_t s = 0;
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < dim; ++j) row += gram[i * dim + j] * x[j];
    s += x[i] * row;
  }
  return s;
}

std::vector<SmallVector> short_vectors(const IntMatrix& gram, std::int64_t max_norm, bool include_zero) {
  const int m = gram.rows();
  std::vector<SmallVector> out;
  if (max_norm < 0) return out;
  if (m == 0) {
    if (include_zero) out.emplace_back();
    return out;
  }
  std::vector<std::int64_t> g(static_cast<size_t>(m) * m);
  std::vector<long double> q(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      g[i * m + j] = to_int64(gram(i, j));
      q[i * m + j] = static_cast<long double>(g[i * m + j]);
    }
  for (int i = 0; i < m; ++i) {
    if (q[i * m + i] <= 0) throw Error(ErrorCode::NotDefinite, "short_vectors needs a definite form");
    for (int j = i + 1; j < m; ++j) {
      q[j * m + i] = q[i * m + j];
      q[i * m + j] /= q[i * m + i];
    }
    for (int k = i + 1; k < m; ++k)
      for (int l = k; l < m; ++l) q[k * m + l] -= q[k * m + i] * q[i * m + l];
  }

  const long double slack = 1e-9L * (1.0L + static_cast<long double>(max_norm));
  SmallVector x(m, 0);
  // Depth-first over coordinates m-1 .. 0.
  auto recurse = [&](auto&& self, int i, long double budget) -> void {
    long double center = 0;
    for (int j = i + 1; j < m; ++j) center -= q[i * m + j] * static_cast<long double>(x[j]);
    const long double radius = std::sqrt(std::max<long double>(0, budget + slack) / q[i * m + i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(center - radius - 1e-12L));
    const auto hi = static_cast<std::int64_t>(std::floor(center + radius + 1e-12L));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = v;
      const long double d = static_cast<long double>(v) - center;
      const long double rest = budget - q[i * m + i] * d * d;
      if (rest < -slack) continue;
      if (i == 0) {
        const std::int64_t nrm = small_norm(g, m, x);
        if (nrm <= max_norm && (include_zero || nrm > 0)) out.push_back(x);
      } else {
        self(self, i - 1, rest);
      }
    }
    x[i] = 0;
  };
  recurse(recurse, m - 1, static_cast<long double>(max_norm));

  std::vector<std::pair<std::int64_t, SmallVector>> keyed;
  keyed.reserve(out.size());
  for (auto& v : out) keyed.emplace_back(small_norm(g, m, v), std::move(v));
  std::sort(keyed.begin(), keyed.end());
  out.clear();
  for (auto& [n, v] : keyed) out.push_back(std::move(v));
  return out;
}

RepresentationCounter::RepresentationCounter(const IntMatrix& gram, std::int64_t max_norm)
    : dim_(gram.rows()), max_norm_(max_norm), gram_(static_cast<size_t>(dim_) * dim_) {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) gram_[i * dim_ + j] = to_int64(gram(i, j));
  for (auto& v : short_vectors(gram, max_norm, true)) {
    const std::int64_t nrm = small_norm(gram_, dim_, v);
    SmallVector image(dim_, 0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) image[i] += gram_[i * dim_ + j] * v[j];
    shells_[nrm].push_back(std::move(v));
    shell_images_[nrm].push_back(std::move(image));
  }
}

void RepresentationCounter::visit(const IntMatrix& target,
                                  const std::function<void(const std::vector<const SmallVector*>&)>& fn) const {
  const int n = target.rows();
  std::vector<std::int64_t> h(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h[a * n + b] = to_int64(target(a, b));
  for (int a = 0; a < n; ++a) {
    if (h[a * n + a] > max_norm_)
      throw Error(ErrorCode::OutOfBound, "target diagonal exceeds precomputed shell radius");
    if (h[a * n + a] < 0) return;
  }
  std::vector<const SmallVector*> cols(n, nullptr);
  std::vector<const SmallVector*> images(n, nullptr);
  auto recurse = [&](auto&& self, int a) -> void {
    if (a == n) {
      fn(cols);
      return;
    }
    auto it = shells_.find(h[a * n + a]);
    if (it == shells_.end()) return;
    const auto& vecs = it->second;
    const auto& imgs = shell_images_.at(it->first);
    for (size_t k = 0; k < vecs.size(); ++k) {
      const SmallVector& x = vecs[k];
      bool ok = true;
      for (int b = 0; b < a && ok; ++b) {
        std::int64_t ip = 0;
        const SmallVector& gy = *images[b];
        for (int i = 0; i < dim_; ++i) ip += x[i] * gy[i];
        ok = ip == h[b * n + a];
      }
      if (!ok) continue;
      cols[a] = &x;
      images[a] = &imgs[k];
      self(self, a + 1);
    }
  };
  recurse(recurse, 0);
}

Int RepresentationCounter::count(const IntMatrix& target) const {
  std::uint64_t c = 0;
  visit(target, [&](const std::vector<const SmallVector*>&) { ++c; });
  return Int(static_cast<unsigned long>(c));
}

}  // namespace siegel
