#include "siegel/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/lattice_enum.hpp"
#include "siegel/linalg.hpp"

namespace siegel {

HalfIntegralMatrix::HalfIntegralMatrix(IntMatrix doubled) : doubled_(std::move(doubled)) {
  if (!doubled_.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "doubled Gram matrix must be symmetric");
  for (int i = 0; i < doubled_.rows(); ++i)
    if (!mpz_even_p(doubled_(i, i).get_mpz_t()))
      throw Error(ErrorCode::InvalidArgument, "doubled Gram matrix must have even diagonal");
}

HalfIntegralMatrix HalfIntegralMatrix::zero(int n) { return HalfIntegralMatrix(IntMatrix(n, n)); }

HalfIntegralMatrix HalfIntegralMatrix::from_upper_triangle(int n, const IntVector& entries) {
  if (n < 0 || entries.size() != static_cast<size_t>(n) * (n + 1) / 2)
    throw Error(ErrorCode::InvalidArgument, "expected n(n+1)/2 upper-triangle entries");
  IntMatrix g(n, n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      g(i, j) = entries[k];
      g(j, i) = entries[k];
      ++k;
    }
  return HalfIntegralMatrix(std::move(g));
}

Int HalfIntegralMatrix::trace() const {
  Int s = 0;
  for (int i = 0; i < degree(); ++i) s += doubled_(i, i);
  return s / 2;
}

IntVector HalfIntegralMatrix::upper_triangle() const {
  IntVector out;
  for (int i = 0; i < degree(); ++i)
    for (int j = i; j < degree(); ++j) out.push_back(doubled_(i, j));
  return out;
}

HalfIntegralMatrix HalfIntegralMatrix::transform(const IntMatrix& u) const {
  return HalfIntegralMatrix(u * doubled_ * u.transpose());
}

std::strong_ordering operator<=>(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const int t = cmp(a.trace(), b.trace());
  if (t != 0) return t < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.doubled() <=> b.doubled();
}

std::string to_string(const HalfIntegralMatrix& t) {
  std::ostringstream ss;
  ss << "2T=" << t.doubled();
  return ss.str();
}

bool is_psd(const HalfIntegralMatrix& a) {
  const int n = a.degree();
  const IntMatrix& g = a.doubled();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    IntMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = g(idx[i], idx[j]);
    if (determinant(sub) < 0) return false;
  }
  return true;
}

bool is_positive_definite(const HalfIntegralMatrix& a) {
  for (int k = 1; k <= a.degree(); ++k)
    if (determinant(a.doubled().block(0, 0, k, k)) <= 0) return false;
  return true;
}

int rank(const HalfIntegralMatrix& a) { return rank(a.doubled()); }

RadicalSplit radical_split(const HalfIntegralMatrix& a) {
  if (!is_psd(a)) throw Error(ErrorCode::NotPsd, to_string(a));
  const int n = a.degree();
  const HermiteForm hf = row_hermite(a.doubled());
  const int r = hf.rank;
  IntMatrix u(n, n);
  // Radical rows (zero rows of H) first.
  for (int i = r; i < n; ++i)
    for (int j = 0; j < n; ++j) u(i - r, j) = hf.V(i, j);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) u(n - r + i, j) = hf.V(i, j);
  const IntMatrix g = u * a.doubled() * u.transpose();
  return RadicalSplit{std::move(u), r, HalfIntegralMatrix(g.block(n - r, n - r, r, r))};
}

namespace {

// Nearest integer to a / b, b > 0.
Int round_div(const Int& a, const Int& b) { return floor_div(2 * a + b, 2 * b); }

// Pairwise size reduction; returns basis rows B with B G B^t reduced.
IntMatrix greedy_reduce(const IntMatrix& gram) {
  const int r = gram.rows();
  IntMatrix basis = IntMatrix::identity(r);
  IntMatrix g = gram;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (i == j || 2 * abs(g(i, j)) <= g(j, j)) continue;
        const Int q = round_div(g(i, j), g(j, j));
        for (int c = 0; c < r; ++c) basis(i, c) -= q * basis(j, c);
        g = basis * gram * basis.transpose();
        changed = true;
      }
  }
  return basis;
}

std::int64_t small_det(std::vector<std::vector<std::int64_t>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  __int128 prev = 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          s = i;
          break;
        }
      if (s < 0) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

// Rows extend to a basis of Z^r iff the gcd of the maximal minors is 1.
bool extends_to_basis(const std::vector<const SmallVector*>& rows, int r) {
  const int j = static_cast<int>(rows.size());
  std::int64_t g = 0;
  std::vector<int> cols(j);
  std::vector<bool> pick(r, false);
  std::fill(pick.end() - j, pick.end(), true);
  do {
    int k = 0;
    for (int c = 0; c < r; ++c)
      if (pick[c]) cols[k++] = c;
    std::vector<std::vector<std::int64_t>> m(j, std::vector<std::int64_t>(j));
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) m[a][b] = (*rows[a])[cols[b]];
    g = std::gcd(g, small_det(std::move(m)));
    if (g == 1) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return g == 1;
}

// Canonical basis search on a reduced definite Gram matrix.
IntMatrix canonical_basis(const IntMatrix& gram) {
  const int r = gram.rows();
  std::vector<std::int64_t> g(static_cast<size_t>(r) * r);
  std::int64_t bound = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) g[i * r + j] = to_int64(gram(i, j));
    bound = std::max(bound, g[i * r + i]);
  }
  while (true) {
    const std::vector<SmallVector> vecs = short_vectors(gram, bound);
    std::vector<std::int64_t> norms;
    std::vector<SmallVector> images;
    for (const auto& v : vecs) {
      norms.push_back(small_norm(g, r, v));
      SmallVector im(r, 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) im[i] += g[i * r + j] * v[j];
      images.push_back(std::move(im));
    }

    std::vector<std::vector<int>> prefixes{{}};
    bool stuck = false;
    for (int layer = 0; layer < r && !stuck; ++layer) {
      std::vector<std::int64_t> best;
      std::vector<std::vector<int>> next;
      for (const auto& prefix : prefixes) {
        std::vector<const SmallVector*> rows;
        for (int idx : prefix) rows.push_back(&vecs[idx]);
        rows.push_back(nullptr);
        for (size_t k = 0; k < vecs.size(); ++k) {
          if (!best.empty() && norms[k] > best[0]) break;
          std::vector<std::int64_t> key{norms[k]};
          for (int idx : prefix) {
            std::int64_t ip = 0;
            for (int i = 0; i < r; ++i) ip += vecs[k][i] * images[idx][i];
            key.push_back(-ip);
          }
          if (!best.empty() && best < key) continue;
          rows.back() = &vecs[k];
          if (!extends_to_basis(rows, r)) continue;
          if (best.empty() || key < best) {
            best = key;
            next.clear();
          }
          auto extended = prefix;
          extended.push_back(static_cast<int>(k));
          next.push_back(std::move(extended));
        }
      }
      if (next.empty()) stuck = true;
      prefixes = std::move(next);
    }
    if (stuck) {
      bound *= 2;
      continue;
    }
    IntMatrix basis(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) basis(i, j) = static_cast<long>(vecs[prefixes.front()[i]][j]);
    return basis;
  }
}

}  // namespace

CanonicalForm canonical(const HalfIntegralMatrix& a) {
  const RadicalSplit split = radical_split(a);
  const int n = a.degree(), r = split.rank;
  IntMatrix inner = IntMatrix::identity(r);
  if (r > 0) {
    const IntMatrix& d = split.definite_part.doubled();
    const IntMatrix reduce = greedy_reduce(d);
    inner = canonical_basis(reduce * d * reduce.transpose()) * reduce;
  }
  IntMatrix u = block_diagonal(IntMatrix::identity(n - r), inner) * split.U;
  HalfIntegralMatrix form = a.transform(u);
  return CanonicalForm{std::move(form), std::move(u)};
}

namespace {

// Enumerates U with U A U^t = B (doubled Grams, both definite).
void search_isometries(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b, bool all,
                       std::vector<IntMatrix>& found) {
  const int n = a.degree();
  if (b.degree() != n) return;
  if (!is_positive_definite(a) || !is_positive_definite(b))
    throw Error(ErrorCode::NotDefinite, "isometry search needs definite forms");
  if (determinant(a.doubled()) != determinant(b.doubled())) return;
  if (n == 0) {
    found.emplace_back(0, 0);
    return;
  }
  const IntMatrix& ga = a.doubled();
  const IntMatrix& gb = b.doubled();
  std::int64_t max_norm = 0;
  for (int i = 0; i < n; ++i) max_norm = std::max(max_norm, to_int64(gb(i, i)));
  std::vector<std::int64_t> g(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = to_int64(ga(i, j));
  const auto vecs = short_vectors(ga, max_norm);
  std::vector<std::int64_t> norms;
  for (const auto& v : vecs) norms.push_back(small_norm(g, n, v));

  std::vector<int> chosen(n, -1);
  auto recurse = [&](auto&& self, int i) -> bool {
    if (i == n) {
      IntMatrix u(n, n);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) u(x, y) = static_cast<long>(vecs[chosen[x]][y]);
      found.push_back(std::move(u));
      return !all;
    }
    const std::int64_t target = to_int64(gb(i, i));
    for (size_t k = 0; k < vecs.size(); ++k) {
      if (norms[k] != target) continue;
      bool ok = true;
      for (int prev = 0; prev < i && ok; ++prev) {
        std::int64_t ip = 0;
        const auto& w = vecs[chosen[prev]];
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) ip += w[x] * g[x * n + y] * vecs[k][y];
        ok = ip == to_int64(gb(prev, i));
      }
      if (!ok) continue;
      chosen[i] = static_cast<int>(k);
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  recurse(recurse, 0);
}

}  // namespace

std::optional<IntMatrix> isometric(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) {
  std::vector<IntMatrix> found;
  search_isometries(a, b, false, found);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<IntMatrix> automorphisms(const HalfIntegralMatrix& a) {
  std::vector<IntMatrix> found;
  search_isometries(a, a, true, found);
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<HalfIntegralMatrix> enumerate_raw(int n, const Int& trace_bound) {
  std::vector<HalfIntegralMatrix> out;
  if (trace_bound < 0) return out;
  const std::int64_t bound = to_int64(trace_bound);
  IntMatrix g(n, n);
  std::vector<std::pair<int, int>> off;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off.emplace_back(i, j);

  auto fill_off = [&](auto&& self, size_t k) -> void {
    if (k == off.size()) {
      HalfIntegralMatrix t(g);
      if (is_psd(t)) out.push_back(std::move(t));
      return;
    }
    const auto [i, j] = off[k];
    const long prod = g(i, i).get_si() * g(j, j).get_si();
    long lim = static_cast<long>(std::sqrt(static_cast<double>(prod)));
    while (lim * lim > prod) --lim;
    while ((lim + 1) * (lim + 1) <= prod) ++lim;
    for (long v = -lim; v <= lim; ++v) {
      g(i, j) = v;
      g(j, i) = v;
      self(self, k + 1);
    }
    g(i, j) = 0;
    g(j, i) = 0;
  };
  auto fill_diag = [&](auto&& self, int i, std::int64_t remaining) -> void {
    if (i == n) {
      fill_off(fill_off, 0);
      return;
    }
    for (std::int64_t t = 0; t <= remaining; ++t) {
      g(i, i) = static_cast<long>(2 * t);
      self(self, i + 1, remaining - t);
    }
    g(i, i) = 0;
  };
  fill_diag(fill_diag, 0, bound);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HalfIntegralMatrix> enumerate_classes(int n, const Int& trace_bound) {
  std::set<HalfIntegralMatrix> classes;
  for (const auto& t : enumerate_raw(n, trace_bound)) {
    CanonicalForm c = canonical(t);
    if (c.form.trace() > t.trace())
      throw Error(ErrorCode::InvalidArgument, "canonical representative has larger trace than " + to_string(t));
    classes.insert(std::move(c.form));
  }
  return {classes.begin(), classes.end()};
}

HalfIntegralMatrix block_embed(const HalfIntegralMatrix& t, int n) {
  const int r = t.degree();
  if (r > n) throw Error(ErrorCode::InvalidArgument, "block_embed: r > n");
  return HalfIntegralMatrix(block_diagonal(IntMatrix(n - r, n - r), t.doubled()));
}

IntMatrix sublattice_matrix(const HalfIntegralMatrix& t, const Int& p, int exponent) {
  const int r = t.degree();
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  if (rank(t) != r) throw Error(ErrorCode::NotFullRank, to_string(t));
  if (r == 0) return IntMatrix(0, 0);
  const Int q = power(p, exponent);
  // Solutions (u, w) of 2T u - p^t w = 0.
  IntMatrix stacked(r, 2 * r);
  stacked.set_block(0, 0, t.doubled());
  for (int i = 0; i < r; ++i) stacked(i, r + i) = -q;
  const IntMatrix kernel = integer_kernel(stacked);
  return column_hermite_basis(kernel.block(0, 0, r, kernel.cols()));
}

HalfIntegralMatrix gram_of_sublattice(const HalfIntegralMatrix& t, const IntMatrix& r) {
  return HalfIntegralMatrix(r.transpose() * t.doubled() * r);
}

HalfIntegralMatrix orthogonal_sum(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) {
  return HalfIntegralMatrix(block_diagonal(a.doubled(), b.doubled()));
}

}  // namespace siegel
