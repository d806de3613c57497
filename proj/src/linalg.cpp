#include "siegel/linalg.hpp"

#include <algorithm>

#include "siegel/error.hpp"

namespace siegel {

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

int rank(const IntMatrix& a) {
  IntMatrix m = a;
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  Int prev = 1;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(r, piv);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        Int v = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

namespace {

// Row operations mirrored on a transform V and its inverse.
struct RowTracker {
  IntMatrix& h;
  IntMatrix& v;
  IntMatrix& vinv;

  void add(int target, int source, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < h.cols(); ++j) h(target, j) += c * h(source, j);
    for (int j = 0; j < v.cols(); ++j) v(target, j) += c * v(source, j);
    for (int i = 0; i < vinv.rows(); ++i) vinv(i, source) -= c * vinv(i, target);
  }
  void swap(int a, int b) {
    h.swap_rows(a, b);
    v.swap_rows(a, b);
    vinv.swap_cols(a, b);
  }
  void negate(int a) {
    for (int j = 0; j < h.cols(); ++j) h(a, j) = -h(a, j);
    for (int j = 0; j < v.cols(); ++j) v(a, j) = -v(a, j);
    for (int i = 0; i < vinv.rows(); ++i) vinv(i, a) = -vinv(i, a);
  }
};

}  // namespace

HermiteForm row_hermite(const IntMatrix& a) {
  HermiteForm out;
  out.H = a;
  out.V = IntMatrix::identity(a.rows());
  out.V_inverse = IntMatrix::identity(a.rows());
  RowTracker ops{out.H, out.V, out.V_inverse};
  IntMatrix& h = out.H;
  const int m = h.rows(), n = h.cols();
  int r = 0;
  for (int j = 0; j < n && r < m; ++j) {
    while (true) {
      int best = -1;
      for (int i = r; i < m; ++i)
        if (h(i, j) != 0 && (best < 0 || abs(h(i, j)) < abs(h(best, j)))) best = i;
      if (best < 0) break;
      ops.swap(r, best);
      bool cleared = true;
      for (int i = r + 1; i < m; ++i) {
        if (h(i, j) == 0) continue;
        ops.add(i, r, -floor_div(h(i, j), h(r, j)));
        if (h(i, j) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, j) == 0) continue;
    if (h(r, j) < 0) ops.negate(r);
    for (int i = 0; i < r; ++i) ops.add(i, r, -floor_div(h(i, j), h(r, j)));
    out.pivots.push_back(j);
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const HermiteForm hf = row_hermite(a.transpose());
  const int n = a.cols();
  IntMatrix k(n, n - hf.rank);
  for (int i = hf.rank; i < n; ++i)
    for (int j = 0; j < n; ++j) k(j, i - hf.rank) = hf.V(i, j);
  return k;
}

IntMatrix column_hermite_basis(const IntMatrix& generators) {
  const HermiteForm hf = row_hermite(generators.transpose());
  return hf.H.block(0, 0, hf.rank, hf.H.cols()).transpose();
}

SmithForm smith_form(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  IntMatrix d = a;
  SmithForm out;
  out.P = IntMatrix::identity(m);
  out.P_inverse = IntMatrix::identity(m);
  out.Q = IntMatrix::identity(n);
  RowTracker rows{d, out.P, out.P_inverse};
  IntMatrix& q = out.Q;
  auto col_add = [&](int target, int source, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < m; ++i) d(i, target) += c * d(i, source);
    for (int i = 0; i < n; ++i) q(i, target) += c * q(i, source);
  };
  auto col_swap = [&](int x, int y) {
    d.swap_cols(x, y);
    q.swap_cols(x, y);
  };

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (d(i, j) != 0 && (bi < 0 || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      rows.swap(t, bi);
      col_swap(t, bj);
      bool changed = false;
      for (int i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        rows.add(i, t, -floor_div(d(i, t), d(t, t)));
        if (d(i, t) != 0) changed = true;
      }
      for (int j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -floor_div(d(t, j), d(t, t)));
        if (d(t, j) != 0) changed = true;
      }
      if (changed) continue;
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      rows.add(t, bad, 1);
    }
    if (d(t, t) < 0) rows.negate(t);
  }
  out.divisors.resize(steps);
  for (int t = 0; t < steps; ++t) out.divisors[t] = d(t, t);
  return out;
}

std::optional<RationalInverse> solve_rational(const IntMatrix& a, const IntMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw Error(ErrorCode::InvalidArgument, "solve: shape mismatch");
  const int n = a.rows(), k = b.cols();
  std::vector<mpq_class> m(static_cast<size_t>(n) * (n + k));
  auto at = [&](int i, int j) -> mpq_class& { return m[static_cast<size_t>(i) * (n + k) + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = a(i, j);
    for (int j = 0; j < k; ++j) at(i, n + j) = b(i, j);
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int j = 0; j < n + k; ++j) std::swap(at(c, j), at(piv, j));
    const mpq_class inv = 1 / at(c, c);
    for (int j = c; j < n + k; ++j) at(c, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || at(i, c) == 0) continue;
      const mpq_class f = at(i, c);
      for (int j = c; j < n + k; ++j) at(i, j) -= f * at(c, j);
    }
  }
  Int den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) den = lcm(den, at(i, n + j).get_den());
  RationalInverse out{IntMatrix(n, k), den};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      const mpq_class& x = at(i, n + j);
      out.numerator(i, j) = x.get_num() * (den / x.get_den());
    }
  return out;
}

RationalInverse rational_inverse(const IntMatrix& a) {
  auto r = solve_rational(a, IntMatrix::identity(a.rows()));
  if (!r) throw Error(ErrorCode::NotFullRank, "matrix is singular");
  return *r;
}

std::optional<IntMatrix> integer_inverse(const IntMatrix& a) {
  auto r = solve_rational(a, IntMatrix::identity(a.rows()));
  if (!r || r->denominator != 1) return std::nullopt;
  return r->numerator;
}

}  // namespace siegel
