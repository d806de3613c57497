#include "siegel/weylrep.hpp"

#include <cctype>
#include <map>
#include <random>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/linalg.hpp"

namespace siegel {

void validate_weight(const HighestWeight& lambda) {
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0) throw Error(ErrorCode::InvalidWeight, "negative entry in " + format_weight(lambda));
    if (i > 0 && lambda[i] > lambda[i - 1])
      throw Error(ErrorCode::InvalidWeight, "weight must be non-increasing: " + format_weight(lambda));
  }
}

HighestWeight parse_weight(const std::string& text) {
  HighestWeight out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidWeight, "cannot parse weight '" + text + "'");
    }
  }
  validate_weight(out);
  return out;
}

std::string format_weight(const HighestWeight& lambda) {
  std::string s;
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(lambda[i]);
  }
  return s;
}

Int weyl_dimension(const HighestWeight& lambda) {
  Int num = 1, den = 1;
  const int n = static_cast<int>(lambda.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= lambda[i] - lambda[j] + j - i;
      den *= j - i;
    }
  return num / den;
}

std::vector<Tableau> semistandard_tableaux(const HighestWeight& lambda, int n) {
  validate_weight(lambda);
  std::vector<Tableau> out;
  Tableau t;
  for (int len : lambda)
    if (len > 0) t.emplace_back(len, 0);
  if (static_cast<int>(t.size()) > n) return out;
  auto fill = [&](auto&& self, size_t row, int col) -> void {
    if (row == t.size()) {
      out.push_back(t);
      return;
    }
    if (col == static_cast<int>(t[row].size())) {
      self(self, row + 1, 0);
      return;
    }
    int lo = 1;
    if (col > 0) lo = std::max(lo, t[row][col - 1]);
    if (row > 0) lo = std::max(lo, t[row - 1][col] + 1);
    for (int v = lo; v <= n; ++v) {
      t[row][col] = v;
      self(self, row, col + 1);
    }
    t[row][col] = 0;
  };
  fill(fill, 0, 0);
  return out;
}

std::shared_ptr<const IntegralRep> IntegralRep::build(int n, HighestWeight lambda) {
  if (n < 0) throw Error(ErrorCode::InvalidWeight, "negative degree");
  if (static_cast<int>(lambda.size()) > n)
    throw Error(ErrorCode::InvalidWeight, "weight " + format_weight(lambda) + " longer than degree");
  lambda.resize(n, 0);
  validate_weight(lambda);

  std::shared_ptr<IntegralRep> rep(new IntegralRep());
  rep->n_ = n;
  rep->lambda_ = lambda;
  rep->scalar_ = n == 0 || lambda.front() == lambda.back();
  rep->tableaux_ = semistandard_tableaux(lambda, n);
  const int ell = rep->dimension();
  if (Int(ell) != weyl_dimension(lambda))
    throw Error(ErrorCode::InvalidWeight, "tableau count disagrees with the Weyl dimension");

  for (const auto& tab : rep->tableaux_) {
    std::vector<std::vector<int>> cols;
    const int width = tab.empty() ? 0 : static_cast<int>(tab.front().size());
    for (int c = 0; c < width; ++c) {
      std::vector<int> rows;
      for (const auto& row : tab)
        if (c < static_cast<int>(row.size())) rows.push_back(row[c] - 1);
      cols.push_back(std::move(rows));
    }
    rep->columns_.push_back(std::move(cols));
  }
  if (rep->scalar_) return rep;

  std::mt19937_64 rng(0x5eedULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Small entries keep coordinates cheap; widen the range if the points are degenerate.
    std::uniform_int_distribution<int> entry(-2 - attempt / 2, 2 + attempt / 2);
    std::vector<IntMatrix> points;
    IntMatrix e(ell, ell);
    for (int i = 0; i < ell; ++i) {
      IntMatrix y(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) y(a, b) = entry(rng);
      for (int s = 0; s < ell; ++s) e(i, s) = rep->evaluate_basis(s, y);
      points.push_back(std::move(y));
    }
    auto inv = solve_rational(e, IntMatrix::identity(ell));
    if (!inv) continue;
    rep->points_ = std::move(points);
    rep->inverse_numerator_ = std::move(inv->numerator);
    rep->inverse_denominator_ = std::move(inv->denominator);
    return rep;
  }
  throw Error(ErrorCode::InvalidWeight, "no invertible evaluation system found for " + format_weight(lambda));
}

Int IntegralRep::evaluate_basis(int index, const IntMatrix& y) const {
  Int value = 1;
  for (const auto& rows : columns_[index]) {
    const int h = static_cast<int>(rows.size());
    IntMatrix minor(h, h);
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < h; ++b) minor(a, b) = y(rows[a], b);
    value *= determinant(minor);
    if (value == 0) break;
  }
  return value;
}

IntMatrix IntegralRep::matrix(const IntMatrix& u) const {
  if (u.rows() != n_ || u.cols() != n_) throw Error(ErrorCode::InvalidArgument, "rep matrix: wrong size");
  if (scalar_) {
    IntMatrix r(1, 1);
    r(0, 0) = n_ == 0 ? Int(1) : power(determinant(u), lambda_.front());
    return r;
  }
  const int ell = dimension();
  const IntMatrix ut = u.transpose();
  IntMatrix values(ell, ell);
  for (int i = 0; i < ell; ++i) {
    const IntMatrix y = ut * points_[i];
    for (int t = 0; t < ell; ++t) values(i, t) = evaluate_basis(t, y);
  }
  IntMatrix m = inverse_numerator_ * values;
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      Int& x = m(i, j);
      if (!mpz_divisible_p(x.get_mpz_t(), inverse_denominator_.get_mpz_t()))
        throw Error(ErrorCode::NonIntegralCoordinate, "rep matrix coordinate is not integral");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), inverse_denominator_.get_mpz_t());
    }
  return m;
}

int scalar_weight(const IntegralRep& rep) { return rep.degree() == 0 ? 0 : rep.weight().back(); }

std::vector<GradedPiece> weight_grading(const IntegralRep& rep, int axis) {
  std::vector<GradedPiece> out;
  const int n = rep.degree();
  if (n == 0) return out;
  if (axis < 0 || axis >= n) throw Error(ErrorCode::InvalidArgument, "grading axis out of range");
  IntMatrix torus = IntMatrix::identity(n);
  torus(axis, axis) = 2;
  const IntMatrix m = rep.matrix(torus);
  const int ell = rep.dimension();
  for (int i = rep.weight().back(); i <= rep.weight().front(); ++i) {
    IntMatrix shifted = m - IntMatrix::identity(ell) * power(Int(2), i);
    IntMatrix k = integer_kernel(shifted);
    if (k.cols() > 0) out.push_back(GradedPiece{i, std::move(k)});
  }
  return out;
}

ElementaryDivisorBasis elementary_divisor_basis(const IntMatrix& sublattice_basis) {
  const int d = sublattice_basis.cols();
  if (rank(sublattice_basis) != d) throw Error(ErrorCode::DependentColumns, "sublattice basis is dependent");
  const SmithForm s = smith_form(sublattice_basis);
  ElementaryDivisorBasis out;
  out.full_basis = s.P_inverse;
  out.to_basis = s.P;
  out.divisors.assign(s.divisors.begin(), s.divisors.begin() + d);
  out.count = d;
  return out;
}

IntVector coordinates(const ElementaryDivisorBasis& basis, const IntVector& v) { return basis.to_basis * v; }

}  // namespace siegel
