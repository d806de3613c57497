#include "siegel/matrix.hpp"

#include <limits>
#include <ostream>
#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NotDefinite: return "NotDefinite";
    case ErrorCode::NotFullRank: return "NotFullRank";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::NonIntegralCoordinate: return "NonIntegralCoordinate";
    case ErrorCode::DependentColumns: return "DependentColumns";
    case ErrorCode::OutOfBound: return "OutOfBound";
    case ErrorCode::IncompatibleModulus: return "IncompatibleModulus";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::NoUnitCoordinate: return "NoUnitCoordinate";
    case ErrorCode::OddRank: return "OddRank";
    case ErrorCode::NotPluriharmonic: return "NotPluriharmonic";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::DegenerateR: return "DegenerateR";
    case ErrorCode::UnknownLattice: return "UnknownLattice";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int power(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

int valuation(const Int& a, const Int& p) {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  Int x = abs(a);
  int v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t to_int64(const Int& a) {
  if (!a.fits_slong_p()) throw Error(ErrorCode::Overflow, "integer does not fit in 64 bits: " + a.get_str());
  return a.get_si();
}

IntMatrix::IntMatrix(int rows, int cols, std::initializer_list<long> values) : IntMatrix(rows, cols) {
  if (values.size() != data_.size()) throw Error(ErrorCode::InvalidArgument, "initializer size mismatch");
  size_t k = 0;
  for (long v : values) data_[k++] = v;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  const int n = static_cast<int>(d.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(int row, int col, int nrows, int ncols) const {
  IntMatrix b(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) b(i, j) = (*this)(row + i, col + j);
  return b;
}

void IntMatrix::set_block(int row, int col, const IntMatrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(row + i, col + j) = b(i, j);
}

IntVector IntMatrix::row(int i) const {
  IntVector r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IntVector IntMatrix::col(int j) const {
  IntVector c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void IntMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidArgument, "shape mismatch in +");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidArgument, "shape mismatch in -");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator*=(const Int& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "shape mismatch in *");
  IntMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != static_cast<int>(v.size())) throw Error(ErrorCode::InvalidArgument, "shape mismatch in M*v");
  IntVector r(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  for (size_t k = 0; k < a.data_.size(); ++k) {
    const int c = cmp(a.data_[k], b.data_[k]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream ss;
  ss << m;
  return ss.str();
}

}  // namespace siegel
