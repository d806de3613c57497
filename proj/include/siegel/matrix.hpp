#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace siegel {

using Int = mpz_class;
using IntVector = std::vector<Int>;

// Floor division and non-negative residue.
Int floor_div(const Int& a, const Int& b);
Int mod_nonneg(const Int& a, const Int& m);
Int power(const Int& base, unsigned long exponent);
// Exponent of p in a (a != 0).
int valuation(const Int& a, const Int& p);
std::int64_t to_int64(const Int& a);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  IntMatrix(int rows, int cols, std::initializer_list<long> values);

  static IntMatrix identity(int n);
  static IntMatrix diagonal(const IntVector& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  Int& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<Int>& data() const { return data_; }

  IntMatrix transpose() const;
  IntMatrix block(int row, int col, int nrows, int ncols) const;
  void set_block(int row, int col, const IntMatrix& b);
  IntVector row(int i) const;
  IntVector col(int j) const;
  void swap_rows(int a, int b);
  void swap_cols(int a, int b);

  bool is_zero() const;
  bool is_symmetric() const;

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  IntMatrix& operator*=(const Int& s);

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(IntMatrix a, const Int& s) { return a *= s; }
  friend IntMatrix operator*(const Int& s, IntMatrix a) { return a *= s; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  // Shape first, then row-major entries.
  friend std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::string to_string(const IntMatrix& m);

}  // namespace siegel
