#pragma once

#include <map>
#include <string>
#include <vector>

#include "siegel/matrix.hpp"

namespace siegel {

/// Sparse multivariate polynomial with integer coefficients. Zero terms are never stored.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  explicit Polynomial(int variables = 0) : vars_(variables) {}
  static Polynomial constant(int variables, const Int& c);
  static Polynomial variable(int variables, int index);

  int variables() const { return vars_; }
  const std::map<Exponent, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Exponent& e, const Int& c);
  Int coefficient(const Exponent& e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Int& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Int& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial derivative(int index) const;
  Int evaluate(const IntVector& point) const;
  /// Replace variable i by images[i]; all images share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

 private:
  int vars_;
  std::map<Exponent, Int> terms_;
};

/// All exponent vectors of total degree d in k variables, lexicographically descending.
std::vector<Polynomial::Exponent> monomials(int k, int d);

std::string to_string(const Polynomial& p);

}  // namespace siegel
