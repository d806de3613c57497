#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegel/expansion.hpp"
#include "siegel/polynomial.hpp"

namespace siegel {

struct EvenLattice {
  std::string name;
  IntMatrix gram;  // even diagonal, positive definite

  int rank() const { return gram.rows(); }
};

/// Validates symmetry, even diagonal and definiteness.
EvenLattice make_lattice(IntMatrix gram, std::string name = "");
/// A1, A2, D4, E8 root lattices (Cartan matrices).
EvenLattice catalog(const std::string& name);
std::vector<std::string> catalog_names();
/// Smallest N with N * gram^{-1} integral with even diagonal.
Int lattice_level(const EvenLattice& lattice);

/// a(T) = #{X in Z^{m x n} : X^t gram X = 2T}, weight m/2.
FourierExpansion scalar_theta(const EvenLattice& lattice, int n, const Int& trace_bound);

/// Polynomial coefficient of a harmonic theta series. Variable x_{i,a}
/// (row i < m, column a < n) has index i * n + a. Components are taken in
/// the bideterminant basis of rep0 and satisfy P(X A) = rho0(A^t) P(X).
struct PolyCoeff {
  int m = 0;
  int n = 0;
  RepPtr rep0;
  std::vector<Polynomial> components;
};

bool pluriharmonic_check(const PolyCoeff& p, const EvenLattice& lattice);
/// Compares P(X A) with rho0(A^t) P(X) at random integer points X for
/// `trials` random integer matrices A.
bool equivariance_check(const PolyCoeff& p, int trials = 20, std::uint64_t seed = 0x5eedULL);

/// a(T) = sum over X^t gram X = 2T of P(X); representation rho0 (x) det^{m/2}.
FourierExpansion poly_theta(const EvenLattice& lattice, int n, const PolyCoeff& p, const Int& trace_bound);

/// Basis of the integer solutions of the linear system "pluriharmonic and
/// P(X A) = rho0(A^t) P(X) for generators A of GL(n,Z)" among ell-tuples of
/// homogeneous polynomials of degree |lambda0| in the entries of X.
std::vector<PolyCoeff> solve_harmonic_coefficients(const EvenLattice& lattice, int n, const HighestWeight& lambda0);

/// Integral basis of the homogeneous degree-d polynomials q on R^m with
/// sum_ij adj(gram)_ij d_i d_j q = 0 and q(g w) = q(w) for all g in Aut(lattice).
std::vector<Polynomial> invariant_harmonics(const EvenLattice& lattice, int d);

/// P_tau(X) = coefficient of v^tau in q(X v) for the rep Sym^d of GL(n).
PolyCoeff sym_power_coefficient(const Polynomial& q, int n);

/// Degree one expansion sum_j c(j) q^j.
struct QSeries {
  std::map<std::int64_t, Int> coeffs;
  std::int64_t bound = 0;
  Int modulus = 0;

  Int operator[](std::int64_t j) const;
  friend bool operator==(const QSeries&, const QSeries&) = default;
};

/// c(j) = #{x in Z^r : x^t (2R) x = 2j}, j <= bound.
QSeries theta_qseries(const HalfIntegralMatrix& r, std::int64_t bound);
QSeries q_mul(const QSeries& a, const QSeries& b);
QSeries q_scale(const QSeries& a, const Int& c);
bool q_congruent(const QSeries& a, const QSeries& b, const Int& p, int m, std::int64_t bound);
std::string to_string(const QSeries& q);

}  // namespace siegel
