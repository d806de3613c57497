#include "siegel/theta.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/lattice_enum.hpp"
#include "siegel/linalg.hpp"

namespace siegel {

EvenLattice make_lattice(IntMatrix gram, std::string name) {
  if (!gram.is_square() || !gram.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "Gram matrix must be symmetric");
  for (int i = 0; i < gram.rows(); ++i)
    if (!mpz_even_p(gram(i, i).get_mpz_t())) throw Error(ErrorCode::InvalidArgument, "Gram matrix must have even diagonal");
  if (!is_positive_definite(HalfIntegralMatrix(gram))) throw Error(ErrorCode::NotDefinite, "Gram matrix is not positive definite");
  return EvenLattice{std::move(name), std::move(gram)};
}

EvenLattice catalog(const std::string& name) {
  IntMatrix g;
  long det = 0;
  if (name == "A1") {
    g = IntMatrix(1, 1, {2});
    det = 2;
  } else if (name == "A2") {
    g = IntMatrix(2, 2, {2, 1, 1, 2});
    det = 3;
  } else if (name == "D4") {
    g = IntMatrix(4, 4, {2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2, 0, 0, -1, 0, 2});
    det = 4;
  } else if (name == "E8") {
    // Cartan matrix, Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 attached to 4.
    g = IntMatrix::identity(8) * Int(2);
    const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (const auto& e : edges) g(e[0], e[1]) = g(e[1], e[0]) = -1;
    det = 1;
  } else {
    throw Error(ErrorCode::UnknownLattice, "unknown lattice '" + name + "'");
  }
  EvenLattice l = make_lattice(g, name);
  if (determinant(l.gram) != det) throw Error(ErrorCode::InvalidArgument, "catalog determinant check failed for " + name);
  return l;
}

std::vector<std::string> catalog_names() { return {"A1", "A2", "D4", "E8"}; }

Int lattice_level(const EvenLattice& lattice) {
  const RationalInverse inv = rational_inverse(lattice.gram);
  Int level = 1;
  for (int i = 0; i < inv.numerator.rows(); ++i)
    for (int j = 0; j < inv.numerator.cols(); ++j) {
      const Int den = i == j ? Int(2 * inv.denominator) : inv.denominator;
      const Int g = gcd(den, inv.numerator(i, j));
      level = lcm(level, den / g);
    }
  return level;
}

namespace {

int half_rank(const EvenLattice& lattice) {
  if (lattice.rank() % 2) throw Error(ErrorCode::OddRank, "lattice rank must be even for integral weight");
  return lattice.rank() / 2;
}

LevelSpec theta_level(const EvenLattice& lattice, int k) {
  LevelSpec level;
  level.N = lattice_level(lattice);
  level.char_parity = k % 2 ? -1 : 1;
  return level;
}

std::int64_t shell_bound(const Int& trace_bound) { return to_int64(trace_bound) * 2; }

}  // namespace

FourierExpansion scalar_theta(const EvenLattice& lattice, int n, const Int& trace_bound) {
  const int k = half_rank(lattice);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  FourierExpansion f(n, build_rep(n, HighestWeight(n, k)), theta_level(lattice, k), 0, trace_bound);
  const RepresentationCounter counter(lattice.gram, shell_bound(trace_bound));
  for (const auto& t : enumerate_classes(n, trace_bound)) {
    const Int count = rank(t) > lattice.rank() ? Int(0) : counter.count(t.doubled());
    f.set(t, IntVector{count});
  }
  return f;
}

namespace {

IntVector evaluate_components(const PolyCoeff& p, const IntVector& point) {
  IntVector out;
  out.reserve(p.components.size());
  for (const auto& c : p.components) out.push_back(c.evaluate(point));
  return out;
}

bool shape_ok(const PolyCoeff& p) {
  if (!p.rep0 || p.rep0->degree() != p.n) return false;
  if (static_cast<int>(p.components.size()) != p.rep0->dimension()) return false;
  for (const auto& c : p.components)
    if (c.variables() != p.m * p.n) return false;
  return true;
}

// The operator sum_ij N_ij d^2 / dx_{i,a} dx_{j,b}.
Polynomial laplacian(const Polynomial& q, const IntMatrix& weights, int n, int a, int b) {
  Polynomial out(q.variables());
  const int m = weights.rows();
  for (int i = 0; i < m; ++i) {
    const Polynomial di = q.derivative(i * n + a);
    if (di.is_zero()) continue;
    for (int j = 0; j < m; ++j) {
      if (weights(i, j) == 0) continue;
      out += di.derivative(j * n + b) * weights(i, j);
    }
  }
  return out;
}

// x_{i,a} -> sum_b x_{i,b} A_{b,a}, i.e. X -> X A.
std::vector<Polynomial> right_multiplication(int m, int n, const IntMatrix& a) {
  std::vector<Polynomial> images;
  for (int i = 0; i < m; ++i)
    for (int col = 0; col < n; ++col) {
      Polynomial img(m * n);
      for (int b = 0; b < n; ++b) img += Polynomial::variable(m * n, i * n + b) * a(b, col);
      images.push_back(std::move(img));
    }
  return images;
}

std::vector<IntMatrix> gl_generators(int n) {
  std::vector<IntMatrix> gens;
  if (n == 0) return gens;
  IntMatrix d = IntMatrix::identity(n);
  d(0, 0) = -1;
  gens.push_back(d);
  if (n >= 2) {
    IntMatrix e = IntMatrix::identity(n);
    e(0, 1) = 1;
    gens.push_back(e);
    IntMatrix s = IntMatrix::identity(n);
    s.swap_rows(0, 1);
    gens.push_back(s);
    IntMatrix cycle(n, n);
    for (int i = 0; i < n; ++i) cycle((i + 1) % n, i) = 1;
    gens.push_back(cycle);
  }
  return gens;
}

}  // namespace

bool pluriharmonic_check(const PolyCoeff& p, const EvenLattice& lattice) {
  if (!shape_ok(p) || p.m != lattice.rank()) return false;
  const IntMatrix weights = rational_inverse(lattice.gram).numerator;
  for (const auto& c : p.components)
    for (int a = 0; a < p.n; ++a)
      for (int b = a; b < p.n; ++b)
        if (!laplacian(c, weights, p.n, a, b).is_zero()) return false;
  return true;
}

bool equivariance_check(const PolyCoeff& p, int trials, std::uint64_t seed) {
  if (!shape_ok(p)) return false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> wide(-9, 9);
  const int m = p.m, n = p.n;
  for (int trial = 0; trial < trials; ++trial) {
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = small(rng);
    const IntMatrix rho = p.rep0->matrix(a.transpose());
    for (int sample = 0; sample < 3; ++sample) {
      IntMatrix x(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = wide(rng);
      const IntMatrix xa = x * a;
      if (evaluate_components(p, xa.data()) != rho * evaluate_components(p, x.data())) return false;
    }
  }
  return true;
}

FourierExpansion poly_theta(const EvenLattice& lattice, int n, const PolyCoeff& p, const Int& trace_bound) {
  const int k = half_rank(lattice);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  if (p.m != lattice.rank() || p.n != n || !shape_ok(p))
    throw Error(ErrorCode::InvalidArgument, "polynomial coefficient has the wrong shape");
  if (!pluriharmonic_check(p, lattice)) throw Error(ErrorCode::NotPluriharmonic, "coefficient is not pluriharmonic");
  if (!equivariance_check(p)) throw Error(ErrorCode::NotEquivariant, "coefficient is not rho0-equivariant");

  HighestWeight lambda = p.rep0->weight();
  for (auto& x : lambda) x += k;
  const int m = lattice.rank();
  const int ell = p.rep0->dimension();
  FourierExpansion f(n, build_rep(n, lambda), theta_level(lattice, k), 0, trace_bound);
  const RepresentationCounter counter(lattice.gram, shell_bound(trace_bound));
  IntVector point(static_cast<size_t>(m) * n);
  for (const auto& t : enumerate_classes(n, trace_bound)) {
    IntVector total(ell, 0);
    if (rank(t) <= m) {
      counter.visit(t.doubled(), [&](const std::vector<const SmallVector*>& cols) {
        for (int i = 0; i < m; ++i)
          for (int a = 0; a < n; ++a) point[static_cast<size_t>(i) * n + a] = static_cast<long>((*cols[a])[i]);
        for (int c = 0; c < ell; ++c) total[c] += p.components[c].evaluate(point);
      });
    }
    f.set(t, std::move(total));
  }
  return f;
}

std::vector<PolyCoeff> solve_harmonic_coefficients(const EvenLattice& lattice, int n, const HighestWeight& lambda0) {
  const int m = lattice.rank();
  const int vars = m * n;
  const RepPtr rep0 = build_rep(n, lambda0);
  const int ell = rep0->dimension();
  const int d = std::accumulate(lambda0.begin(), lambda0.end(), 0);
  const auto monos = monomials(vars, d);
  const int count = static_cast<int>(monos.size());
  std::map<Polynomial::Exponent, int> mono_index;
  for (int k = 0; k < count; ++k) mono_index[monos[k]] = k;
  std::vector<Polynomial> basis;
  for (const auto& e : monos) {
    Polynomial q(vars);
    q.add_term(e, 1);
    basis.push_back(std::move(q));
  }

  // Each constraint is a sparse row over unknowns u_{c,k}, index c * count + k.
  std::vector<std::map<int, Int>> rows;
  auto add_rows = [&](std::map<std::pair<int, Polynomial::Exponent>, std::map<int, Int>>& acc) {
    for (auto& [key, row] : acc) {
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  };

  const IntMatrix weights = rational_inverse(lattice.gram).numerator;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::map<std::pair<int, Polynomial::Exponent>, std::map<int, Int>> acc;
      for (int k = 0; k < count; ++k) {
        const Polynomial lk = laplacian(basis[k], weights, n, a, b);
        for (const auto& [e, c] : lk.terms())
          for (int comp = 0; comp < ell; ++comp) acc[{comp, e}][comp * count + k] += c;
      }
      add_rows(acc);
    }

  for (const auto& g : gl_generators(n)) {
    const auto images = right_multiplication(m, n, g);
    const IntMatrix rho = rep0->matrix(g.transpose());
    std::map<std::pair<int, Polynomial::Exponent>, std::map<int, Int>> acc;
    for (int k = 0; k < count; ++k) {
      const Polynomial moved = basis[k].substitute(images);
      for (const auto& [e, c] : moved.terms())
        for (int comp = 0; comp < ell; ++comp) acc[{comp, e}][comp * count + k] += c;
    }
    for (int comp = 0; comp < ell; ++comp)
      for (int other = 0; other < ell; ++other) {
        if (rho(comp, other) == 0) continue;
        for (int k = 0; k < count; ++k) acc[{comp, monos[k]}][other * count + k] -= rho(comp, other);
      }
    add_rows(acc);
  }

  IntMatrix system(static_cast<int>(rows.size()), ell * count);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) system(static_cast<int>(i), j) = v;
  const IntMatrix kernel = integer_kernel(system);

  std::vector<PolyCoeff> out;
  for (int col = 0; col < kernel.cols(); ++col) {
    PolyCoeff p{m, n, rep0, std::vector<Polynomial>(ell, Polynomial(vars))};
    for (int comp = 0; comp < ell; ++comp)
      for (int k = 0; k < count; ++k) p.components[comp].add_term(monos[k], kernel(comp * count + k, col));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Polynomial> invariant_harmonics(const EvenLattice& lattice, int d) {
  const int m = lattice.rank();
  const auto monos = monomials(m, d);
  const int count = static_cast<int>(monos.size());
  std::vector<Polynomial> basis;
  for (const auto& e : monos) {
    Polynomial q(m);
    q.add_term(e, 1);
    basis.push_back(std::move(q));
  }
  std::vector<std::map<int, Int>> rows;
  auto add_rows = [&](std::map<Polynomial::Exponent, std::map<int, Int>>& acc) {
    for (auto& [key, row] : acc) {
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  };

  const IntMatrix weights = rational_inverse(lattice.gram).numerator;
  {
    std::map<Polynomial::Exponent, std::map<int, Int>> acc;
    for (int k = 0; k < count; ++k) {
      const Polynomial lk = laplacian(basis[k], weights, 1, 0, 0);
      for (const auto& [e, c] : lk.terms()) acc[e][k] += c;
    }
    add_rows(acc);
  }
  // Automorphisms U with U (S/2) U^t = S/2; g = U^t satisfies g^t S g = S.
  for (const auto& u : automorphisms(HalfIntegralMatrix(lattice.gram))) {
    const IntMatrix g = u.transpose();
    std::vector<Polynomial> images;
    for (int i = 0; i < m; ++i) {
      Polynomial img(m);
      for (int j = 0; j < m; ++j) img += Polynomial::variable(m, j) * g(i, j);
      images.push_back(std::move(img));
    }
    std::map<Polynomial::Exponent, std::map<int, Int>> acc;
    for (int k = 0; k < count; ++k) {
      const Polynomial moved = basis[k].substitute(images);
      for (const auto& [e, c] : moved.terms()) acc[e][k] += c;
      acc[monos[k]][k] -= 1;
    }
    add_rows(acc);
  }

  IntMatrix system(static_cast<int>(rows.size()), count);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) system(static_cast<int>(i), j) = v;
  const IntMatrix kernel = integer_kernel(system);
  std::vector<Polynomial> out;
  for (int col = 0; col < kernel.cols(); ++col) {
    Polynomial q(m);
    for (int k = 0; k < count; ++k) q.add_term(monos[k], kernel(k, col));
    out.push_back(std::move(q));
  }
  return out;
}

PolyCoeff sym_power_coefficient(const Polynomial& q, int n) {
  const int m = q.variables();
  const int d = q.degree();
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "zero polynomial");
  for (const auto& [e, c] : q.terms())
    if (std::accumulate(e.begin(), e.end(), 0) != d) throw Error(ErrorCode::InvalidArgument, "polynomial is not homogeneous");
  HighestWeight lambda0(n, 0);
  lambda0[0] = d;
  const RepPtr rep0 = build_rep(n, lambda0);

  // Basis element f_tau(Y) = prod_k Y_{tau_k, 0} is the monomial v^alpha.
  std::map<Polynomial::Exponent, int> index;
  for (int i = 0; i < rep0->dimension(); ++i) {
    Polynomial::Exponent alpha(n, 0);
    for (int entry : rep0->tableaux()[i].front()) ++alpha[entry - 1];
    index[alpha] = i;
  }

  const int xv = m * n;
  const int total = xv + n;
  std::vector<Polynomial> images;
  for (int i = 0; i < m; ++i) {
    Polynomial img(total);
    for (int a = 0; a < n; ++a) img += Polynomial::variable(total, i * n + a) * Polynomial::variable(total, xv + a);
    images.push_back(std::move(img));
  }
  const Polynomial expanded = q.substitute(images);

  PolyCoeff p{m, n, rep0, std::vector<Polynomial>(rep0->dimension(), Polynomial(xv))};
  for (const auto& [e, c] : expanded.terms()) {
    const Polynomial::Exponent alpha(e.begin() + xv, e.end());
    const Polynomial::Exponent x(e.begin(), e.begin() + xv);
    p.components.at(index.at(alpha)).add_term(x, c);
  }
  return p;
}

Int QSeries::operator[](std::int64_t j) const {
  auto it = coeffs.find(j);
  return it == coeffs.end() ? Int(0) : it->second;
}

QSeries theta_qseries(const HalfIntegralMatrix& r, std::int64_t bound) {
  QSeries out;
  out.bound = bound;
  if (bound < 0) return out;
  if (r.degree() == 0) {
    out.coeffs[0] = 1;
    return out;
  }
  if (!is_positive_definite(r)) throw Error(ErrorCode::DegenerateR, "theta series of a degenerate form diverges");
  for (const auto& v : short_vectors(r.doubled(), 2 * bound, true)) {
    std::vector<std::int64_t> g(r.doubled().data().size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = to_int64(r.doubled().data()[i]);
    out.coeffs[small_norm(g, r.degree(), v) / 2] += 1;
  }
  return out;
}

QSeries q_mul(const QSeries& a, const QSeries& b) {
  QSeries out;
  out.bound = std::min(a.bound, b.bound);
  if (a.modulus == b.modulus) out.modulus = a.modulus;
  else if (a.modulus == 0 || b.modulus == 0) out.modulus = a.modulus == 0 ? b.modulus : a.modulus;
  else out.modulus = gcd(a.modulus, b.modulus);
  for (const auto& [i, x] : a.coeffs)
    for (const auto& [j, y] : b.coeffs)
      if (i + j <= out.bound) out.coeffs[i + j] += x * y;
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    if (out.modulus != 0) it->second = mod_nonneg(it->second, out.modulus);
    if (it->second == 0) it = out.coeffs.erase(it);
    else ++it;
  }
  return out;
}

QSeries q_scale(const QSeries& a, const Int& c) {
  QSeries out = a;
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    it->second *= c;
    if (out.modulus != 0) it->second = mod_nonneg(it->second, out.modulus);
    if (it->second == 0) it = out.coeffs.erase(it);
    else ++it;
  }
  return out;
}

bool q_congruent(const QSeries& a, const QSeries& b, const Int& p, int m, std::int64_t bound) {
  const Int pm = power(p, m);
  const std::int64_t top = std::min({bound, a.bound, b.bound});
  for (std::int64_t j = 0; j <= top; ++j) {
    const Int diff = a[j] - b[j];
    if (!mpz_divisible_p(diff.get_mpz_t(), pm.get_mpz_t())) return false;
  }
  return true;
}

std::string to_string(const QSeries& q) {
  std::ostringstream os;
  for (std::int64_t j = 0; j <= q.bound; ++j) os << j << ":" << q[j] << "\n";
  return os.str();
}

}  // namespace siegel
