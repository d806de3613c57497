#include "siegel/expansion.hpp"

#include <cmath>

#include "siegel/error.hpp"
#include "siegel/linalg.hpp"

namespace siegel {

bool twist_admits(const Twist& twist, const HalfIntegralMatrix& t) {
  const int n = t.degree();
  const int top = n - twist.r;
  const IntMatrix& g = t.doubled();
  for (int i = 0; i < top; ++i)
    for (int j = top; j < n; ++j)
      if (!mpz_divisible_p(g(i, j).get_mpz_t(), twist.modulus.get_mpz_t())) return false;
  return true;
}

FourierExpansion::FourierExpansion(int degree, RepPtr rep, LevelSpec level, Int modulus, Int trace_bound, int embed)
    : n_(degree), rep_(std::move(rep)), embed_(embed), level_(std::move(level)), modulus_(std::move(modulus)),
      bound_(std::move(trace_bound)) {
  if (!rep_) throw Error(ErrorCode::InvalidArgument, "expansion without representation");
  if (n_ < 0 || embed_ < 0 || rep_->degree() != n_ + embed_)
    throw Error(ErrorCode::InvalidArgument, "representation degree does not match expansion degree");
  if (modulus_ < 0 || bound_ < 0) throw Error(ErrorCode::InvalidArgument, "negative modulus or trace bound");
  if (level_.char_parity != 1 && level_.char_parity != -1)
    throw Error(ErrorCode::InvalidArgument, "character parity must be +1 or -1");
}

void FourierExpansion::add_twist(const Twist& twist) {
  for (auto& existing : twists_)
    if (existing.r == twist.r && existing.p == twist.p) {
      if (twist.t > existing.t) existing = twist;
      return;
    }
  twists_.push_back(twist);
}

void FourierExpansion::set(const HalfIntegralMatrix& key, IntVector value) {
  if (key.degree() != n_) throw Error(ErrorCode::InvalidArgument, "key degree mismatch: " + to_string(key));
  if (key.trace() > bound_) throw Error(ErrorCode::OutOfBound, "key beyond trace bound: " + to_string(key));
  if (n_ > 0 && canonical(key).form != key) throw Error(ErrorCode::InvalidArgument, "key is not canonical: " + to_string(key));
  if (static_cast<int>(value.size()) != dimension())
    throw Error(ErrorCode::InvalidArgument, "coefficient vector has wrong length");
  coeffs_[key] = reduce(std::move(value));
}

const IntVector* FourierExpansion::find(const HalfIntegralMatrix& key) const {
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? nullptr : &it->second;
}

IntMatrix FourierExpansion::rho(const IntMatrix& u) const {
  if (embed_ == 0) return rep_->matrix(u);
  return rep_->matrix(block_diagonal(IntMatrix::identity(embed_), u));
}

IntVector FourierExpansion::reduce(IntVector v) const {
  if (modulus_ != 0)
    for (auto& x : v) x = mod_nonneg(x, modulus_);
  return v;
}

bool operator==(const FourierExpansion& a, const FourierExpansion& b) {
  return a.n_ == b.n_ && a.embed_ == b.embed_ && a.rep_->weight() == b.rep_->weight() && a.level_ == b.level_ &&
         a.modulus_ == b.modulus_ && a.bound_ == b.bound_ && a.coeffs_ == b.coeffs_ && a.twists_ == b.twists_;
}

IntVector get_coeff(const FourierExpansion& f, const HalfIntegralMatrix& t) {
  if (t.degree() != f.degree()) throw Error(ErrorCode::InvalidArgument, "coefficient index has wrong degree");
  if (t.trace() > f.trace_bound()) throw Error(ErrorCode::OutOfBound, "trace of " + to_string(t) + " exceeds bound");
  for (const auto& tw : f.twists())
    if (!twist_admits(tw, t)) return IntVector(f.dimension(), 0);

  auto lookup = [&](const HalfIntegralMatrix& key) -> IntVector {
    if (const IntVector* v = f.find(key)) return *v;
    if (f.missing_keys() == MissingKeys::Error) throw Error(ErrorCode::MissingKey, "no coefficient stored at " + to_string(key));
    return IntVector(f.dimension(), 0);
  };
  if (f.degree() == 0) return lookup(t);

  const CanonicalForm c = canonical(t);
  IntVector stored = lookup(c.form);
  if (c.U == IntMatrix::identity(f.degree())) return stored;
  const IntMatrix u_inv = *integer_inverse(c.U);
  IntVector v = f.rho(u_inv) * stored;
  if (f.level().char_parity == -1 && determinant(c.U) == -1)
    for (auto& x : v) x = -x;
  return f.reduce(std::move(v));
}

int rank_of_key(const HalfIntegralMatrix& t) { return t.degree() == 0 ? 0 : rank(t); }

FourierExpansion rank_subseries(const FourierExpansion& f, int r) {
  if (r < 0 || r > f.degree()) throw Error(ErrorCode::InvalidArgument, "rank out of range");
  FourierExpansion out = f;
  for (const auto& [key, value] : f.coefficients())
    if (rank_of_key(key) != r) out.set(key, IntVector(f.dimension(), 0));
  return out;
}

std::map<HalfIntegralMatrix, IntVector> f0_extract(const FourierExpansion& f, int r) {
  const int n = f.degree();
  if (r < 0 || r > n) throw Error(ErrorCode::InvalidArgument, "rank out of range");
  std::map<HalfIntegralMatrix, IntVector> out;
  if (r == 0) {
    out.emplace(HalfIntegralMatrix::zero(0), get_coeff(f, HalfIntegralMatrix::zero(n)));
    return out;
  }
  for (const auto& t : enumerate_classes(r, f.trace_bound()))
    if (rank(t) == r) out.emplace(t, get_coeff(f, block_embed(t, n)));
  return out;
}

FourierExpansion phi_operator(const FourierExpansion& f) {
  const int n = f.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Phi operator needs degree >= 1");
  RepPtr rep = f.rep_ptr();
  int embed = f.embed() + 1;
  if (rep->is_scalar()) {
    rep = build_rep(n - 1, HighestWeight(n - 1, scalar_weight(*rep)));
    embed = 0;
  }
  FourierExpansion out(n - 1, rep, f.level(), f.modulus(), f.trace_bound(), embed);
  out.set_missing_keys(f.missing_keys());
  const auto keys = n - 1 == 0 ? std::vector{HalfIntegralMatrix::zero(0)} : enumerate_classes(n - 1, f.trace_bound());
  for (const auto& t : keys) out.set(t, get_coeff(f, block_embed(t, n)));
  return out;
}

FourierExpansion twist_filter(const FourierExpansion& f, const Int& p, int t, int r) {
  if (t < 0 || r < 0 || r > f.degree()) throw Error(ErrorCode::InvalidArgument, "twist parameters out of range");
  if (t == 0) return f;
  FourierExpansion out = f;
  out.add_twist(Twist{r, p, t, power(p, t)});
  return out;
}

JacobiSlice jacobi_slice(const FourierExpansion& f, const HalfIntegralMatrix& t) {
  const int n = f.degree();
  const int r = t.degree();
  if (r > n) throw Error(ErrorCode::InvalidArgument, "slice index larger than degree");
  if (r > 0 && !is_positive_definite(t)) throw Error(ErrorCode::NotDefinite, to_string(t));
  JacobiSlice slice;
  slice.T = t;
  slice.r = r;
  slice.n = n;
  slice.bound = f.trace_bound() - t.trace();
  slice.modulus = f.modulus();
  if (slice.bound < 0) return slice;

  const int s = n - r;
  const IntMatrix& g4 = t.doubled();
  const auto tops = s == 0 ? std::vector{HalfIntegralMatrix::zero(0)} : enumerate_raw(s, slice.bound);
  for (const auto& s1 : tops) {
    const IntMatrix& g1 = s1.doubled();
    std::vector<std::int64_t> limit;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < r; ++j) {
        const Int prod = g1(i, i) * g4(j, j);
        Int root = sqrt(prod);
        limit.push_back(to_int64(root));
      }
    IntMatrix s2(s, r);
    IntMatrix full(n, n);
    full.set_block(0, 0, g1);
    full.set_block(s, s, g4);
    std::vector<std::int64_t> cur(limit.size());
    for (size_t k = 0; k < cur.size(); ++k) cur[k] = -limit[k];
    while (true) {
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < r; ++j) {
          const Int v = cur[static_cast<size_t>(i) * r + j];
          s2(i, j) = v;
          full(i, s + j) = v;
          full(s + j, i) = v;
        }
      const HalfIntegralMatrix m(full);
      if (is_psd(m)) slice.entries.emplace(std::make_pair(s1, s2), get_coeff(f, m));
      size_t k = 0;
      while (k < cur.size() && cur[k] == limit[k]) {
        cur[k] = -limit[k];
        ++k;
      }
      if (k == cur.size()) break;
      ++cur[k];
    }
  }
  return slice;
}

std::map<HalfIntegralMatrix, IntVector> collapse_z2(const JacobiSlice& slice) {
  std::map<HalfIntegralMatrix, IntVector> out;
  for (const auto& [key, value] : slice.entries) {
    auto [it, inserted] = out.emplace(key.first, value);
    if (!inserted)
      for (size_t i = 0; i < value.size(); ++i) it->second[i] += value[i];
  }
  if (slice.modulus != 0)
    for (auto& [key, value] : out)
      for (auto& x : value) x = mod_nonneg(x, slice.modulus);
  return out;
}

bool is_zero_mod(const IntVector& v, const Int& modulus) {
  for (const auto& x : v) {
    if (modulus == 0 ? x != 0 : !mpz_divisible_p(x.get_mpz_t(), modulus.get_mpz_t())) return false;
  }
  return true;
}

int p_rank(const FourierExpansion& f, const Int& p) {
  int best = -1;
  for (const auto& [key, value] : f.coefficients())
    if (!is_zero_mod(get_coeff(f, key), p)) best = std::max(best, rank_of_key(key));
  return best;
}

std::optional<int> is_mod_singular(const FourierExpansion& f, const Int& p, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  const Int pm = power(p, m);
  if (f.modulus() != 0 && !mpz_divisible_p(f.modulus().get_mpz_t(), pm.get_mpz_t()))
    throw Error(ErrorCode::IncompatibleModulus, "expansion modulus " + f.modulus().get_str() + " is not a multiple of " +
                                                    pm.get_str());
  int top = -1;
  for (const auto& [key, value] : f.coefficients())
    if (!is_zero_mod(get_coeff(f, key), pm)) top = std::max(top, rank_of_key(key));
  if (top < 0 || top >= f.degree()) return std::nullopt;
  for (const auto& [key, value] : f.coefficients())
    if (rank_of_key(key) == top && !is_zero_mod(get_coeff(f, key), p)) return top;
  return std::nullopt;
}

HalfIntegralMatrix minimal_det_witness(const FourierExpansion& f, const Int& p, int r) {
  std::optional<HalfIntegralMatrix> best;
  Int best_det;
  for (const auto& [t, value] : f0_extract(f, r)) {
    if (is_zero_mod(value, p)) continue;
    const Int d = determinant(t.doubled());
    if (!best || d < best_det) {
      best = t;
      best_det = d;
    }
  }
  if (!best) throw Error(ErrorCode::NoWitness, "no definite rank " + std::to_string(r) + " coefficient is a unit mod p");
  return *best;
}

namespace {

struct CyclotomicShape {
  Int q;
  long q_long;
  long step;  // q / p
  long phi;
};

CyclotomicShape shape_of(const Int& p, int t) {
  if (t < 1 || p < 2) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be p^t with t >= 1");
  CyclotomicShape s;
  s.q = power(p, t);
  s.q_long = to_int64(s.q);
  s.step = s.q_long / to_int64(p);
  s.phi = s.q_long - s.step;
  return s;
}

// Reduce sum_k c_k x^k modulo Phi_q(x) = sum_{j<p} x^{j q/p}.
CyclotomicInt reduce_cyclotomic(const Int& p, int t, IntVector c) {
  const CyclotomicShape s = shape_of(p, t);
  const long p_long = to_int64(p);
  for (long e = static_cast<long>(c.size()) - 1; e >= s.phi; --e) {
    if (c[e] == 0) continue;
    const Int v = c[e];
    c[e] = 0;
    for (long j = 0; j < p_long - 1; ++j) c[e - s.phi + j * s.step] -= v;
  }
  c.resize(s.phi);
  return CyclotomicInt{p, t, std::move(c)};
}

}  // namespace

CyclotomicInt CyclotomicInt::zero(const Int& p, int t) {
  return CyclotomicInt{p, t, IntVector(shape_of(p, t).phi, 0)};
}

CyclotomicInt CyclotomicInt::power_of_zeta(const Int& p, int t, const Int& k) {
  const CyclotomicShape s = shape_of(p, t);
  IntVector c(s.q_long, 0);
  c[to_int64(mod_nonneg(k, s.q))] = 1;
  return reduce_cyclotomic(p, t, std::move(c));
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (o.p != p || o.t != t) throw Error(ErrorCode::InvalidArgument, "cyclotomic order mismatch");
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.p != b.p || a.t != b.t) throw Error(ErrorCode::InvalidArgument, "cyclotomic order mismatch");
  IntVector c(a.coeffs.size() + b.coeffs.size(), 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return reduce_cyclotomic(a.p, a.t, std::move(c));
}

std::optional<Int> CyclotomicInt::as_integer() const {
  for (size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return std::nullopt;
  return coeffs.empty() ? Int(0) : coeffs[0];
}

CyclotomicInt exponential_sum_direct(const IntMatrix& m, const Int& p, int t) {
  const CyclotomicShape s = shape_of(p, t);
  const int cells = m.rows() * m.cols();
  std::vector<long> residues(cells);
  for (int k = 0; k < cells; ++k) residues[k] = to_int64(mod_nonneg(m.data()[k], s.q));
  IntVector counts(s.q_long, 0);
  std::vector<long> r(cells, 0);
  while (true) {
    long k = 0;
    for (int c = 0; c < cells; ++c) k = (k + r[c] * residues[c]) % s.q_long;
    counts[k] += 1;
    int c = 0;
    while (c < cells && r[c] == s.q_long - 1) r[c++] = 0;
    if (c == cells) break;
    ++r[c];
  }
  return reduce_cyclotomic(p, t, std::move(counts));
}

CyclotomicInt exponential_sum(const IntMatrix& m, const Int& p, int t) {
  const CyclotomicShape s = shape_of(p, t);
  CyclotomicInt total = CyclotomicInt::power_of_zeta(p, t, 0);
  for (const auto& entry : m.data()) {
    IntVector c(s.q_long, 0);
    const long e = to_int64(mod_nonneg(entry, s.q));
    for (long x = 0; x < s.q_long; ++x) c[(x * e) % s.q_long] += 1;
    total = total * reduce_cyclotomic(p, t, std::move(c));
  }
  return total;
}

}  // namespace siegel
