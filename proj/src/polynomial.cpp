#include "siegel/polynomial.hpp"

#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

Polynomial Polynomial::constant(int variables, const Int& c) {
  Polynomial p(variables);
  p.add_term(Exponent(variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(int variables, int index) {
  Polynomial p(variables);
  Exponent e(variables, 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Int& c) {
  if (static_cast<int>(e.size()) != vars_) throw Error(ErrorCode::InvalidArgument, "exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Int Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.vars_ != vars_) throw Error(ErrorCode::InvalidArgument, "polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.vars_ != vars_) throw Error(ErrorCode::InvalidArgument, "polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Int& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) throw Error(ErrorCode::InvalidArgument, "polynomial variable count mismatch");
  Polynomial out(a.vars_);
  Polynomial::Exponent e(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::derivative(int index) const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(index) == 0) continue;
    Exponent f = e;
    --f[index];
    out.add_term(f, c * e[index]);
  }
  return out;
}

Int Polynomial::evaluate(const IntVector& point) const {
  if (static_cast<int>(point.size()) != vars_) throw Error(ErrorCode::InvalidArgument, "evaluation point size mismatch");
  std::vector<std::vector<Int>> powers(vars_, std::vector<Int>{Int(1)});
  Int total = 0;
  for (const auto& [e, c] : terms_) {
    Int term = c;
    for (int i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      term *= pw[e[i]];
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != vars_) throw Error(ErrorCode::InvalidArgument, "substitution size mismatch");
  const int target = images.empty() ? 0 : images.front().variables();
  std::vector<std::vector<Polynomial>> powers(vars_);
  for (int i = 0; i < vars_; ++i) powers[i].push_back(constant(target, 1));
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (int i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      term = term * pw[e[i]];
    }
    out += term;
  }
  return out;
}

std::vector<Polynomial::Exponent> monomials(int k, int d) {
  std::vector<Polynomial::Exponent> out;
  Polynomial::Exponent e(k, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == k - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (k == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, d);
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const Int a = abs(c);
    bool any = false;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) any = true;
    if (a != 1 || !any) os << a;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      os << "x" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace siegel
