#include "brp/poly.hpp"

#include "brp/error.hpp"

#include <algorithm>
#include <numeric>

namespace brp {

Polynomial Polynomial::constant(int vars, const Rational& c) {
  Polynomial p(vars);
  p.add_term(Exponents(vars, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int vars, int i) {
  Exponents e(vars, 0);
  e.at(i) = 1;
  return monomial(e, Rational(1));
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int Polynomial::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != vars_) throw ValidationError("monomial arity mismatch");
  for (int k : e)
    if (k < 0) throw ValidationError("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::partial(int i) const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    out.add_term(f, c * e[i]);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.vars_ != vars_) throw ValidationError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.vars_ != vars_) throw ValidationError("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) throw ValidationError("polynomial arity mismatch");
  Polynomial out(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.vars_);
      for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    for (int i = 0; i < p.vars(); ++i) {
      if (e[i] == 0) continue;
      out += "*y" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

PolyMap::PolyMap(std::vector<Polynomial> components) : components_(std::move(components)) {
  for (const Polynomial& p : components_)
    if (p.vars() != dim()) throw ValidationError("polynomial map must be R^e -> R^e");
}

PolyMap PolyMap::identity(int e) {
  std::vector<Polynomial> cs;
  for (int i = 0; i < e; ++i) cs.push_back(Polynomial::coordinate(e, i));
  return PolyMap(std::move(cs));
}

PolyMap PolyMap::zero(int e) { return PolyMap(std::vector<Polynomial>(e, Polynomial(e))); }

bool PolyMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

PolyMap& PolyMap::operator+=(const PolyMap& o) {
  if (o.dim() != dim()) throw ValidationError("polynomial map dimension mismatch");
  for (int i = 0; i < dim(); ++i) components_[i] += o.components_[i];
  return *this;
}

PolyMap& PolyMap::operator*=(const Rational& c) {
  for (auto& p : components_) p *= c;
  return *this;
}

Polynomial contract(const Polynomial& phi, std::span<const PolyMap> directions) {
  if (directions.empty()) return phi;
  const PolyMap& v = directions.back();
  const auto rest = directions.first(directions.size() - 1);
  Polynomial out(phi.vars());
  for (int i = 0; i < phi.vars(); ++i) {
    if (v[i].is_zero()) continue;
    const Polynomial di = phi.partial(i);
    if (di.is_zero()) continue;
    out += contract(di, rest) * v[i];
  }
  return out;
}

PolyMap contract(const PolyMap& phi, std::span<const PolyMap> directions) {
  std::vector<Polynomial> cs;
  for (const Polynomial& p : phi.components()) cs.push_back(contract(p, directions));
  return PolyMap(std::move(cs));
}

PolyVectorField::PolyVectorField(int e, std::vector<PolyMap> fields)
    : e_(e), fields_(std::move(fields)) {
  if (e_ < 1 || fields_.empty()) throw ValidationError("vector field needs e >= 1 and d >= 1");
  for (const PolyMap& f : fields_)
    if (f.dim() != e_) throw ValidationError("vector field component has wrong dimension");
}

}  // namespace brp
