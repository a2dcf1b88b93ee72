#pragma once

#include "brp/scalar.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace brp {

/// Sparse multivariate polynomial in `vars` variables with exact coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int vars = 0) : vars_(vars) {}
  static Polynomial constant(int vars, const Rational& c);
  /// The coordinate function y_i (0-based).
  static Polynomial coordinate(int vars, int i);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  int vars() const noexcept { return vars_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial partial(int i) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  template <class T>
  T operator()(std::span<const T> y) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T m = scalar_cast<T>(c);
      for (int i = 0; i < vars_; ++i)
        for (int k = 0; k < e[i]; ++k) m *= y[i];
      acc += m;
    }
    return acc;
  }

 private:
  int vars_;
  std::map<Exponents, Rational> terms_;
};

std::string to_string(const Polynomial& p);

/// Polynomial map R^e -> R^e.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> components);
  static PolyMap identity(int e);
  static PolyMap zero(int e);

  int dim() const noexcept { return static_cast<int>(components_.size()); }
  const Polynomial& operator[](int i) const { return components_.at(i); }
  Polynomial& operator[](int i) { return components_.at(i); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  bool is_zero() const;

  PolyMap& operator+=(const PolyMap& o);
  PolyMap& operator*=(const Rational& c);
  friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
  friend PolyMap operator*(const Rational& c, PolyMap a) { return a *= c; }
  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.components_ == b.components_;
  }

  template <class T>
  Vector<T> operator()(const Vector<T>& y) const {
    Vector<T> out(dim());
    const std::span<const T> ys(y.data(), static_cast<std::size_t>(y.size()));
    for (int i = 0; i < dim(); ++i) out(i) = components_[i](ys);
    return out;
  }

 private:
  std::vector<Polynomial> components_;
};

/// (d^k phi)(y)(v_1(y), ..., v_k(y)): the k-th derivative of phi contracted with
/// the vector fields v_j. Only phi is differentiated.
Polynomial contract(const Polynomial& phi, std::span<const PolyMap> directions);
PolyMap contract(const PolyMap& phi, std::span<const PolyMap> directions);

/// f = (f_1, ..., f_d): R^e -> L(R^d, R^e) with polynomial components.
class PolyVectorField {
 public:
  PolyVectorField(int e, std::vector<PolyMap> fields);

  int state_dim() const noexcept { return e_; }
  int driver_dim() const noexcept { return static_cast<int>(fields_.size()); }
  /// f_a, 1-based as in the tree labels.
  const PolyMap& field(int a) const { return fields_.at(a - 1); }
  const std::vector<PolyMap>& fields() const noexcept { return fields_; }

 private:
  int e_;
  std::vector<PolyMap> fields_;
};

}  // namespace brp
