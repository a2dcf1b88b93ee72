#pragma once

#include "brp/chargroup.hpp"
#include "brp/error.hpp"
#include "brp/lincomb.hpp"
#include "brp/poly.hpp"
#include "brp/signature.hpp"
#include "brp/tree.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace brp {

/// Sequence of trees; the empty word is the unit eta.
using Word = std::vector<Tree>;

/// f(a) = f_a;  f([t1...tk]_a) = (d^k f_a)(f(t1), ..., f(tk)).
PolyMap elementary_differential(const PolyVectorField& f, const Tree& tree);

/// Memoised elementary differentials for one field.
class ElementaryDifferentials {
 public:
  explicit ElementaryDifferentials(const PolyVectorField& f) : f_(f) {}
  const PolyMap& operator()(const Tree& tree);
  const PolyVectorField& field() const noexcept { return f_; }

 private:
  const PolyVectorField& f_;
  std::map<Tree, PolyMap> memo_;
};

/// psi_f(t1...tk)(phi) = d^k phi(f(t1), ..., f(tk)), extended linearly.
PolyMap psi_apply(const PolyVectorField& f, const LinCombQ& forests, const PolyMap& phi);

/// F^eta = I,  F^{t w} = dF^w(f(t)).
PolyMap f_word(const PolyVectorField& f, const Word& w);

/// F^{t1...tk} == psi_f(t1 * ... * tk)(I), compared as exact polynomials.
bool check_word_identity(const PolyVectorField& f, const Word& w);

/// f^{o1} = f, f^{o(k+1)} = d f^{ok}(f). Requires a scalar driver (d = 1).
PolyMap f_circ(const PolyVectorField& f, int k);

/// f^{ok}(y) = (-1)^{k-1} (k-1)! e^{-ky} for f(y) = e^{-y}.
template <class T>
T exp_field_circ(int k, const T& y) {
  using std::exp;
  T fact(1);
  for (int i = 2; i < k; ++i) fact *= i;
  const T v = fact * exp(T(-k * y));
  return (k % 2 == 1) ? v : T(-v);
}

/// f(tree)(y) for f(y) = e^{-y} (e = d = 1): every derivative of e^{-y} is
/// +-e^{-y}, so f(tree)(y) = (-1)^{|tree|-1} e^{-|tree| y}.
template <class T>
T exp_field_elementary_differential(const Tree& tree, const T& y) {
  using std::exp;
  if (tree.max_label() > 1) throw DomainError("exponential field has a scalar driver");
  const int n = tree.degree();
  const T v = exp(T(-n * y));
  return (n % 2 == 1) ? v : T(-v);
}

/// y + sum_{tau, |tau| <= N} f(tau)(y) (X, tau) / sigma(tau), evaluated in T.
template <class T>
Vector<T> bseries_increment(const PolyVectorField& f, const FunctionalQ& sig, const Vector<T>& y,
                            int N) {
  if (sig.truncation() < N) throw DomainError("signature truncation smaller than expansion degree");
  if (y.size() != f.state_dim()) throw DomainError("state dimension mismatch");
  ElementaryDifferentials fd(f);
  Vector<T> out = y;
  for (int n = 1; n <= N; ++n) {
    for (const Tree& tau : enumerate_trees(n, f.driver_dim())) {
      const Rational weight = sig(Forest(tau)) / Rational(symmetry_factor(tau));
      if (weight == 0) continue;
      out += fd(tau)(y) * scalar_cast<T>(weight);
    }
  }
  return out;
}

/// Same expansion for the exponential field f(y) = e^{-y}.
template <class T>
T exp_field_bseries_increment(const FunctionalQ& sig, const T& y, int N) {
  if (sig.truncation() < N) throw DomainError("signature truncation smaller than expansion degree");
  T out = y;
  for (int n = 1; n <= N; ++n) {
    for (const Tree& tau : enumerate_trees(n, 1)) {
      const Rational weight = sig(Forest(tau)) / Rational(symmetry_factor(tau));
      if (weight != 0) out += exp_field_elementary_differential(tau, y) * scalar_cast<T>(weight);
    }
  }
  return out;
}

}  // namespace brp
