#pragma once

#include "brp/error.hpp"
#include "brp/hopf.hpp"
#include "brp/lincomb.hpp"
#include "brp/scalar.hpp"
#include "brp/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <vector>

namespace brp {

/// Linear map on forests of degree <= N over labels 1..d. The coefficient of
/// the unit is fixed to 1 and never stored; absent entries are zero.
///
/// The same type houses characters of the CK algebra (signatures) and
/// grouplike elements of the GL algebra; which one a value is depends on how
/// it was built and is checked by is_character / is_grouplike.
template <class Scalar>
class TruncatedFunctional {
 public:
  using Map = std::map<Forest, Scalar>;

  TruncatedFunctional(int N, int d) : N_(N), d_(d) {
    if (N < 0 || d < 1) throw DomainError("truncated functional needs N >= 0, d >= 1");
  }

  /// The identity element epsilon.
  static TruncatedFunctional identity(int N, int d) { return TruncatedFunctional(N, d); }

  int truncation() const noexcept { return N_; }
  int labels() const noexcept { return d_; }

  Scalar operator()(const Forest& f) const {
    if (f.empty()) return Scalar(1);
    auto it = coeffs_.find(f);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }

  void set(const Forest& f, Scalar value) {
    if (f.empty()) {
      if (value != 1) throw DomainError("coefficient of the unit is fixed to 1");
      return;
    }
    if (f.degree() > N_) throw DomainError("forest " + render(f) + " exceeds truncation");
    if (f.max_label() > d_) throw DomainError("forest " + render(f) + " has labels outside 1..d");
    if (value == 0) {
      coeffs_.erase(f);
    } else {
      coeffs_.insert_or_assign(f, std::move(value));
    }
  }

  const Map& entries() const noexcept { return coeffs_; }

  friend bool operator==(const TruncatedFunctional& a, const TruncatedFunctional& b) {
    return a.N_ == b.N_ && a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int N_;
  int d_;
  Map coeffs_;
};

using FunctionalQ = TruncatedFunctional<Rational>;

template <class To, class From>
TruncatedFunctional<To> convert(const TruncatedFunctional<From>& a) {
  TruncatedFunctional<To> out(a.truncation(), a.labels());
  for (const auto& [f, c] : a.entries()) out.set(f, To(c));
  return out;
}

/// Character built from tree values by multiplicativity on every forest of degree <= N.
template <class Scalar>
TruncatedFunctional<Scalar> character_from_trees(const std::map<Tree, Scalar>& tree_values, int N,
                                                 int d) {
  TruncatedFunctional<Scalar> out(N, d);
  for (const Forest& f : forests_up_to(N, d)) {
    if (f.empty()) continue;
    Scalar v(1);
    for (const Tree& t : f.trees()) {
      auto it = tree_values.find(t);
      if (it == tree_values.end()) {
        v = Scalar(0);
        break;
      }
      v *= it->second;
    }
    out.set(f, v);
  }
  return out;
}

namespace detail {

template <class Scalar>
bool near(const Scalar& a, const Scalar& b, double tol) {
  if (tol == 0) return a == b;
  using std::abs;
  return static_cast<double>(abs(Scalar(a - b))) <= tol;
}

inline void require_same_shape(int n1, int d1, int n2, int d2) {
  if (n1 != n2 || d1 != d2) throw DomainError("truncation mismatch");
}

}  // namespace detail

/// Multiplicativity (a, r1)(a, r2) = (a, r1 r2) for |r1| + |r2| <= N. Checked as
/// (a, t1...tk) = prod (a, ti) on every forest, which is equivalent.
template <class Scalar>
bool is_character(const TruncatedFunctional<Scalar>& a, double tol = 0) {
  for (const Forest& f : forests_up_to(a.truncation(), a.labels())) {
    if (f.size() < 2) continue;
    Scalar prod(1);
    for (const Tree& t : f.trees()) prod *= a(Forest(t));
    if (!detail::near(prod, a(f), tol)) return false;
  }
  return true;
}

/// (ab, rho) = (a (x) b, D rho).
template <class Scalar>
TruncatedFunctional<Scalar> group_mul(const TruncatedFunctional<Scalar>& a,
                                      const TruncatedFunctional<Scalar>& b) {
  detail::require_same_shape(a.truncation(), a.labels(), b.truncation(), b.labels());
  TruncatedFunctional<Scalar> out(a.truncation(), a.labels());
  for (const Forest& rho : forests_up_to(a.truncation(), a.labels())) {
    if (rho.empty()) continue;
    Scalar v(0);
    for (const auto& [key, c] : ck_coproduct(rho)) v += scalar_cast<Scalar>(c) * a(key.first) * b(key.second);
    out.set(rho, v);
  }
  return out;
}

/// Solves (a a^{-1}, rho) = 0 degree by degree; the only term of D rho with rho
/// in the right slot is 1 (x) rho.
template <class Scalar>
TruncatedFunctional<Scalar> group_inv(const TruncatedFunctional<Scalar>& a) {
  TruncatedFunctional<Scalar> inv(a.truncation(), a.labels());
  for (const Forest& rho : forests_up_to(a.truncation(), a.labels())) {
    if (rho.empty()) continue;
    Scalar v(0);
    for (const auto& [key, c] : ck_coproduct(rho)) {
      if (key.second == rho) continue;
      v -= scalar_cast<Scalar>(c) * a(key.first) * inv(key.second);
    }
    inv.set(rho, v);
  }
  return inv;
}

/// max over stored forests of |(a, rho)|^{1/|rho|}.
template <class Scalar>
double homogeneous_norm(const TruncatedFunctional<Scalar>& a) {
  double m = 0;
  for (const auto& [f, c] : a.entries()) {
    const double v = std::abs(static_cast<double>(c));
    m = std::max(m, std::pow(v, 1.0 / f.degree()));
  }
  return m;
}

template <class Scalar>
TruncatedFunctional<Scalar> dilate(const Scalar& c, const TruncatedFunctional<Scalar>& a) {
  if (!(c > 0)) throw DomainError("dilation factor must be positive");
  TruncatedFunctional<Scalar> out(a.truncation(), a.labels());
  for (const auto& [f, v] : a.entries()) {
    Scalar s(1);
    for (int i = 0; i < f.degree(); ++i) s *= c;
    out.set(f, Scalar(s * v));
  }
  return out;
}

enum class RescaleDirection { to_grouplike, to_character };

/// Divides (to_grouplike) or multiplies (to_character) each coefficient by sigma(rho).
template <class Scalar>
TruncatedFunctional<Scalar> sigma_rescale(const TruncatedFunctional<Scalar>& a,
                                          RescaleDirection dir) {
  TruncatedFunctional<Scalar> out(a.truncation(), a.labels());
  for (const auto& [f, v] : a.entries()) {
    const Scalar s = scalar_cast<Scalar>(Rational(symmetry_factor(f)));
    out.set(f, dir == RescaleDirection::to_grouplike ? Scalar(v / s) : Scalar(v * s));
  }
  return out;
}

/// delta b == b (x) b on every pair of total degree <= N, with delta b
/// accumulated termwise from gl_coproduct.
template <class Scalar>
bool is_grouplike(const TruncatedFunctional<Scalar>& b, double tol = 0) {
  const auto forests = forests_up_to(b.truncation(), b.labels());
  TensorLinComb<Scalar> delta;
  for (const Forest& rho : forests) {
    const Scalar c = b(rho);
    if (c == 0) continue;
    for (const auto& [key, m] : gl_coproduct(rho)) delta.add(key.first, key.second, Scalar(scalar_cast<Scalar>(m) * c));
  }
  for (const Forest& l : forests) {
    for (const Forest& r : forests) {
      if (l.degree() + r.degree() > b.truncation()) continue;
      if (!detail::near(delta.coeff(l, r), Scalar(b(l) * b(r)), tol)) return false;
    }
  }
  return true;
}

/// Product of two functionals viewed as truncated elements sum (a, rho) rho of
/// the GL algebra. For sigma-rescaled characters this realises
/// rescale(ab) = rescale(a) * rescale(b).
template <class Scalar>
TruncatedFunctional<Scalar> gl_compose(const TruncatedFunctional<Scalar>& a,
                                       const TruncatedFunctional<Scalar>& b) {
  detail::require_same_shape(a.truncation(), a.labels(), b.truncation(), b.labels());
  const int N = a.truncation();
  TruncatedFunctional<Scalar> out(N, a.labels());
  std::map<Forest, Scalar> acc;
  const auto forests = forests_up_to(N, a.labels());
  for (const Forest& l : forests) {
    const Scalar al = a(l);
    if (al == 0) continue;
    for (const Forest& r : forests) {
      if (l.degree() + r.degree() > N) continue;
      const Scalar br = b(r);
      if (br == 0) continue;
      for (const auto& [rho, c] : gl_product(l, r)) acc[rho] += scalar_cast<Scalar>(c) * al * br;
    }
  }
  for (auto& [rho, v] : acc)
    if (!rho.empty()) out.set(rho, v);
  return out;
}

/// Max over sub-partitions of the grid of (sum ||X_{t_i,t_j}||^p)^{1/p}, by dynamic
/// programming over grid points. `increments[i]` is X_{t_i, t_{i+1}}.
template <class Scalar>
double p_variation(std::span<const TruncatedFunctional<Scalar>> increments, double p) {
  if (increments.empty()) throw DomainError("p-variation needs at least two grid points");
  if (!(p >= 1)) throw DomainError("p-variation requires p >= 1");
  const std::size_t n = increments.size();
  std::vector<double> best(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) {
    double b = 0;
    // X_{t_i, t_j} built right to left: X_{t_i,t_j} = X_{t_i,t_{i+1}} X_{t_{i+1},t_j}.
    TruncatedFunctional<Scalar> span_incr = increments[j - 1];
    for (std::size_t i = j; i-- > 0;) {
      if (i + 1 < j) span_incr = group_mul(increments[i], span_incr);
      b = std::max(b, best[i] + std::pow(homogeneous_norm(span_incr), p));
    }
    best[j] = b;
  }
  return std::pow(best[n], 1.0 / p);
}

extern template class TruncatedFunctional<Rational>;
extern template class TruncatedFunctional<double>;
extern template FunctionalQ group_mul(const FunctionalQ&, const FunctionalQ&);
extern template FunctionalQ group_inv(const FunctionalQ&);
extern template FunctionalQ gl_compose(const FunctionalQ&, const FunctionalQ&);

}  // namespace brp
