#pragma once

#include "brp/scalar.hpp"
#include "brp/tree.hpp"

#include <map>
#include <utility>

namespace brp {

/// Finite linear combination over the forest basis. Zero coefficients are never stored.
template <class Scalar>
class LinComb {
 public:
  using Map = std::map<Forest, Scalar>;

  LinComb() = default;
  LinComb(const Forest& f, Scalar c = Scalar(1)) { add(f, std::move(c)); }  // NOLINT

  void add(const Forest& f, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(f, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Scalar coeff(const Forest& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  const Map& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Scalar total_coefficient() const {
    Scalar s(0);
    for (const auto& [f, c] : terms_) s += c;
    return s;
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [f, c] : o.terms_) add(f, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [f, c] : o.terms_) add(f, Scalar(-c));
    return *this;
  }
  LinComb& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [f, c] : terms_) c *= s;
    }
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

/// Linear combination over ordered pairs of forests (the tensor square).
template <class Scalar>
class TensorLinComb {
 public:
  using Key = std::pair<Forest, Forest>;
  using Map = std::map<Key, Scalar>;

  void add(const Forest& left, const Forest& right, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Scalar coeff(const Forest& left, const Forest& right) const {
    auto it = terms_.find(Key{left, right});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  const Map& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Scalar total_coefficient() const {
    Scalar s(0);
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  TensorLinComb& operator+=(const TensorLinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }

  /// Product in the tensor square of the commutative forest algebra.
  friend TensorLinComb operator*(const TensorLinComb& a, const TensorLinComb& b) {
    TensorLinComb r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add(ka.first * kb.first, ka.second * kb.second, ca * cb);
    return r;
  }

  friend bool operator==(const TensorLinComb& a, const TensorLinComb& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Map terms_;
};

using LinCombQ = LinComb<Rational>;
using TensorLinCombQ = TensorLinComb<Rational>;

/// Sum over all ways of linking each root of `left` to a vertex of `target`:
/// |target|^k forests counted with multiplicity. Grafting onto the empty forest
/// is only defined for an empty `left`.
LinCombQ graft(const Forest& left, const Forest& target);
LinCombQ graft(const LinCombQ& left, const LinCombQ& target);

}  // namespace brp
