#include "brp/hopf.hpp"

#include "brp/detail/planar.hpp"
#include "brp/error.hpp"

#include <map>

namespace brp {

// ---------------------------------------------------------------------------
// Connes-Kreimer coproduct

namespace {

class CkRecursion {
 public:
  const TensorLinCombQ& tree(const Tree& t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    TensorLinCombQ branches;
    branches.add(Forest{}, Forest{}, Rational(1));
    for (const Tree& c : t.children()) branches = branches * tree(c);
    TensorLinCombQ out;
    out.add(Forest(t), Forest{}, Rational(1));
    for (const auto& [key, c] : branches) out.add(key.first, graft_root(t.root_label(), key.second), c);
    return memo_.emplace(t, std::move(out)).first->second;
  }

  TensorLinCombQ forest(const Forest& f) {
    TensorLinCombQ out;
    out.add(Forest{}, Forest{}, Rational(1));
    for (const Tree& t : f.trees()) out = out * tree(t);
    return out;
  }

 private:
  std::map<Tree, TensorLinCombQ> memo_;
};

}  // namespace

TensorLinCombQ ck_coproduct(const Forest& f) { return CkRecursion{}.forest(f); }

TensorLinCombQ ck_coproduct_cuts(const Forest& f) {
  const auto flat = detail::FlatForest::from(f);
  const int n = flat.size();
  TensorLinCombQ out;
  // cut[v]: the edge from v to its parent (virtual for roots) is removed.
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<bool> pruned(n, false);
    bool admissible = true;
    for (int v = 0; v < n && admissible; ++v) {
      const bool cut_here = (mask >> v) & 1UL;
      // Vertices are stored in preorder, so the parent is already decided.
      const bool below_cut = flat.parent[v] >= 0 && pruned[flat.parent[v]];
      if (cut_here && below_cut) admissible = false;
      pruned[v] = cut_here || below_cut;
    }
    if (!admissible) continue;
    std::vector<bool> trunk(n);
    for (int v = 0; v < n; ++v) trunk[v] = !pruned[v];
    out.add(flat.canonical(pruned), flat.canonical(trunk), Rational(1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grossman-Larson structure

LinCombQ gl_product(const Forest& a, const Forest& b) {
  const auto base = detail::FlatForest::from(b);
  const int m = base.size();
  const auto& trees = a.trees();
  const std::size_t k = trees.size();
  // choice[i] in -1..m-1; -1 leaves tree i free.
  std::vector<int> choice(k, -1);
  LinCombQ out;
  while (true) {
    auto flat = base;
    for (std::size_t i = 0; i < k; ++i) flat.append(trees[i], choice[i]);
    out.add(flat.canonical(), Rational(1));
    std::size_t i = 0;
    while (i < k && ++choice[i] == m) choice[i++] = -1;
    if (i == k) break;
  }
  return out;
}

LinCombQ gl_product(const LinCombQ& a, const LinCombQ& b) {
  LinCombQ out;
  for (const auto& [fa, ca] : a)
    for (const auto& [fb, cb] : b) out += Rational(ca * cb) * gl_product(fa, fb);
  return out;
}

TensorLinCombQ gl_coproduct(const Forest& f) {
  const auto& trees = f.trees();
  const std::size_t k = trees.size();
  TensorLinCombQ out;
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    std::vector<Tree> in, rest;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1UL ? in : rest).push_back(trees[i]);
    out.add(Forest(std::move(in)), Forest(std::move(rest)), Rational(1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Duality between the CK coproduct and the GL product

namespace {

class SigmaCache {
 public:
  const BigInt& operator()(const Forest& f) {
    auto it = memo_.find(f);
    if (it == memo_.end()) it = memo_.emplace(f, symmetry_factor(f)).first;
    return it->second;
  }

 private:
  std::map<Forest, BigInt> memo_;
};

void compare(const Forest& rho, const TensorLinCombQ& coproduct, const TensorLinCombQ& dual,
             DualityReport& report) {
  for (const auto& [key, c] : coproduct) {
    const Rational other = dual.coeff(key.first, key.second);
    if (other != c) report.discrepancies.push_back({rho, key.first, key.second, c, other});
  }
  for (const auto& [key, c] : dual) {
    if (coproduct.coeff(key.first, key.second) == 0)
      report.discrepancies.push_back({rho, key.first, key.second, Rational(0), c});
  }
  ++report.forests_checked;
}

}  // namespace

DualityReport verify_duality(const Forest& rho) {
  DualityReport report;
  const int n = rho.degree();
  const int d = std::max(rho.max_label(), 1);
  SigmaCache sigma;
  TensorLinCombQ dual;
  for (int k = 0; k <= n; ++k) {
    const auto lefts = enumerate_forests(k, d);
    const auto rights = enumerate_forests(n - k, d);
    for (const Forest& l : lefts) {
      for (const Forest& r : rights) {
        ++report.pairs_checked;
        const Rational pairing = gl_product(l, r).coeff(rho);
        if (pairing == 0) continue;
        dual.add(l, r, Rational(sigma(rho)) / Rational(sigma(l) * sigma(r)) * pairing);
      }
    }
  }
  compare(rho, ck_coproduct(rho), dual, report);
  return report;
}

DualityReport verify_duality_up_to(int n, int d) {
  DualityReport report;
  SigmaCache sigma;
  std::vector<std::vector<Forest>> layers;
  for (int k = 0; k <= n; ++k) layers.push_back(enumerate_forests(k, d));
  for (int m = 1; m <= n; ++m) {
    std::map<Forest, TensorLinCombQ> dual;
    for (int k = 0; k <= m; ++k) {
      for (const Forest& l : layers[k]) {
        for (const Forest& r : layers[m - k]) {
          ++report.pairs_checked;
          const Rational weight = Rational(1) / Rational(sigma(l) * sigma(r));
          for (const auto& [rho, c] : gl_product(l, r))
            dual[rho].add(l, r, Rational(sigma(rho)) * weight * c);
        }
      }
    }
    for (const Forest& rho : layers[m]) compare(rho, ck_coproduct(rho), dual[rho], report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Free generators of the GL algebra

std::vector<BigInt> free_generator_counts(int maxdeg, int d) {
  if (maxdeg < 1) throw DomainError("free_generator_counts requires maxdeg >= 1");
  std::vector<BigInt> h(maxdeg + 1), inv(maxdeg + 1);
  for (int k = 0; k <= maxdeg; ++k) h[k] = count_forests(k, d);
  inv[0] = 1;
  for (int k = 1; k <= maxdeg; ++k) {
    BigInt acc = 0;
    for (int j = 1; j <= k; ++j) acc += h[j] * inv[k - j];
    inv[k] = -acc;
  }
  std::vector<BigInt> l(maxdeg);
  for (int k = 1; k <= maxdeg; ++k) l[k - 1] = -inv[k];
  return l;
}

namespace {

/// Incremental exact row echelon form over dense rational vectors.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  /// Returns true if v was independent of the current rows (and adds it).
  bool insert(std::vector<Rational> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational factor = v[pivots_[i]];
      if (factor == 0) continue;
      const auto& row = rows_[i];
      for (std::size_t j = pivots_[i]; j < dim_; ++j)
        if (row[j] != 0) v[j] -= factor * row[j];
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    const Rational lead = v[p];
    for (std::size_t j = p; j < dim_; ++j) v[j] /= lead;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::vector<Tree> GeneratorTable::alphabet(int maxdeg) const {
  std::vector<Tree> out;
  for (int k = 1; k <= std::min(maxdeg, max_degree()); ++k)
    out.insert(out.end(), generators[k - 1].begin(), generators[k - 1].end());
  return out;
}

GeneratorTable extract_free_generators(int maxdeg, int d, std::size_t dimension_cap) {
  if (maxdeg < 1 || d < 1) throw DomainError("extract_free_generators requires maxdeg, d >= 1");
  const auto predicted = free_generator_counts(maxdeg, d);
  GeneratorTable table;
  table.d = d;
  // words[k]: GL products of all words (length >= 1) of total degree k in the chosen generators.
  std::vector<std::vector<LinCombQ>> words(maxdeg + 1);
  for (int n = 1; n <= maxdeg; ++n) {
    const BigInt dim_big = count_forests(n, d);
    if (dim_big > dimension_cap) {
      throw ResourceLimit("degree " + std::to_string(n) + " dimension " + dim_big.str() +
                          " exceeds cap " + std::to_string(dimension_cap));
    }
    const auto basis = enumerate_forests(n, d);
    std::map<Forest, std::size_t> column;
    for (std::size_t i = 0; i < basis.size(); ++i) column.emplace(basis[i], i);
    auto to_vector = [&](const LinCombQ& x) {
      std::vector<Rational> v(basis.size());
      for (const auto& [f, c] : x) v.at(column.at(f)) = c;
      return v;
    };

    Echelon span(basis.size());
    std::size_t products = 0;
    for (int i = 1; i < n; ++i) {
      for (const Tree& g : table.generators[i - 1]) {
        for (const LinCombQ& rest : words[n - i]) {
          LinCombQ w = gl_product(LinCombQ(Forest(g)), rest);
          ++products;
          if (!span.insert(to_vector(w))) {
            throw CheckFailure("GL products of generators are dependent in degree " +
                               std::to_string(n));
          }
          words[n].push_back(std::move(w));
        }
      }
    }

    std::vector<Tree> chosen;
    for (const Tree& t : enumerate_trees(n, d)) {
      if (span.rank() == basis.size()) break;
      if (span.insert(to_vector(LinCombQ(Forest(t))))) {
        chosen.push_back(t);
        words[n].emplace_back(Forest(t));
      }
    }
    if (span.rank() != basis.size() || BigInt(chosen.size()) != predicted[n - 1]) {
      throw CheckFailure("degree " + std::to_string(n) + ": extracted " +
                         std::to_string(chosen.size()) + " generators over " +
                         std::to_string(products) + " products, series predicts " +
                         predicted[n - 1].str());
    }
    table.counts.push_back(BigInt(chosen.size()));
    table.generators.push_back(std::move(chosen));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Word counts

bool WordCountReport::all_bounds_hold() const {
  for (bool b : bound_holds)
    if (!b) return false;
  return true;
}

int smallest_kp(const std::vector<BigInt>& l) {
  for (int k = 1;; ++k) {
    Rational s = 0;
    Rational power = 1;
    for (const BigInt& li : l) {
      power /= k;
      s += Rational(li) * power;
    }
    if (s <= 1) return k;
  }
}

WordCountReport word_counts(const std::vector<BigInt>& l, int d, int n) {
  if (l.empty()) throw DomainError("word_counts needs generator counts for degree >= 1");
  if (d < 1 || n < 0) throw DomainError("word_counts requires d >= 1 and n >= 0");
  WordCountReport r;
  r.d = d;
  r.kp = smallest_kp(l);
  const int top = static_cast<int>(l.size());
  r.counts.assign(n + 1, 0);
  r.counts[0] = 1;
  for (int k = 1; k <= n; ++k) {
    BigInt dpow = 1;
    for (int i = 1; i <= std::min(k, top); ++i) {
      dpow *= d;
      r.counts[k] += l[i - 1] * dpow * r.counts[k - i];
    }
  }
  BigInt bound = 1;
  for (int k = 0; k <= n; ++k) {
    r.bound_holds.push_back(r.counts[k] <= bound);
    bound *= BigInt(r.kp) * d;
  }
  return r;
}

}  // namespace brp
