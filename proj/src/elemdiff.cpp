#include "brp/elemdiff.hpp"

#include "brp/hopf.hpp"

namespace brp {

const PolyMap& ElementaryDifferentials::operator()(const Tree& tree) {
  if (auto it = memo_.find(tree); it != memo_.end()) return it->second;
  if (tree.max_label() > f_.driver_dim()) {
    throw DomainError("tree " + render(tree) + " has labels outside 1.." +
                      std::to_string(f_.driver_dim()));
  }
  std::vector<PolyMap> args;
  for (const Tree& c : tree.children()) args.push_back((*this)(c));
  PolyMap value = contract(f_.field(tree.root_label()), args);
  return memo_.emplace(tree, std::move(value)).first->second;
}

PolyMap elementary_differential(const PolyVectorField& f, const Tree& tree) {
  return ElementaryDifferentials(f)(tree);
}

PolyMap psi_apply(const PolyVectorField& f, const LinCombQ& forests, const PolyMap& phi) {
  ElementaryDifferentials fd(f);
  PolyMap out = PolyMap::zero(phi.dim());
  for (const auto& [forest, c] : forests) {
    std::vector<PolyMap> args;
    for (const Tree& t : forest.trees()) args.push_back(fd(t));
    out += c * contract(phi, args);
  }
  return out;
}

PolyMap f_word(const PolyVectorField& f, const Word& w) {
  ElementaryDifferentials fd(f);
  PolyMap F = PolyMap::identity(f.state_dim());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const PolyMap dir = fd(*it);
    F = contract(F, std::span<const PolyMap>(&dir, 1));
  }
  return F;
}

bool check_word_identity(const PolyVectorField& f, const Word& w) {
  LinCombQ product(Forest{});
  for (const Tree& t : w) product = gl_product(product, LinCombQ(Forest(t)));
  return f_word(f, w) == psi_apply(f, product, PolyMap::identity(f.state_dim()));
}

PolyMap f_circ(const PolyVectorField& f, int k) {
  if (f.driver_dim() != 1) throw DomainError("f_circ requires a scalar driver (d = 1)");
  if (k < 1) throw DomainError("f_circ requires k >= 1");
  const PolyMap& base = f.field(1);
  PolyMap g = base;
  for (int i = 1; i < k; ++i) g = contract(g, std::span<const PolyMap>(&base, 1));
  return g;
}

}  // namespace brp
