#include "brp/tree.hpp"

#include "brp/detail/planar.hpp"
#include "brp/error.hpp"
#include "brp/lincomb.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace brp {

Tree::Tree(Label root, std::vector<Tree> children)
    : label_(root), degree_(1), children_(std::move(children)) {
  std::sort(children_.begin(), children_.end());
  for (const Tree& c : children_) degree_ += c.degree_;
}

Label Tree::max_label() const noexcept {
  Label m = label_;
  for (const Tree& c : children_) m = std::max(m, c.max_label());
  return m;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  if (auto c = a.label_ <=> b.label_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children_.begin(), a.children_.end(),
                                                b.children_.begin(), b.children_.end());
}

Forest::Forest(Tree t) : degree_(t.degree()) { trees_.push_back(std::move(t)); }

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
  std::sort(trees_.begin(), trees_.end());
  for (const Tree& t : trees_) degree_ += t.degree();
}

Label Forest::max_label() const noexcept {
  Label m = 0;
  for (const Tree& t : trees_) m = std::max(m, t.max_label());
  return m;
}

Forest operator*(const Forest& a, const Forest& b) {
  Forest r;
  r.trees_.reserve(a.size() + b.size());
  std::merge(a.trees_.begin(), a.trees_.end(), b.trees_.begin(), b.trees_.end(),
             std::back_inserter(r.trees_));
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.trees_.begin(), a.trees_.end(),
                                                b.trees_.begin(), b.trees_.end());
}

// ---------------------------------------------------------------------------
// Parsing and rendering

namespace {

class Parser {
 public:
  Parser(std::string_view text, int d) : text_(text), d_(d) {}

  Forest forest() {
    skip_ws();
    if (consume_literal("()")) {
      skip_ws();
      expect_end();
      return Forest{};
    }
    std::vector<Tree> trees;
    trees.push_back(tree());
    while (true) {
      const std::size_t before = pos_;
      skip_ws();
      if (at_end()) break;
      if (pos_ == before) fail("expected whitespace between forest members");
      trees.push_back(tree());
    }
    return Forest(std::move(trees));
  }

  Tree single_tree() {
    skip_ws();
    Tree t = tree();
    skip_ws();
    expect_end();
    return t;
  }

 private:
  Tree tree() {
    const Label a = label();
    std::vector<Tree> children;
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      children.push_back(tree());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        skip_ws();
        children.push_back(tree());
        skip_ws();
      }
      if (peek() != ')') fail("expected ',' or ')'");
      ++pos_;
    }
    return Tree(a, std::move(children));
  }

  Label label() {
    const std::size_t start = pos_;
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000'000) fail("label too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a label");
    if (v < 1 || v > d_) {
      throw ParseError("label " + std::to_string(v) + " outside 1.." + std::to_string(d_), start);
    }
    return static_cast<Label>(v);
  }

  bool consume_literal(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

void render_into(const Tree& t, std::string& out) {
  out += std::to_string(t.root_label());
  if (t.children().empty()) return;
  out += '(';
  bool first = true;
  for (const Tree& c : t.children()) {
    if (!first) out += ',';
    first = false;
    render_into(c, out);
  }
  out += ')';
}

}  // namespace

Forest parse_forest(std::string_view text, int d) { return Parser(text, d).forest(); }
Tree parse_tree(std::string_view text, int d) { return Parser(text, d).single_tree(); }

std::string render(const Tree& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render(const Forest& f) {
  if (f.empty()) return "()";
  std::string out;
  for (const Tree& t : f.trees()) {
    if (!out.empty()) out += ' ';
    render_into(t, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry factor: n_1!...n_k! sigma(t_1)^n_1 ... sigma(t_k)^n_k over distinct members.

namespace {

BigInt multiset_symmetry(const std::vector<Tree>& sorted_trees) {
  BigInt s = 1;
  std::size_t i = 0;
  while (i < sorted_trees.size()) {
    std::size_t j = i;
    while (j < sorted_trees.size() && sorted_trees[j] == sorted_trees[i]) ++j;
    const BigInt inner = symmetry_factor(sorted_trees[i]);
    s *= factorial(static_cast<unsigned>(j - i));
    for (std::size_t k = i; k < j; ++k) s *= inner;
    i = j;
  }
  return s;
}

}  // namespace

BigInt symmetry_factor(const Tree& t) { return multiset_symmetry(t.children()); }
BigInt symmetry_factor(const Forest& f) { return multiset_symmetry(f.trees()); }

// ---------------------------------------------------------------------------
// Counting: t_n = d * f_{n-1}, and f is the Euler transform of t:
// n f_n = sum_{k=1..n} (sum_{m | k} m t_m) f_{n-k}.

namespace {

std::vector<BigInt> forest_counts(int n, int d) {
  std::vector<BigInt> t(n + 2, 0), f(n + 1, 0), c(n + 1, 0);
  f[0] = 1;
  for (int m = 1; m <= n; ++m) {
    t[m] = BigInt(d) * f[m - 1];
    for (int k = m; k <= n; k += m) c[k] += BigInt(m) * t[m];
    BigInt acc = 0;
    for (int k = 1; k <= m; ++k) acc += c[k] * f[m - k];
    f[m] = acc / m;
  }
  return f;
}

}  // namespace

BigInt count_trees(int n, int d) {
  if (n < 1 || d < 1) throw DomainError("count_trees requires n >= 1 and d >= 1");
  return BigInt(d) * forest_counts(n - 1, d)[n - 1];
}

BigInt count_forests(int n, int d) {
  if (n < 0 || d < 1) throw DomainError("count_forests requires n >= 0 and d >= 1");
  return forest_counts(n, d)[n];
}

// ---------------------------------------------------------------------------
// Enumeration by degree-recursive multiset composition.

namespace {

void check_cap(const BigInt& count, std::size_t cap, const char* what) {
  if (count > cap) {
    throw ResourceLimit(std::string(what) + " count " + count.str() + " exceeds cap " +
                        std::to_string(cap));
  }
}

/// Calls emit for every nondecreasing selection (by index into pool) with total degree `remaining`.
void multisets(const std::vector<Tree>& pool, std::size_t start, int remaining,
               std::vector<Tree>& current, const std::function<void(const std::vector<Tree>&)>& emit) {
  if (remaining == 0) {
    emit(current);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    if (pool[i].degree() > remaining) break;  // pool is sorted by degree first
    current.push_back(pool[i]);
    multisets(pool, i, remaining - pool[i].degree(), current, emit);
    current.pop_back();
  }
}

/// trees[k] holds all trees of degree k (k = 1..n), ascending.
std::vector<std::vector<Tree>> trees_by_degree(int n, int d) {
  std::vector<std::vector<Tree>> by_deg(n + 1);
  std::vector<Tree> pool;  // all trees of degree < current, ascending
  std::vector<Tree> current;
  for (int k = 1; k <= n; ++k) {
    auto& out = by_deg[k];
    for (Label a = 1; a <= d; ++a) {
      multisets(pool, 0, k - 1, current,
                [&](const std::vector<Tree>& kids) { out.emplace_back(a, kids); });
    }
    std::sort(out.begin(), out.end());
    pool.insert(pool.end(), out.begin(), out.end());
  }
  return by_deg;
}

}  // namespace

std::vector<Tree> enumerate_trees(int n, int d, std::size_t cap) {
  if (n < 1 || d < 1) throw DomainError("enumerate_trees requires n >= 1 and d >= 1");
  for (int k = 1; k <= n; ++k) check_cap(count_trees(k, d), cap, "tree");
  return std::move(trees_by_degree(n, d)[n]);
}

std::vector<Forest> enumerate_forests(int n, int d, std::size_t cap) {
  if (n < 0 || d < 1) throw DomainError("enumerate_forests requires n >= 0 and d >= 1");
  if (n == 0) return {Forest{}};
  check_cap(count_forests(n, d), cap, "forest");
  const auto by_deg = trees_by_degree(n, d);
  std::vector<Tree> pool;
  for (int k = 1; k <= n; ++k) pool.insert(pool.end(), by_deg[k].begin(), by_deg[k].end());
  std::vector<Forest> out;
  std::vector<Tree> current;
  multisets(pool, 0, n, current, [&](const std::vector<Tree>& ts) { out.emplace_back(ts); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Forest> forests_up_to(int n, int d, std::size_t cap) {
  std::vector<Forest> out;
  for (int k = 0; k <= n; ++k) {
    auto layer = enumerate_forests(k, d, cap);
    out.insert(out.end(), std::make_move_iterator(layer.begin()),
               std::make_move_iterator(layer.end()));
    if (out.size() > cap) check_cap(BigInt(out.size()), cap, "forest");
  }
  return out;
}

Tree relabel(const Tree& t, const std::vector<Label>& map) {
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(relabel(c, map));
  return Tree(map.at(t.root_label() - 1), std::move(kids));
}

Forest relabel(const Forest& f, const std::vector<Label>& map) {
  std::vector<Tree> ts;
  for (const Tree& t : f.trees()) ts.push_back(relabel(t, map));
  return Forest(std::move(ts));
}

Tree graft_root(Label a, const Forest& children) { return Tree(a, children.trees()); }

// ---------------------------------------------------------------------------
// Flat forests and grafting

namespace detail {

FlatForest FlatForest::from(const Forest& f) {
  FlatForest flat;
  for (const Tree& t : f.trees()) flat.append(t, -1);
  return flat;
}

int FlatForest::append(const Tree& t, int parent_vertex) {
  const int v = size();
  label.push_back(t.root_label());
  parent.push_back(parent_vertex);
  for (const Tree& c : t.children()) append(c, v);
  return v;
}

Forest FlatForest::canonical() const { return canonical(std::vector<bool>(label.size(), true)); }

Forest FlatForest::canonical(const std::vector<bool>& keep) const {
  const int n = size();
  std::vector<std::vector<int>> kids(n);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    const int p = parent[v];
    if (p < 0 || !keep[p]) {
      roots.push_back(v);
    } else {
      kids[p].push_back(v);
    }
  }
  std::function<Tree(int)> build = [&](int v) {
    std::vector<Tree> cs;
    cs.reserve(kids[v].size());
    for (int c : kids[v]) cs.push_back(build(c));
    return Tree(label[v], std::move(cs));
  };
  std::vector<Tree> ts;
  ts.reserve(roots.size());
  for (int r : roots) ts.push_back(build(r));
  return Forest(std::move(ts));
}

}  // namespace detail

LinCombQ graft(const Forest& left, const Forest& target) {
  if (left.empty()) return LinCombQ(target);
  if (target.empty()) throw DomainError("cannot graft a nonempty forest onto the empty forest");
  const auto base = detail::FlatForest::from(target);
  const int m = base.size();
  const auto& trees = left.trees();
  const std::size_t k = trees.size();
  std::vector<int> choice(k, 0);
  LinCombQ out;
  while (true) {
    auto flat = base;
    for (std::size_t i = 0; i < k; ++i) flat.append(trees[i], choice[i]);
    out.add(flat.canonical(), Rational(1));
    std::size_t i = 0;
    while (i < k && ++choice[i] == m) choice[i++] = 0;
    if (i == k) break;
  }
  return out;
}

LinCombQ graft(const LinCombQ& left, const LinCombQ& target) {
  LinCombQ out;
  for (const auto& [fl, cl] : left)
    for (const auto& [ft, ct] : target) out += Rational(cl * ct) * graft(fl, ft);
  return out;
}

}  // namespace brp
