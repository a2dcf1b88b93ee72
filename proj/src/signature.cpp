#include "brp/signature.hpp"

#include "brp/error.hpp"
#include "brp/harness.hpp"

#include <cmath>
#include <map>

namespace brp {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<Rational> times,
                                         std::vector<std::vector<Rational>> points)
    : d_(0), times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2) throw ValidationError("path needs at least two knots");
  if (times_.size() != points_.size()) throw ValidationError("path times and points differ in length");
  d_ = static_cast<int>(points_.front().size());
  if (d_ < 1) throw ValidationError("path dimension must be at least 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (static_cast<int>(points_[i].size()) != d_) throw ValidationError("path points differ in dimension");
    if (i > 0 && !(times_[i - 1] < times_[i])) throw ValidationError("path times must be strictly increasing");
  }
}

PiecewiseLinearPath PiecewiseLinearPath::linear(std::vector<Rational> direction, Rational t0,
                                                Rational t1) {
  std::vector<Rational> p0, p1;
  for (const Rational& v : direction) {
    p0.push_back(v * t0);
    p1.push_back(v * t1);
  }
  return PiecewiseLinearPath({t0, t1}, {p0, p1});
}

void PiecewiseLinearPath::require_inside(const Rational& s, const Rational& t) const {
  if (s > t || s < start() || t > end()) {
    throw DomainError("interval [" + to_string(s) + ", " + to_string(t) + "] outside path domain");
  }
}

std::vector<Rational> PiecewiseLinearPath::at(const Rational& t) const {
  require_inside(t, t);
  std::size_t j = 0;
  while (j + 2 < times_.size() && times_[j + 1] <= t) ++j;
  const Rational w = (t - times_[j]) / (times_[j + 1] - times_[j]);
  std::vector<Rational> x(d_);
  for (int a = 0; a < d_; ++a) x[a] = points_[j][a] + w * (points_[j + 1][a] - points_[j][a]);
  return x;
}

std::vector<Rational> PiecewiseLinearPath::slope_after(const Rational& t) const {
  if (t < start() || t >= end()) throw DomainError("no segment after " + to_string(t));
  std::size_t j = 0;
  while (times_[j + 1] <= t) ++j;
  const Rational dt = times_[j + 1] - times_[j];
  std::vector<Rational> v(d_);
  for (int a = 0; a < d_; ++a) v[a] = (points_[j + 1][a] - points_[j][a]) / dt;
  return v;
}

namespace {

/// Breakpoints s = u_0 < u_1 < ... < u_m = t at the knots strictly inside (s, t).
std::vector<Rational> pieces(const std::vector<Rational>& knots, const Rational& s, const Rational& t) {
  std::vector<Rational> u{s};
  for (const Rational& k : knots)
    if (k > s && k < t) u.push_back(k);
  u.push_back(t);
  return u;
}

}  // namespace

double PiecewiseLinearPath::one_variation(const Rational& s, const Rational& t) const {
  require_inside(s, t);
  if (s == t) return 0.0;
  const auto u = pieces(times_, s, t);
  double total = 0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const auto v = slope_after(u[i]);
    double sq = 0;
    for (const Rational& c : v) sq += static_cast<double>(c * c);
    total += std::sqrt(sq) * static_cast<double>(Rational(u[i + 1] - u[i]));
  }
  return total;
}

PiecewiseLinearPath PiecewiseLinearPath::reversed() const {
  std::vector<Rational> ts;
  std::vector<std::vector<Rational>> ps;
  const Rational sum = start() + end();
  for (std::size_t i = times_.size(); i-- > 0;) {
    ts.push_back(sum - times_[i]);
    ps.push_back(points_[i]);
  }
  return PiecewiseLinearPath(std::move(ts), std::move(ps));
}

PiecewiseLinearPath PiecewiseLinearPath::scaled(const Rational& c) const {
  auto ps = points_;
  for (auto& p : ps)
    for (auto& x : p) x *= c;
  return PiecewiseLinearPath(times_, std::move(ps));
}

PiecewiseLinearPath PiecewiseLinearPath::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != d_) throw ValidationError("permutation size mismatch");
  auto ps = points_;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (int a = 0; a < d_; ++a) ps[i][a] = points_[i].at(perm[a] - 1);
  return PiecewiseLinearPath(times_, std::move(ps));
}

// ---------------------------------------------------------------------------
// Tree integrals

namespace {

/// Dense univariate polynomial in the local variable r = u - (piece start).
using UPoly = std::vector<Rational>;

UPoly multiply(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Rational evaluate(const UPoly& p, const Rational& r) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * r + p[i];
  return v;
}

/// Memoised per-piece polynomials of u -> (X_{s,u}, tree) on one interval.
class TreeIntegrator {
 public:
  TreeIntegrator(const PiecewiseLinearPath& path, const Rational& s, const Rational& t)
      : breaks_(pieces(path.times(), s, t)) {
    if (s == t) return;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      lengths_.push_back(breaks_[i + 1] - breaks_[i]);
      slopes_.push_back(path.slope_after(breaks_[i]));
    }
  }

  const std::vector<UPoly>& polys(const Tree& tree) {
    if (auto it = memo_.find(tree); it != memo_.end()) return it->second;
    std::vector<const std::vector<UPoly>*> kids;
    for (const Tree& c : tree.children()) kids.push_back(&polys(c));
    const int a = tree.root_label() - 1;
    std::vector<UPoly> out;
    Rational start = 0;
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
      if (a >= static_cast<int>(slopes_[k].size())) throw DomainError("tree label exceeds path dimension");
      UPoly integrand{Rational(1)};
      for (const auto* kp : kids) integrand = multiply(integrand, (*kp)[k]);
      UPoly p(integrand.size() + 1);
      p[0] = start;
      for (std::size_t i = 0; i < integrand.size(); ++i)
        p[i + 1] = slopes_[k][a] * integrand[i] / static_cast<long>(i + 1);
      start = evaluate(p, lengths_[k]);
      out.push_back(std::move(p));
    }
    values_[tree] = start;
    return memo_.emplace(tree, std::move(out)).first->second;
  }

  Rational value(const Tree& tree) {
    polys(tree);
    return values_.at(tree);
  }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> lengths_;
  std::vector<std::vector<Rational>> slopes_;
  std::map<Tree, std::vector<UPoly>> memo_;
  std::map<Tree, Rational> values_;
};

}  // namespace

Rational tree_integral(const PiecewiseLinearPath& path, const Tree& tree, const Rational& s,
                       const Rational& t) {
  if (tree.max_label() > path.dim()) throw DomainError("tree label exceeds path dimension");
  path.at(s);
  path.at(t);
  if (s > t) throw DomainError("interval endpoints out of order");
  return TreeIntegrator(path, s, t).value(tree);
}

BranchedSignature branched_signature(const PiecewiseLinearPath& path, const Rational& s,
                                     const Rational& t, int N, std::size_t cap) {
  if (N < 1) throw DomainError("signature truncation must be at least 1");
  if (s > t || s < path.start() || t > path.end()) {
    throw DomainError("interval [" + to_string(s) + ", " + to_string(t) + "] outside path domain");
  }
  const int d = path.dim();
  if (count_forests(N, d) > cap) throw ResourceLimit("signature forest count exceeds cap");
  TreeIntegrator integ(path, s, t);
  std::map<Tree, Rational> trees;
  for (int n = 1; n <= N; ++n)
    for (const Tree& tr : enumerate_trees(n, d, cap)) trees.emplace(tr, integ.value(tr));
  return {s, t, character_from_trees(trees, N, d)};
}

bool chen_check(const PiecewiseLinearPath& path, const Rational& s, const Rational& u,
                const Rational& t, int N) {
  if (!(s <= u && u <= t)) throw DomainError("chen_check requires s <= u <= t");
  const auto left = branched_signature(path, s, u, N);
  const auto right = branched_signature(path, u, t, N);
  const auto whole = branched_signature(path, s, t, N);
  return group_mul(left.value, right.value) == whole.value;
}

Rational word_functional(const BranchedSignature& sig, const std::vector<Tree>& word) {
  int degree = 0;
  for (const Tree& t : word) degree += t.degree();
  if (degree > sig.value.truncation()) {
    throw DomainError("word degree " + std::to_string(degree) + " exceeds signature truncation");
  }
  LinCombQ product(Forest{});
  for (const Tree& t : word) product = gl_product(product, LinCombQ(Forest(t)));
  const auto bar = sigma_rescale(sig.value, RescaleDirection::to_grouplike);
  Rational v = 0;
  for (const auto& [f, c] : product) v += c * bar(f);
  return v;
}

// ---------------------------------------------------------------------------

DecayReport factorial_decay_report(const PiecewiseLinearPath& path, int N, int levels,
                                   const std::vector<Tree>& alphabet, double p) {
  if (N < 1 || levels < 0) throw DomainError("decay report needs N >= 1 and levels >= 0");
  DecayReport report;
  report.beta = beta_p(p);

  // All words of degree 1..N over the alphabet.
  std::vector<std::vector<Tree>> words;
  std::vector<std::vector<Tree>> frontier{{}};
  std::vector<int> frontier_deg{0};
  while (!frontier.empty()) {
    std::vector<std::vector<Tree>> next;
    std::vector<int> next_deg;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (const Tree& letter : alphabet) {
        const int deg = frontier_deg[i] + letter.degree();
        if (deg > N) continue;
        auto w = frontier[i];
        w.push_back(letter);
        words.push_back(w);
        next.push_back(std::move(w));
        next_deg.push_back(deg);
      }
    }
    frontier = std::move(next);
    frontier_deg = std::move(next_deg);
  }

  const Rational T0 = path.start();
  const Rational len = path.end() - path.start();
  for (int level = 0; level <= levels; ++level) {
    const long parts = 1L << level;
    for (long j = 0; j < parts; ++j) {
      const Rational s = T0 + len * Rational(j, parts);
      const Rational t = T0 + len * Rational(j + 1, parts);
      const auto sig = branched_signature(path, s, t, N);
      const double omega = path.one_variation(s, t);
      for (const auto& w : words) {
        DecayRow row;
        row.s = s;
        row.t = t;
        row.word = w;
        for (const Tree& l : w) row.word_degree += l.degree();
        row.value = std::abs(static_cast<double>(word_functional(sig, w)));
        row.omega = omega;
        const double q = row.word_degree / p;
        row.bound_shape = std::pow(omega, q) / std::tgamma(q + 1.0);
        row.ratio = row.bound_shape > 0 ? row.value / row.bound_shape : 0.0;
        if (omega > 0 && row.value > 0) {
          const double c = std::pow(row.value * report.beta * std::tgamma(q + 1.0), 1.0 / q) / omega;
          report.fitted_constant = std::max(report.fitted_constant, c);
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace brp
