#pragma once

#include "brp/chargroup.hpp"
#include "brp/hopf.hpp"
#include "brp/scalar.hpp"
#include "brp/tree.hpp"

#include <string>
#include <vector>

namespace brp {

/// Piecewise-linear path in R^d through rational knots.
class PiecewiseLinearPath {
 public:
  PiecewiseLinearPath(std::vector<Rational> times, std::vector<std::vector<Rational>> points);

  /// x_t = t * direction on [t0, t1].
  static PiecewiseLinearPath linear(std::vector<Rational> direction, Rational t0 = 0,
                                    Rational t1 = 1);

  int dim() const noexcept { return d_; }
  const std::vector<Rational>& times() const noexcept { return times_; }
  const std::vector<std::vector<Rational>>& points() const noexcept { return points_; }
  const Rational& start() const { return times_.front(); }
  const Rational& end() const { return times_.back(); }

  std::vector<Rational> at(const Rational& t) const;
  /// Velocity on the segment containing (t, t + dt); throws outside the domain.
  std::vector<Rational> slope_after(const Rational& t) const;

  /// Sum over segments of the Euclidean length of increments on [s, t].
  double one_variation(const Rational& s, const Rational& t) const;

  /// u -> x(start + end - u).
  PiecewiseLinearPath reversed() const;
  /// Every point multiplied by c.
  PiecewiseLinearPath scaled(const Rational& c) const;
  /// Coordinates permuted: new component a is old component perm[a - 1].
  PiecewiseLinearPath permuted(const std::vector<int>& perm) const;

 private:
  void require_inside(const Rational& s, const Rational& t) const;

  int d_;
  std::vector<Rational> times_;
  std::vector<std::vector<Rational>> points_;
};

/// Character of the CK algebra attributed to the interval [s, t].
struct BranchedSignature {
  Rational s, t;
  FunctionalQ value;
};

/// (X_{s,t}, [t1...tk]_a) = int_s^t prod_i (X_{s,u}, ti) dx^a_u, evaluated by exact
/// polynomial integration on each linear piece.
Rational tree_integral(const PiecewiseLinearPath& path, const Tree& tree, const Rational& s,
                       const Rational& t);

/// All tree integrals up to degree N, extended to forests by multiplicativity.
BranchedSignature branched_signature(const PiecewiseLinearPath& path, const Rational& s,
                                     const Rational& t, int N,
                                     std::size_t cap = default_enumeration_cap);

/// group_mul(sig(s,u), sig(u,t)) == sig(s,t) exactly.
bool chen_check(const PiecewiseLinearPath& path, const Rational& s, const Rational& u,
                const Rational& t, int N);

/// (T^X, t1...tk) = (sigma-rescaled X, t1 * ... * tk). The empty word pairs to 1.
Rational word_functional(const BranchedSignature& sig, const std::vector<Tree>& word);

struct DecayRow {
  Rational s, t;
  std::vector<Tree> word;
  int word_degree = 0;
  double value = 0;        // |(T^X_{s,t}, word)|
  double omega = 0;        // 1-variation of the driver on [s, t]
  double bound_shape = 0;  // omega^{|w|/p} / (|w|/p)!
  double ratio = 0;        // value / bound_shape (0 when omega = 0)
};

struct DecayReport {
  double beta = 0;
  /// Smallest c with value <= (c omega)^{|w|/p} / (beta (|w|/p)!) over all rows.
  double fitted_constant = 0;
  std::vector<DecayRow> rows;
};

/// Report-only table of |<T^X, w>| against omega^{|w|/p} / (beta_p (|w|/p)!) over the
/// dyadic subintervals of levels 0..levels of the path domain, for all words of
/// degree 1..N over `alphabet`.
DecayReport factorial_decay_report(const PiecewiseLinearPath& path, int N, int levels,
                                   const std::vector<Tree>& alphabet, double p = 1.0);

}  // namespace brp
