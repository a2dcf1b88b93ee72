#pragma once

#include "brp/poly.hpp"
#include "brp/scalar.hpp"
#include "brp/signature.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace brp {

/// f(y) = e^{-y} with e = d = 1; the non-polynomial field of the optimality probe.
struct ExpField {};

using Field = std::variant<PolyVectorField, ExpField>;

int state_dim(const Field& f);
int driver_dim(const Field& f);

struct SolveOptions {
  double tolerance = 1e-12;
  /// Use exact flows of scalar autonomous fields (degree <= 2 polynomials and
  /// the exponential field) when the driver is one-dimensional.
  bool allow_closed_form = true;
  int max_halvings = 22;
};

struct FlowResult {
  Vector<HighPrec> state;
  bool closed_form = false;
  /// Error budget of `state`: the tolerance for the stepper, precision floor otherwise.
  double error_budget = 0;
};

/// y_t given y_s for dy = sum_a f_a(y) dx^a along the piecewise-linear driver.
/// Classical RK4 on every linear piece, halving the step until successive
/// refinements differ by less than the tolerance componentwise.
FlowResult flow(const Field& f, const PiecewiseLinearPath& path, const Vector<HighPrec>& y_s,
                const Rational& s, const Rational& t, const SolveOptions& opt = {});

struct Trajectory {
  std::vector<Rational> times;
  std::vector<Vector<HighPrec>> states;
};

/// Solution at every knot of the path, started from y0 at the path start.
Trajectory solve_reference(const Field& f, const PiecewiseLinearPath& path,
                           const Vector<HighPrec>& y0, const SolveOptions& opt = {});

struct ExperimentConfig {
  Field field = ExpField{};
  std::optional<PiecewiseLinearPath> path;
  std::vector<Rational> y0;
  std::vector<int> degrees;        // expansion degrees N
  Rational base_point = 0;         // s
  std::vector<Rational> scales;    // interval lengths h >= 0, strictly decreasing
  double tolerance = 1e-12;
  double p = 1.0;
  bool allow_closed_form = true;

  /// Throws ValidationError describing the first violated constraint.
  void validate() const;
};

struct RemainderRow {
  int N = 0;
  Rational s, t;
  double omega = 0;
  double remainder = 0;
  /// Local log-log slope against the previous (larger) scale; NaN on the first row.
  double slope_window = 0;
  /// remainder (N+1)! / (N! omega^{N+1})
  double bound_ratio = 0;
  /// Error budget of the reference value behind `remainder`.
  double reference_error = 0;
};

/// R(h) = |y_{s+h} - B-series_N(f, X_{s,s+h}, y_s)| for every (N, h), sorted by N
/// ascending then h descending.
std::vector<RemainderRow> remainder_experiment(const ExperimentConfig& cfg);

/// Least-squares slope of log R against log omega. Rows with R at or below
/// 10^3 times their reference error budget are excluded.
double order_fit(const std::vector<RemainderRow>& rows);

/// Fitted slope per degree N.
std::vector<std::pair<int, double>> order_fit_by_degree(const std::vector<RemainderRow>& rows);

struct OptimalityRow {
  int N = 0;
  double t = 0;
  double remainder = 0;   // log(1+t) - sum_{n<=N} (-1)^{n+1} t^n / n
  double bound = 0;       // t^{N+1} / (N+1)
  double ratio = 0;
  double bseries_remainder = 0;  // same remainder through the tree expansion of e^{-y}
};

/// y' = e^{-y}, y0 = 0, x_t = t: exact remainders of the degree-N expansion
/// against the attained bound order t^{N+1}/(N+1), for N = 1..N_max.
std::vector<OptimalityRow> optimality_probe(int n_max, const Rational& t = Rational(1, 20));

/// `one` is not a valid constant for p > 1; it exists to exhibit the failure.
enum class NeoClassicalConstant { one, p, p_squared };

struct NeoClassicalResult {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// sum_j a^{j/p} b^{(n-j)/p} / (G(j/p+1) G((n-j)/p+1)) <= C (a+b)^{n/p} / G(n/p+1),
/// C = p (sharp) or p^2.
NeoClassicalResult neoclassical_check(double p, double a, double b, int n,
                                      NeoClassicalConstant constant = NeoClassicalConstant::p);

/// p^2 (1 + sum_{n>=2} (2/n)^{([p]+1)/p}).
double beta_p(double p);

/// Max over sampled points of the box of |partial derivatives| of order 0..order
/// of every field component. Stands in for the Lip(gamma) norm in reports.
double lip_surrogate(const PolyVectorField& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, int order, int samples_per_axis = 9);

}  // namespace brp
