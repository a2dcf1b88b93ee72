#include "brp/harness.hpp"

#include "brp/elemdiff.hpp"
#include "brp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace brp {

int state_dim(const Field& f) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ExpField>) {
          return 1;
        } else {
          return v.state_dim();
        }
      },
      f);
}

int driver_dim(const Field& f) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ExpField>) {
          return 1;
        } else {
          return v.driver_dim();
        }
      },
      f);
}

namespace {

using HVec = Vector<HighPrec>;

const double precision_floor =
    10.0 * static_cast<double>(std::numeric_limits<HighPrec>::epsilon());

HVec to_hvec(const std::vector<Rational>& v) {
  HVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = HighPrec(v[i]);
  return out;
}

/// sum_a f_a(y) v_a
HVec velocity(const Field& f, const HVec& y, const std::vector<HighPrec>& v) {
  if (std::holds_alternative<ExpField>(f)) {
    HVec out(1);
    out(0) = exp(HighPrec(-y(0))) * v[0];
    return out;
  }
  const auto& pf = std::get<PolyVectorField>(f);
  HVec out = HVec::Zero(pf.state_dim());
  for (int a = 0; a < pf.driver_dim(); ++a)
    if (v[a] != 0) out += pf.field(a + 1)(y) * v[a];
  return out;
}

/// Flow of y' = f(y) for a scalar field over "time" dx; nullopt when no closed form applies.
std::optional<HighPrec> scalar_closed_form(const Field& f, const HighPrec& y, const HighPrec& dx) {
  if (std::holds_alternative<ExpField>(f)) {
    const HighPrec arg = exp(y) + dx;
    if (arg <= 0) throw NumericalError("exponential-field solution blows up");
    return log(arg);
  }
  const auto& pf = std::get<PolyVectorField>(f);
  if (pf.state_dim() != 1 || pf.driver_dim() != 1) return std::nullopt;
  const Polynomial& p = pf.field(1)[0];
  if (p.total_degree() > 2) return std::nullopt;
  HighPrec c[3] = {0, 0, 0};
  for (const auto& [e, q] : p.terms()) c[e[0]] = HighPrec(q);
  if (c[2] == 0) {
    if (c[1] == 0) return y + c[0] * dx;
    const HighPrec shift = c[0] / c[1];
    return (y + shift) * exp(HighPrec(c[1] * dx)) - shift;
  }
  const HighPrec disc = c[1] * c[1] - 4 * c[2] * c[0];
  if (disc > 0) {
    const HighPrec root = sqrt(disc);
    const HighPrec r1 = (-c[1] + root) / (2 * c[2]);
    const HighPrec r2 = (-c[1] - root) / (2 * c[2]);
    if (y == r2) return r2;
    const HighPrec k = (y - r1) / (y - r2) * exp(HighPrec(c[2] * (r1 - r2) * dx));
    const HighPrec k0 = (y - r1) / (y - r2);
    // (y - r1)/(y - r2) passing through 1 means y escaped to infinity.
    if ((k0 - 1) * (k - 1) <= 0 && k0 != 1) throw NumericalError("Riccati solution blows up");
    return (r1 - r2 * k) / (1 - k);
  }
  if (disc == 0) {
    const HighPrec u0 = y + c[1] / (2 * c[2]);
    const HighPrec den = 1 - c[2] * u0 * dx;
    if (den <= 0) throw NumericalError("Riccati solution blows up");
    return u0 / den - c[1] / (2 * c[2]);
  }
  const HighPrec q = sqrt(HighPrec(-disc)) / (2 * abs(c[2]));
  const HighPrec z0 = y + c[1] / (2 * c[2]);
  const HighPrec angle = atan(HighPrec(z0 / q)) + c[2] * q * dx;
  if (abs(angle) >= boost::math::constants::half_pi<HighPrec>()) {
    throw NumericalError("Riccati solution blows up");
  }
  return q * tan(angle) - c[1] / (2 * c[2]);
}

HVec rk4(const Field& f, const HVec& y0, const std::vector<Rational>& breaks,
         const std::vector<std::vector<HighPrec>>& slopes, long steps_per_piece) {
  HVec y = y0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const HighPrec h = HighPrec(Rational(breaks[k + 1] - breaks[k])) / steps_per_piece;
    const auto& v = slopes[k];
    for (long i = 0; i < steps_per_piece; ++i) {
      const HVec k1 = velocity(f, y, v);
      const HVec k2 = velocity(f, HVec(y + k1 * (h / 2)), v);
      const HVec k3 = velocity(f, HVec(y + k2 * (h / 2)), v);
      const HVec k4 = velocity(f, HVec(y + k3 * h), v);
      y += (k1 + k2 * 2 + k3 * 2 + k4) * (h / 6);
    }
  }
  return y;
}

}  // namespace

FlowResult flow(const Field& f, const PiecewiseLinearPath& path, const HVec& y_s, const Rational& s,
                const Rational& t, const SolveOptions& opt) {
  if (!(opt.tolerance > 0)) throw DomainError("reference tolerance must be positive");
  if (driver_dim(f) != path.dim()) throw DomainError("field and path driver dimensions differ");
  if (y_s.size() != state_dim(f)) throw DomainError("initial state has the wrong dimension");
  if (s > t || s < path.start() || t > path.end()) throw DomainError("flow interval outside path domain");
  FlowResult result;
  if (s == t) {
    result.state = y_s;
    result.closed_form = true;
    return result;
  }
  if (opt.allow_closed_form && path.dim() == 1 && state_dim(f) == 1) {
    // A one-dimensional driver enters only through x_t - x_s.
    const HighPrec dx(Rational(path.at(t)[0] - path.at(s)[0]));
    if (auto y = scalar_closed_form(f, y_s(0), dx)) {
      result.state = HVec::Constant(1, *y);
      result.closed_form = true;
      result.error_budget = precision_floor * std::max(1.0, std::abs(static_cast<double>(*y)));
      return result;
    }
  }

  std::vector<Rational> breaks{s};
  for (const Rational& k : path.times())
    if (k > s && k < t) breaks.push_back(k);
  breaks.push_back(t);
  std::vector<std::vector<HighPrec>> slopes;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    std::vector<HighPrec> v;
    for (const Rational& c : path.slope_after(breaks[k])) v.emplace_back(c);
    slopes.push_back(std::move(v));
  }

  HVec coarse = rk4(f, y_s, breaks, slopes, 1);
  long steps = 1;
  for (int halving = 0; halving < opt.max_halvings; ++halving) {
    steps *= 2;
    HVec fine = rk4(f, y_s, breaks, slopes, steps);
    const HVec diff = fine - coarse;
    HighPrec worst = 0;
    for (Eigen::Index i = 0; i < diff.size(); ++i) worst = std::max(worst, HighPrec(abs(diff(i))));
    if (!boost::multiprecision::isfinite(worst)) throw NumericalError("reference solution diverged");
    if (worst < opt.tolerance) {
      result.state = fine + diff / 15;  // Richardson step for a fourth-order method
      result.error_budget = opt.tolerance;
      return result;
    }
    coarse = std::move(fine);
  }
  throw NumericalError("reference solver did not reach tolerance within " +
                       std::to_string(opt.max_halvings) + " halvings");
}

Trajectory solve_reference(const Field& f, const PiecewiseLinearPath& path, const HVec& y0,
                           const SolveOptions& opt) {
  Trajectory traj;
  traj.times = path.times();
  traj.states.push_back(y0);
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k)
    traj.states.push_back(flow(f, path, traj.states.back(), traj.times[k], traj.times[k + 1], opt).state);
  return traj;
}

// ---------------------------------------------------------------------------
// Remainder experiment

void ExperimentConfig::validate() const {
  if (!path) throw ValidationError("experiment config needs a path");
  if (degrees.empty()) throw ValidationError("experiment config needs at least one degree N");
  for (int N : degrees)
    if (N < 1) throw ValidationError("expansion degree N must be at least 1");
  if (scales.empty()) throw ValidationError("experiment config needs scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] < 0) throw ValidationError("scales must be non-negative");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw ValidationError("scales must be strictly decreasing");
  }
  if (static_cast<int>(y0.size()) != state_dim(field)) throw ValidationError("y0 has the wrong dimension");
  if (driver_dim(field) != path->dim()) throw ValidationError("field and path driver dimensions differ");
  if (base_point < path->start() || base_point + scales.front() > path->end())
    throw ValidationError("base point and largest scale leave the path domain");
  if (!(tolerance > 0)) throw ValidationError("tolerance must be positive");
  if (p != 1.0) throw ValidationError("only p = 1 drivers are supported");
}

std::vector<RemainderRow> remainder_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& path = *cfg.path;
  SolveOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.allow_closed_form = cfg.allow_closed_form;
  const int n_max = *std::max_element(cfg.degrees.begin(), cfg.degrees.end());
  const HVec y_s = flow(cfg.field, path, to_hvec(cfg.y0), path.start(), cfg.base_point, opt).state;

  std::vector<RemainderRow> rows;
  for (const Rational& h : cfg.scales) {
    const Rational t = cfg.base_point + h;
    const auto sig = branched_signature(path, cfg.base_point, t, n_max);
    const double omega = path.one_variation(cfg.base_point, t);
    const FlowResult ref = flow(cfg.field, path, y_s, cfg.base_point, t, opt);
    for (int N : cfg.degrees) {
      HVec expansion;
      if (std::holds_alternative<ExpField>(cfg.field)) {
        expansion = HVec::Constant(1, exp_field_bseries_increment(sig.value, y_s(0), N));
      } else {
        expansion = bseries_increment(std::get<PolyVectorField>(cfg.field), sig.value, y_s, N);
      }
      const HVec diff = ref.state - expansion;
      HighPrec sq = 0;
      for (Eigen::Index i = 0; i < diff.size(); ++i) sq += diff(i) * diff(i);
      RemainderRow row;
      row.N = N;
      row.s = cfg.base_point;
      row.t = t;
      row.omega = omega;
      row.remainder = static_cast<double>(HighPrec(sqrt(sq)));
      row.reference_error = ref.error_budget;
      row.bound_ratio = omega > 0 ? row.remainder * (N + 1) / std::pow(omega, N + 1)
                                  : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RemainderRow& a, const RemainderRow& b) {
    if (a.N != b.N) return a.N < b.N;
    return a.t > b.t;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].slope_window = std::numeric_limits<double>::quiet_NaN();
    if (i > 0 && rows[i - 1].N == rows[i].N && rows[i].remainder > 0 && rows[i - 1].remainder > 0 &&
        rows[i].omega > 0 && rows[i].omega != rows[i - 1].omega) {
      rows[i].slope_window = (std::log(rows[i].remainder) - std::log(rows[i - 1].remainder)) /
                             (std::log(rows[i].omega) - std::log(rows[i - 1].omega));
    }
  }
  return rows;
}

double order_fit(const std::vector<RemainderRow>& rows) {
  if (rows.size() < 4) throw ValidationError("order_fit needs at least 4 rows");
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i].omega == rows[j].omega) throw ValidationError("order_fit needs distinct scales");
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (!(r.remainder > 1e3 * r.reference_error) || !(r.remainder > 0) || !(r.omega > 0)) continue;
    xs.push_back(std::log(r.omega));
    ys.push_back(std::log(r.remainder));
  }
  if (xs.size() < 2) throw DomainError("degenerate data: fewer than two rows above the noise floor");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::vector<std::pair<int, double>> order_fit_by_degree(const std::vector<RemainderRow>& rows) {
  std::vector<std::pair<int, double>> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].N == rows[i].N) ++j;
    out.emplace_back(rows[i].N, order_fit({rows.begin() + i, rows.begin() + j}));
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<OptimalityRow> optimality_probe(int n_max, const Rational& t) {
  if (n_max < 1 || n_max > 8) throw DomainError("optimality probe supports 1 <= N_max <= 8");
  if (!(t > 0)) throw DomainError("optimality probe needs t > 0");
  const HighPrec th(t);
  const HighPrec exact = log1p(th);
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), t);
  const auto sig = branched_signature(path, Rational(0), t, n_max);
  std::vector<OptimalityRow> rows;
  HighPrec partial = 0;
  HighPrec power = 1;
  for (int N = 1; N <= n_max; ++N) {
    power *= th;
    partial += (N % 2 == 1 ? power : HighPrec(-power)) / N;
    OptimalityRow row;
    row.N = N;
    row.t = static_cast<double>(th);
    const HighPrec rem = exact - partial;
    const HighPrec bound = power * th / (N + 1);
    row.remainder = static_cast<double>(HighPrec(abs(rem)));
    row.bound = static_cast<double>(bound);
    row.ratio = static_cast<double>(HighPrec(abs(rem) / bound));
    row.bseries_remainder = static_cast<double>(
        HighPrec(abs(HighPrec(exact - exp_field_bseries_increment(sig.value, HighPrec(0), N)))));
    rows.push_back(row);
  }
  return rows;
}

NeoClassicalResult neoclassical_check(double p, double a, double b, int n,
                                      NeoClassicalConstant constant) {
  if (!(p >= 1)) throw DomainError("neo-classical inequality needs p >= 1");
  if (!(a >= 0) || !(b >= 0)) throw DomainError("neo-classical inequality needs a, b >= 0");
  if (n < 0) throw DomainError("neo-classical inequality needs n >= 0");
  NeoClassicalResult r;
  for (int j = 0; j <= n; ++j) {
    const double u = j / p, w = (n - j) / p;
    r.lhs += std::pow(a, u) * std::pow(b, w) / (std::tgamma(u + 1) * std::tgamma(w + 1));
  }
  const double c = constant == NeoClassicalConstant::one ? 1.0
                   : constant == NeoClassicalConstant::p ? p
                                                         : p * p;
  r.rhs = c * std::pow(a + b, n / p) / std::tgamma(n / p + 1);
  r.holds = r.lhs <= r.rhs * (1 + 1e-12);
  return r;
}

double beta_p(double p) {
  if (!(p >= 1)) throw DomainError("beta_p needs p >= 1");
  const double q = (std::floor(p) + 1) / p;
  constexpr long max_terms = 1'000'000;
  double sum = 0;
  long n = 2;
  for (; n <= max_terms; ++n) {
    const double term = std::pow(2.0 / n, q);
    sum += term;
    if (term < 1e-15) break;
  }
  // sum_{k > n} (2/k)^q ~ int_{n + 1/2}^inf (2/x)^q dx
  const double tail = std::pow(2.0, q) * std::pow(n + 0.5, 1 - q) / (q - 1);
  return p * p * (1 + sum + tail);
}

double lip_surrogate(const PolyVectorField& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, int order, int samples_per_axis) {
  const int e = f.state_dim();
  if (static_cast<int>(lo.size()) != e || static_cast<int>(hi.size()) != e)
    throw DomainError("bounding box has the wrong dimension");
  if (samples_per_axis < 1 || order < 0) throw DomainError("lip_surrogate needs samples >= 1, order >= 0");

  std::vector<Polynomial> derivs;
  std::vector<Polynomial> layer;
  for (const PolyMap& fa : f.fields())
    for (const Polynomial& p : fa.components()) layer.push_back(p);
  for (int k = 0; k <= order; ++k) {
    derivs.insert(derivs.end(), layer.begin(), layer.end());
    std::vector<Polynomial> next;
    for (const Polynomial& p : layer)
      for (int i = 0; i < e; ++i) {
        Polynomial d = p.partial(i);
        if (!d.is_zero()) next.push_back(std::move(d));
      }
    layer = std::move(next);
  }

  double best = 0;
  std::vector<int> idx(e, 0);
  std::vector<double> y(e);
  while (true) {
    for (int i = 0; i < e; ++i) {
      const double w = samples_per_axis == 1 ? 0.5 : double(idx[i]) / (samples_per_axis - 1);
      y[i] = lo[i] + w * (hi[i] - lo[i]);
    }
    for (const Polynomial& p : derivs)
      best = std::max(best, std::abs(p(std::span<const double>(y))));
    int i = 0;
    while (i < e && ++idx[i] == samples_per_axis) idx[i++] = 0;
    if (i == e) break;
  }
  return best;
}

}  // namespace brp
