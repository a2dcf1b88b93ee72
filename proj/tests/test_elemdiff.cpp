#include "brp/elemdiff.hpp"
#include "brp/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <array>

using namespace brp;

namespace {

Polynomial y(int e, int i) { return Polynomial::coordinate(e, i); }
Polynomial c(int e, Rational v) { return Polynomial::constant(e, v); }

/// f(y) = y, e = d = 1.
PolyVectorField identity_field() { return PolyVectorField(1, {PolyMap({y(1, 0)})}); }

/// All words of total degree n over `letters`.
void words_of_degree(const std::vector<Tree>& letters, int n, Word& prefix, std::vector<Word>& out) {
  if (n == 0) {
    if (!prefix.empty()) out.push_back(prefix);
    return;
  }
  for (const Tree& t : letters) {
    if (t.degree() > n) continue;
    prefix.push_back(t);
    words_of_degree(letters, n - t.degree(), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("elementary differentials of a scalar quadratic field") {
  // f(y) = y^2: f(1) = y^2, f(1(1)) = 2y * y^2 = 2y^3, f(1(1,1)) = 2 y^4.
  const PolyVectorField f(1, {PolyMap({y(1, 0) * y(1, 0)})});
  const Polynomial y3 = y(1, 0) * y(1, 0) * y(1, 0);
  CHECK(elementary_differential(f, parse_tree("1(1)", 1))[0] == Rational(2) * y3);
  CHECK(elementary_differential(f, parse_tree("1(1,1)", 1))[0] == Rational(2) * (y3 * y(1, 0)));
  CHECK(elementary_differential(f, parse_tree("1(1(1))", 1))[0] == Rational(4) * (y3 * y(1, 0)));
  CHECK_THROWS_AS(elementary_differential(f, parse_tree("1(2)", 2)), DomainError);
}

TEST_CASE("elementary differentials do not depend on child order") {
  std::mt19937 rng(31);
  const PolyVectorField f = oracle::random_field(rng, 2, 2, 2);
  const Tree a(1, {Tree(2), Tree(1, {Tree(2)})});
  const Tree b(1, {Tree(1, {Tree(2)}), Tree(2)});
  CHECK(elementary_differential(f, a) == elementary_differential(f, b));
}

TEST_CASE("word identity F^w = psi_f(product)(I) on random quadratic fields") {
  std::mt19937 rng(41);
  std::vector<Tree> letters;
  for (int n = 1; n <= 2; ++n)
    for (const Tree& t : enumerate_trees(n, 2)) letters.push_back(t);
  for (int trial = 0; trial < 2; ++trial) {
    const PolyVectorField f = oracle::random_field(rng, 2, 2, 2);
    for (int n = 1; n <= 3; ++n) {
      std::vector<Word> words;
      Word prefix;
      words_of_degree(letters, n, prefix, words);
      for (const Word& w : words) CHECK(check_word_identity(f, w));
    }
  }
}

TEST_CASE("f-circ powers of the exponential field") {
  for (int k = 1; k <= 9; ++k) {
    double fact = 1;
    for (int i = 2; i < k; ++i) fact *= i;
    CHECK(std::abs(exp_field_circ(k, 0.0)) == doctest::Approx(fact));
  }
  CHECK(exp_field_circ(3, 0.5) == doctest::Approx(2 * std::exp(-1.5)));
  CHECK(exp_field_elementary_differential(parse_tree("1(1,1)", 1), 0.0) == doctest::Approx(1.0));
  CHECK(exp_field_elementary_differential(parse_tree("1(1)", 1), 1.0) == doctest::Approx(-std::exp(-2.0)));
}

TEST_CASE("polynomial f-circ matches the recursive definition") {
  // f = 1 + y: f^{ok} = 1 + y for every k.
  const PolyVectorField f(1, {PolyMap({c(1, 1) + y(1, 0)})});
  for (int k = 1; k <= 4; ++k) CHECK(f_circ(f, k)[0] == c(1, 1) + y(1, 0));
  // f = y^2: f^{o2} = 2 y^3, f^{o3} = 6 y^4.
  const PolyVectorField g(1, {PolyMap({y(1, 0) * y(1, 0)})});
  CHECK(f_circ(g, 3)[0] == Rational(6) * (y(1, 0) * y(1, 0) * y(1, 0) * y(1, 0)));
  CHECK_THROWS_AS(f_circ(PolyVectorField(1, {PolyMap({y(1, 0)}), PolyMap({y(1, 0)})}), 2), DomainError);
}

TEST_CASE("B-series of f(y) = y along x_t = t is the exponential series") {
  const auto path = PiecewiseLinearPath::linear({Rational(1)});
  const auto sig = branched_signature(path, Rational(0), Rational(1), 6);
  Vector<Rational> y0(1);
  y0(0) = 1;
  Rational partial = 0, fact = 1;
  for (int N = 0; N <= 6; ++N) {
    if (N > 0) fact *= N;
    partial += 1 / fact;
    if (N == 0) continue;
    CHECK(bseries_increment(identity_field(), sig.value, y0, N)(0) == partial);
  }
  CHECK(bseries_increment(identity_field(), sig.value, y0, 3)(0) == Rational(8, 3));
  CHECK_THROWS_AS(bseries_increment(identity_field(), sig.value, y0, 7), DomainError);
}

TEST_CASE("B-series of linear fields equals the truncated matrix exponential") {
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), Rational(1, 2));
  const auto sig = branched_signature(path, Rational(0), Rational(1, 2), 5);
  const int e = 2;
  // Nilpotent A = [[0, 1], [0, 0]] and diagonal A = diag(2, -1/3).
  const std::vector<std::array<Rational, 4>> mats{{0, 1, 0, 0}, {2, 0, 0, Rational(-1, 3)}};
  for (const auto& m : mats) {
    const PolyVectorField f(e, {PolyMap({Rational(m[0]) * y(e, 0) + Rational(m[1]) * y(e, 1),
                                         Rational(m[2]) * y(e, 0) + Rational(m[3]) * y(e, 1)})});
    Vector<Rational> y0(2);
    y0 << Rational(1, 2), Rational(-3);
    for (int N = 1; N <= 5; ++N) {
      // sum_{n<=N} (A h)^n / n! y0, h = 1/2
      Vector<Rational> term = y0, sum = y0;
      for (int n = 1; n <= N; ++n) {
        Vector<Rational> next(2);
        next(0) = (m[0] * term(0) + m[1] * term(1)) / 2 / n;
        next(1) = (m[2] * term(0) + m[3] * term(1)) / 2 / n;
        term = next;
        sum += term;
      }
      CHECK(bseries_increment(f, sig.value, y0, N) == sum);
    }
  }
}

TEST_CASE("symbolic derivatives match central differences") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const Polynomial p = oracle::random_polynomial(rng, 2, 4);
    const std::vector<double> pt{static_cast<double>(oracle::small_rational(rng)),
                                 static_cast<double>(oracle::small_rational(rng))};
    for (int i = 0; i < 2; ++i) {
      const double h = 1e-5;
      auto shifted = pt;
      shifted[i] += h;
      const double up = p(std::span<const double>(shifted));
      shifted[i] -= 2 * h;
      const double down = p(std::span<const double>(shifted));
      const double fd = (up - down) / (2 * h);
      CHECK(p.partial(i)(std::span<const double>(pt)) == doctest::Approx(fd).epsilon(1e-8).scale(1));
    }
  }
}

TEST_CASE("exponential-field B-series reproduces the log1p Taylor polynomial") {
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), Rational(1, 4));
  const auto sig = branched_signature(path, Rational(0), Rational(1, 4), 6);
  double partial = 0, tn = 1;
  for (int N = 1; N <= 6; ++N) {
    tn *= 0.25;
    partial += (N % 2 ? tn : -tn) / N;
    CHECK(exp_field_bseries_increment(sig.value, 0.0, N) == doctest::Approx(partial).epsilon(1e-14));
  }
}
