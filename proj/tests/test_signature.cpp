#include "brp/error.hpp"
#include "brp/hopf.hpp"
#include "brp/signature.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace brp;

namespace {

// Chen product with the tensor slots swapped: trunk on the left, branches on the
// right. Used to show the Chen test distinguishes the two orientations.
FunctionalQ flipped_mul(const FunctionalQ& a, const FunctionalQ& b) {
  FunctionalQ out(a.truncation(), a.labels());
  for (const Forest& rho : forests_up_to(a.truncation(), a.labels())) {
    if (rho.empty()) continue;
    Rational v = 0;
    for (const auto& [k, c] : ck_coproduct(rho)) v += c * a(k.second) * b(k.first);
    out.set(rho, v);
  }
  return out;
}

}  // namespace

TEST_CASE("path construction is validated") {
  using V = std::vector<std::vector<Rational>>;
  CHECK_THROWS_AS(PiecewiseLinearPath({Rational(0)}, V{{Rational(0)}}), ValidationError);
  CHECK_THROWS_AS(PiecewiseLinearPath({Rational(0), Rational(0)}, V{{Rational(0)}, {Rational(1)}}),
                  ValidationError);
  CHECK_THROWS_AS(PiecewiseLinearPath({Rational(0), Rational(1)}, V{{Rational(0)}, {Rational(1), Rational(2)}}),
                  ValidationError);
  const auto p = PiecewiseLinearPath::linear({Rational(1)});
  CHECK_THROWS_AS(branched_signature(p, Rational(0), Rational(2), 2), DomainError);
}

TEST_CASE("signature of x_t = t is one over the tree factorial") {
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), Rational(1));
  const auto sig = branched_signature(path, Rational(0), Rational(1), 5);
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : enumerate_trees(n, 1))
      CHECK(sig.value(Forest(t)) == Rational(BigInt(1), oracle::tree_factorial(t)));
  CHECK(sig.value(parse_forest("1(1,1)", 1)) == Rational(1, 3));
  CHECK(sig.value(parse_forest("1 1(1)", 1)) == Rational(1, 2));
}

TEST_CASE("straight lines in two dimensions factor through the direction") {
  const std::vector<Rational> v{Rational(2, 3), Rational(-1, 2)};
  const auto path = PiecewiseLinearPath::linear(v, Rational(0), Rational(1, 2));
  const auto sig = branched_signature(path, Rational(0), Rational(1, 2), 4);
  for (int n = 1; n <= 4; ++n) {
    for (const Tree& t : enumerate_trees(n, 2)) {
      Rational expect(BigInt(1), oracle::tree_factorial(t));
      for (int k = 0; k < n; ++k) expect /= 2;
      for (int a = 1; a <= 2; ++a)
        for (int k = 0; k < oracle::count_label(t, a); ++k) expect *= v[a - 1];
      CHECK(sig.value(Forest(t)) == expect);
    }
  }
}

TEST_CASE("signatures are characters and satisfy Chen's identity exactly") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const auto path = oracle::random_path(rng, 2, 3);
    const auto sig = branched_signature(path, path.start(), path.end(), 4);
    CHECK(is_character(sig.value));
    for (const Rational& u : path.times()) CHECK(chen_check(path, path.start(), u, path.end(), 4));
    CHECK(chen_check(path, Rational(1, 7), Rational(3, 5), Rational(5, 6), 3));
  }
}

TEST_CASE("flipped tensor orientation fails Chen's identity") {
  const PiecewiseLinearPath path({Rational(0), Rational(1), Rational(2)},
                                 {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)}});
  const auto a = branched_signature(path, Rational(0), Rational(1), 2).value;
  const auto b = branched_signature(path, Rational(1), Rational(2), 2).value;
  const auto whole = branched_signature(path, Rational(0), Rational(2), 2).value;
  CHECK(group_mul(a, b) == whole);
  CHECK_FALSE(flipped_mul(a, b) == whole);
}

TEST_CASE("the final label only sees its own driver component") {
  std::mt19937 rng(5);
  const auto path = oracle::random_path(rng, 2, 3);
  const auto swapped = path.permuted({2, 1});
  const auto sig = branched_signature(path, path.start(), path.end(), 4).value;
  const auto sig_swapped = branched_signature(swapped, path.start(), path.end(), 4).value;
  for (int n = 1; n <= 4; ++n)
    for (const Tree& t : enumerate_trees(n, 2))
      CHECK(sig(Forest(t)) == sig_swapped(Forest(relabel(t, {2, 1}))));
}

TEST_CASE("scaling the path dilates the signature") {
  std::mt19937 rng(9);
  const auto path = oracle::random_path(rng, 2, 2);
  for (const Rational c : {Rational(3), Rational(1, 2)}) {
    CHECK(branched_signature(path.scaled(c), path.start(), path.end(), 4).value ==
          dilate(c, branched_signature(path, path.start(), path.end(), 4).value));
  }
}

TEST_CASE("time reversal gives the group inverse") {
  std::mt19937 rng(3);
  const auto path = oracle::random_path(rng, 2, 3);
  const auto fwd = branched_signature(path, path.start(), path.end(), 3).value;
  const auto back = branched_signature(path.reversed(), path.start(), path.end(), 3).value;
  CHECK(back == group_inv(fwd));
}

TEST_CASE("zero-length intervals give the identity") {
  const auto path = PiecewiseLinearPath::linear({Rational(1), Rational(2)});
  CHECK(branched_signature(path, Rational(1, 3), Rational(1, 3), 3).value == FunctionalQ::identity(3, 2));
  CHECK(branched_signature(path, Rational(1), Rational(1), 2).value == FunctionalQ::identity(2, 2));
}

TEST_CASE("rescaled signatures are grouplike") {
  std::mt19937 rng(77);
  const auto path = oracle::random_path(rng, 2, 3);
  const auto sig = branched_signature(path, path.start(), path.end(), 4).value;
  CHECK(is_grouplike(sigma_rescale(sig, RescaleDirection::to_grouplike)));
}

TEST_CASE("word functional pairs the rescaled signature with GL products") {
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), Rational(1));
  const auto sig = branched_signature(path, Rational(0), Rational(1), 3);
  const Tree one = parse_tree("1", 1);
  // 1 * 1 = 1 1 + 1(1); rescaled values 1/2 and 1/2.
  CHECK(word_functional(sig, {one, one}) == 1);
  CHECK(word_functional(sig, {}) == 1);
  CHECK(word_functional(sig, {one}) == 1);

  const auto diag = PiecewiseLinearPath::linear({Rational(1), Rational(1)});
  const auto sig2 = branched_signature(diag, Rational(0), Rational(1), 2);
  CHECK(word_functional(sig2, {parse_tree("1", 2), parse_tree("2", 2)}) == Rational(3, 2));
  CHECK_THROWS_AS(word_functional(sig, {one, one, one, one}), DomainError);
}

TEST_CASE("factorial decay report is produced") {
  std::mt19937 rng(1);
  const auto path = oracle::random_path(rng, 2, 3);
  const auto alphabet = extract_free_generators(1, 2).alphabet(1);
  const auto report = factorial_decay_report(path, 3, 2, alphabet);
  CHECK(!report.rows.empty());
  CHECK(std::isfinite(report.fitted_constant));
  CHECK(report.beta > 0);
}
