#include "brp/chargroup.hpp"
#include "brp/error.hpp"
#include "brp/signature.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace brp;

TEST_CASE("identity and unit conventions") {
  const FunctionalQ e = FunctionalQ::identity(3, 2);
  CHECK(e(Forest{}) == 1);
  CHECK(e(parse_forest("1", 2)) == 0);
  CHECK(is_character(e));
  FunctionalQ a(2, 1);
  CHECK_THROWS_AS(a.set(Forest{}, Rational(2)), DomainError);
  CHECK_THROWS_AS(a.set(parse_forest("1(1(1))", 1), Rational(1)), DomainError);
  CHECK_THROWS_AS(group_mul(FunctionalQ(2, 1), FunctionalQ(3, 1)), DomainError);
}

TEST_CASE("group axioms hold exactly on random characters") {
  std::mt19937 rng(7);
  for (int d = 1; d <= 2; ++d) {
    for (int trial = 0; trial < 3; ++trial) {
      const FunctionalQ a = oracle::random_character(rng, 4, d);
      const FunctionalQ b = oracle::random_character(rng, 4, d);
      const FunctionalQ c = oracle::random_character(rng, 4, d);
      CHECK(is_character(a));
      CHECK(group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c)));
      const FunctionalQ e = FunctionalQ::identity(4, d);
      CHECK(group_mul(a, e) == a);
      CHECK(group_mul(e, a) == a);
      const FunctionalQ ai = group_inv(a);
      CHECK(group_mul(a, ai) == e);
      CHECK(group_mul(ai, a) == e);
      CHECK(is_character(group_mul(a, b)));
      CHECK(is_character(ai));
    }
  }
}

TEST_CASE("non-characters are detected") {
  FunctionalQ a(2, 1);
  a.set(parse_forest("1", 1), Rational(1));
  a.set(parse_forest("1 1", 1), Rational(3));
  CHECK_FALSE(is_character(a));
}

TEST_CASE("sigma rescaling turns characters into grouplike elements and back") {
  std::mt19937 rng(11);
  for (int d = 1; d <= 2; ++d) {
    const FunctionalQ a = oracle::random_character(rng, 4, d);
    const FunctionalQ b = sigma_rescale(a, RescaleDirection::to_grouplike);
    CHECK(is_grouplike(b));
    CHECK(sigma_rescale(b, RescaleDirection::to_character) == a);
    // Without the rescaling the same element is not grouplike once sigma > 1 appears.
    CHECK_FALSE(is_grouplike(a));
    for (const auto& [f, v] : a.entries()) CHECK(b(f) == v / Rational(oracle::automorphisms(f)));
  }
}

TEST_CASE("rescaling turns the character product into GL composition") {
  std::mt19937 rng(13);
  for (int d = 1; d <= 2; ++d) {
    const FunctionalQ a = oracle::random_character(rng, 4, d);
    const FunctionalQ b = oracle::random_character(rng, 4, d);
    const auto up = [](const FunctionalQ& x) { return sigma_rescale(x, RescaleDirection::to_grouplike); };
    CHECK(up(group_mul(a, b)) == gl_compose(up(a), up(b)));
  }
}

TEST_CASE("dilation is a homomorphism and scales the homogeneous norm") {
  std::mt19937 rng(17);
  const FunctionalQ a = oracle::random_character(rng, 4, 2);
  const FunctionalQ b = oracle::random_character(rng, 4, 2);
  for (const Rational c : {Rational(1, 3), Rational(2), Rational(5, 2)}) {
    CHECK(dilate(c, group_mul(a, b)) == group_mul(dilate(c, a), dilate(c, b)));
    CHECK(homogeneous_norm(dilate(c, a)) ==
          doctest::Approx(static_cast<double>(c) * homogeneous_norm(a)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(dilate(Rational(0), a), DomainError);
}

TEST_CASE("numeric mode agrees with the exact computation") {
  std::mt19937 rng(19);
  const FunctionalQ a = oracle::random_character(rng, 3, 2);
  const FunctionalQ b = oracle::random_character(rng, 3, 2);
  const auto ad = convert<double>(a), bd = convert<double>(b);
  const auto prod = group_mul(ad, bd);
  const auto exact = group_mul(a, b);
  for (const auto& [f, v] : exact.entries()) CHECK(prod(f) == doctest::Approx(static_cast<double>(v)));
  CHECK(is_character(prod, 1e-12));
}

TEST_CASE("p-variation over a grid") {
  // Monotone scalar path: the 1-variation is the total increment, for any grid.
  const auto path = PiecewiseLinearPath::linear({Rational(1)}, Rational(0), Rational(1));
  std::vector<FunctionalQ> incr;
  for (int i = 0; i < 4; ++i)
    incr.push_back(branched_signature(path, Rational(i, 4), Rational(i + 1, 4), 2).value);
  CHECK(p_variation<Rational>(incr, 1.0) == doctest::Approx(1.0));
  // Up-and-down path: 1-variation counts both legs.
  const PiecewiseLinearPath zig({Rational(0), Rational(1), Rational(2)}, {{Rational(0)}, {Rational(1)}, {Rational(0)}});
  std::vector<FunctionalQ> legs{branched_signature(zig, Rational(0), Rational(1), 1).value,
                                branched_signature(zig, Rational(1), Rational(2), 1).value};
  CHECK(p_variation<Rational>(legs, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(p_variation<Rational>(legs, 0.5), DomainError);
}
