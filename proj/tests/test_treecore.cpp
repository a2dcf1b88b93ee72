#include "brp/error.hpp"
#include "brp/tree.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace brp;

TEST_CASE("parse and render round-trip in canonical order") {
  CHECK(render(parse_tree("1(2,1)", 2)) == "1(1,2)");
  CHECK(render(parse_tree("1(1(1),1)", 1)) == "1(1,1(1))");
  CHECK(render(parse_forest("2 1(1) 1", 2)) == "1 2 1(1)");
  CHECK(render(parse_forest("()", 1)) == "()");
  CHECK(parse_forest("()", 1).empty());
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : enumerate_trees(n, 2)) CHECK(parse_tree(render(t), 2) == t);
}

TEST_CASE("malformed forests are rejected with a position") {
  CHECK_THROWS_AS(parse_forest("1(", 1), ParseError);
  CHECK_THROWS_AS(parse_forest("1(2)", 1), ParseError);
  CHECK_THROWS_AS(parse_forest("1()", 1), ParseError);
  CHECK_THROWS_AS(parse_forest("1,2", 2), ParseError);
  CHECK_THROWS_AS(parse_forest("0", 2), ParseError);
  CHECK_THROWS_AS(parse_forest("", 2), ParseError);
  try {
    parse_forest("1(1,x)", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("child order does not matter") {
  CHECK(parse_tree("1(2,1(2))", 2) == parse_tree("1(1(2),2)", 2));
  CHECK(parse_forest("1 2(1)", 2) == parse_forest("2(1) 1", 2));
}

TEST_CASE("symmetry factors agree with brute-force automorphism counts") {
  CHECK(symmetry_factor(parse_forest("1(1,1)", 1)) == 2);
  CHECK(symmetry_factor(parse_forest("1(1(1),1(1))", 1)) == 2);
  CHECK(symmetry_factor(parse_forest("1(1,1,1)", 1)) == 6);
  CHECK(symmetry_factor(parse_forest("1 1", 1)) == 2);
  CHECK(symmetry_factor(parse_forest("1(2,1)", 2)) == 1);
  CHECK(symmetry_factor(parse_forest("()", 1)) == 1);
  for (int n = 1; n <= 6; ++n)
    for (const Forest& f : enumerate_forests(n, 2)) CHECK(symmetry_factor(f) == oracle::automorphisms(f));
}

TEST_CASE("tree counts match the rooted-tree sequence and exhaustive enumeration") {
  const long long a000081[] = {1, 1, 2, 4, 9, 20, 48, 115};
  for (int n = 1; n <= 8; ++n) {
    CHECK(count_trees(n, 1) == a000081[n - 1]);
    const auto trees = enumerate_trees(n, 1);
    CHECK(trees.size() == static_cast<std::size_t>(a000081[n - 1]));
    const auto brute = oracle::trees_by_parent_arrays(n, 1);
    CHECK(std::set<Tree>(trees.begin(), trees.end()) == brute);
  }
  for (int n = 1; n <= 5; ++n) {
    const auto brute = oracle::trees_by_parent_arrays(n, 2);
    CHECK(count_trees(n, 2) == BigInt(brute.size()));
    const auto trees = enumerate_trees(n, 2);
    CHECK(std::set<Tree>(trees.begin(), trees.end()) == brute);
  }
  CHECK(count_trees(3, 2) == 14);  // chains 2^3, cherries 2 * 3
}

TEST_CASE("enumeration is ascending, duplicate-free and bounded by the cap") {
  for (int n = 1; n <= 6; ++n) {
    const auto trees = enumerate_trees(n, 2);
    CHECK(std::is_sorted(trees.begin(), trees.end()));
    CHECK(std::adjacent_find(trees.begin(), trees.end()) == trees.end());
    const auto forests = enumerate_forests(n, 2);
    CHECK(std::is_sorted(forests.begin(), forests.end()));
    CHECK(BigInt(forests.size()) == count_forests(n, 2));
  }
  CHECK(enumerate_trees(3, 1).front() == parse_tree("1(1,1)", 1));
  CHECK_THROWS_AS(enumerate_trees(12, 3, 1000), ResourceLimit);
}

TEST_CASE("forest product is commutative and the empty forest is its unit") {
  const Forest a = parse_forest("1(2) 1", 2), b = parse_forest("2(2,1)", 2);
  CHECK(a * b == b * a);
  CHECK(a * Forest{} == a);
  CHECK((a * b).degree() == a.degree() + b.degree());
}
