#include "astkit/error.hpp"
#include "astkit/relmat.hpp"

#include "oracles.hpp"
#include "random_trees.hpp"

#include <doctest.h>

using namespace astkit;
using namespace astkit::testing;

TEST_SUITE("relmat") {

TEST_CASE("E1 entries") {
  const RelationMatrices m = compute_relations(example_e1(), 7);
  CHECK(m.ancestor == std::vector<RelationEntry>{{0, 1, 1}, {0, 2, 2}, {0, 3, 1}, {0, 4, 2},
                                                 {0, 5, 2}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}});
  CHECK(m.sibling == std::vector<RelationEntry>{{1, 3, 1}, {4, 5, 1}});
  CHECK(m.ancestor_distance(2, 0) == -2);
  CHECK(m.ancestor_distance(0, 2) == 2);
  CHECK(m.sibling_distance(3, 1) == -1);
  CHECK_FALSE(m.ancestor_distance(1, 3).has_value());
  CHECK_FALSE(m.sibling_distance(0, 0).has_value());
  CHECK(to_coo(m) ==
        "# nodes=6 P=7 order=preorder\n"
        "A 0 1 1\nA 0 2 2\nA 0 3 1\nA 0 4 2\nA 0 5 2\nA 1 2 1\nA 3 4 1\nA 3 5 1\n"
        "S 1 3 1\nS 4 5 1\n");
}

TEST_CASE("threshold and trivial trees") {
  const RelationMatrices deep = compute_relations(chain_tree(10), 7);
  CHECK_FALSE(deep.ancestor_distance(0, 9).has_value());
  CHECK(deep.ancestor_distance(0, 7) == 7);
  const RelationMatrices one = compute_relations(chain_tree(1), 7);
  CHECK(one.ancestor.empty());
  CHECK(one.sibling.empty());
  CHECK_THROWS_AS((void)compute_relations(example_e1(), 0), InputError);
}

TEST_CASE("delta index") {
  CHECK(delta_index(1, 7) == 9);
  CHECK(delta_index(-7, 7) == 1);
  CHECK(delta_index(std::nullopt, 7) == 0);
  CHECK(delta_index(8, 7) == 0);
  CHECK_THROWS_AS((void)delta_index(1, 0), InputError);
  for (int p : {1, 3, 7}) {
    std::set<int> image;
    for (int d = -p; d <= p; ++d)
      image.insert(delta_index(d, p));
    CHECK(image.size() == static_cast<std::size_t>(2 * p + 1));
    CHECK(*image.begin() == 1);
    CHECK(*image.rbegin() == 2 * p + 1);
  }
}

TEST_CASE("random trees match the all-pairs oracle") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 200);
    for (int p : {1, 3, 7}) {
      const RelationMatrices m = compute_relations(t, p);
      const RelationOracle o = oracle_relations(t, p);
      REQUIRE(m.ancestor == o.ancestor);
      REQUIRE(m.sibling == o.sibling);
      for (const auto *list : {&m.ancestor, &m.sibling})
        for (const RelationEntry &e : *list) {
          CHECK(e.d >= 1);
          CHECK(e.d <= p);
        }
      for (const RelationEntry &e : m.ancestor)
        CHECK(m.ancestor_distance(e.j, e.i) == -e.d);
      for (const RelationEntry &e : m.sibling)
        CHECK(m.sibling_distance(e.j, e.i) == -e.d);
    }
  }
}

} // TEST_SUITE
