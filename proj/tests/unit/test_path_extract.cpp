#include "astkit/error.hpp"
#include "astkit/paths.hpp"

#include "oracles.hpp"
#include "random_trees.hpp"

#include <doctest.h>

using namespace astkit;
using namespace astkit::testing;

namespace {

PathConfig unlimited(std::size_t length, std::size_t width) {
  PathConfig c;
  c.max_length = length;
  c.max_width = width;
  c.max_contexts = std::nullopt;
  return c;
}

std::size_t value_leaves(const AstTree &t) {
  std::size_t n = 0;
  for (const AstNode &v : t.nodes())
    n += v.kind == NodeKind::Value;
  return n;
}

} // namespace

TEST_SUITE("path_extract") {

TEST_CASE("E1 contexts") {
  const AstTree e1 = example_e1();
  const auto all = extract_path_contexts(e1, unlimited(8, 8));
  REQUIRE(all.size() == 3);
  CHECK(format_path_context(e1, all[0]) == "x\tx ^ B ^ A _ C _ y\ty");
  CHECK(format_path_context(e1, all[1]) == "x\tx ^ B ^ A _ C _ z\tz");
  CHECK(format_path_context(e1, all[2]) == "y\ty ^ C _ z\tz");
  CHECK(all[0].length() == 4);
  CHECK(all[2].length() == 2);
  CHECK(all[0].width == 1);

  const auto short_only = extract_path_contexts(e1, unlimited(2, 8));
  REQUIRE(short_only.size() == 1);
  CHECK(short_only[0].start_value == "y");
  CHECK(short_only[0].end_value == "z");
}

TEST_CASE("degenerate trees and bad configs") {
  CHECK(extract_path_contexts(star_tree(1)).empty());
  CHECK(extract_path_contexts(chain_tree(5)).empty());
  CHECK_THROWS_AS((void)extract_path_contexts(example_e1(), unlimited(0, 2)), InputError);
  PathConfig zero;
  zero.max_contexts = 0;
  CHECK_THROWS_AS((void)extract_path_contexts(example_e1(), zero), InputError);
}

TEST_CASE("width bound") {
  const AstTree star = star_tree(6);
  CHECK(extract_path_contexts(star, unlimited(8, 0)).empty());
  CHECK(extract_path_contexts(star, unlimited(8, 1)).size() == 5);
  CHECK(extract_path_contexts(star, unlimited(8, 5)).size() == 15);
}

TEST_CASE("labels are percent-escaped") {
  CHECK(percent_escape_label("a b") == "a%20b");
  CHECK(percent_escape_label("^") == "%5E");
  CHECK(percent_escape_label("_") == "%5F");
  CHECK(percent_escape_label("a_b") == "a_b");
  CHECK(percent_escape_label("100%") == "100%25");
}

TEST_CASE("random trees match the leaf-pair oracle") {
  std::mt19937_64 rng(37);
  const std::pair<std::size_t, std::size_t> settings[] = {{8, 2}, {3, 1}, {12, 5}};
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 120, i % 4 == 0 ? LabelStyle::Tricky : LabelStyle::Plain);
    for (auto [len, width] : settings) {
      const auto got = extract_path_contexts(t, unlimited(len, width));
      REQUIRE(got == oracle_paths(t, len, width));
      const std::size_t leaves = value_leaves(t);
      CHECK(got.size() <= leaves * (leaves - (leaves > 0)) / 2);
      for (const PathContext &p : got) {
        CHECK(p.length() >= 1);
        CHECK(p.nodes.size() == p.length() + 1);
        const auto first_down = std::find(p.directions.begin(), p.directions.end(), Direction::Down);
        CHECK(std::find(first_down, p.directions.end(), Direction::Up) == p.directions.end());
      }
    }
  }
}

TEST_CASE("sampling is seeded and keeps document order") {
  std::mt19937_64 rng(41);
  int sampled = 0;
  for (int i = 0; i < 200; ++i) {
    const AstTree t = random_tree(rng, 150);
    PathConfig c = unlimited(8, 2);
    const auto all = extract_path_contexts(t, c);
    if (all.size() < 6)
      continue;
    ++sampled;
    c.max_contexts = all.size() / 2;
    c.sample_seed = static_cast<std::uint64_t>(i);
    const auto a = extract_path_contexts(t, c);
    const auto b = extract_path_contexts(t, c);
    CHECK(a == b);
    CHECK(a.size() == all.size() / 2);
    auto pos = all.begin();
    for (const PathContext &p : a) {
      pos = std::find(pos, all.end(), p);
      REQUIRE(pos != all.end());
      ++pos;
    }
  }
  CHECK(sampled > 20);
}

TEST_CASE("different seeds pick different subsets") {
  const AstTree star = star_tree(30);
  PathConfig c = unlimited(2, 40);
  c.max_contexts = 10;
  std::set<std::vector<std::pair<NodeId, NodeId>>> seen;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    c.sample_seed = seed;
    std::vector<std::pair<NodeId, NodeId>> ends;
    for (const PathContext &p : extract_path_contexts(star, c))
      ends.emplace_back(p.start_leaf, p.end_leaf);
    seen.insert(ends);
  }
  CHECK(seen.size() > 1);
}

} // TEST_SUITE
