#include "astkit/error.hpp"
#include "astkit/frontend.hpp"
#include "astkit/tokenize.hpp"
#include "astkit/tree_stats.hpp"

#include "oracles.hpp"
#include "random_trees.hpp"

#include <doctest.h>

#include <fstream>
#include <json.hpp>

using namespace astkit;
using namespace astkit::testing;

namespace {

void check_equal(const TreeStats &a, const TreeStats &b) {
  CHECK(a.size == b.size);
  CHECK(a.depth == b.depth);
  CHECK(a.branching_factor == doctest::Approx(b.branching_factor).epsilon(1e-12));
  CHECK(a.unique_types == b.unique_types);
  CHECK(a.unique_tokens == b.unique_tokens);
}

/// Copy of `t` with one extra child under `parent`.
AstTree with_extra_child(const AstTree &t, NodeId parent, NodeKind kind, const std::string &label) {
  std::vector<AstNode> nodes(t.nodes().begin(), t.nodes().end());
  AstNode extra;
  extra.id = static_cast<NodeId>(nodes.size());
  extra.kind = kind;
  extra.label = label;
  nodes[parent].children.push_back(extra.id);
  nodes.push_back(extra);
  return AstTree::from_nodes(std::move(nodes), 0);
}

} // namespace

TEST_SUITE("tree_metrics") {

TEST_CASE("worked examples") {
  const TreeStats e1 = tree_stats(example_e1());
  CHECK(e1.size == 6);
  CHECK(e1.depth == 3);
  CHECK(e1.branching_factor == doctest::Approx(5.0 / 3.0));
  CHECK(e1.unique_types == 3);
  CHECK(e1.unique_tokens == 3);

  const TreeStats chain = tree_stats(chain_tree(4));
  CHECK(chain.size == 4);
  CHECK(chain.depth == 4);
  CHECK(chain.branching_factor == 1.0);
  CHECK(chain.unique_types == 3);

  TreeBuilder b;
  b.add_root(NodeKind::Value, "x");
  const TreeStats leaf = tree_stats(std::move(b).build());
  CHECK(leaf.size == 1);
  CHECK(leaf.depth == 1);
  CHECK(leaf.branching_factor == 0.0);
}

TEST_CASE("chains and stars") {
  for (std::size_t n = 1; n <= 40; ++n) {
    const TreeStats s = tree_stats(chain_tree(n));
    CHECK(s.size == n);
    CHECK(s.depth == n);
    CHECK(s.branching_factor == (n == 1 ? 0.0 : 1.0));
  }
  for (std::size_t k = 1; k <= 40; ++k) {
    const TreeStats s = tree_stats(star_tree(k));
    CHECK(s.size == k + 1);
    CHECK(s.depth == 2);
    CHECK(s.branching_factor == static_cast<double>(k));
  }
}

TEST_CASE("sub-token rule") {
  CHECK(split_subtokens("getMaxValue2") == std::vector<std::string>{"get", "max", "value", "2"});
  CHECK(split_subtokens("HTTPServer") == std::vector<std::string>{"http", "server"});
  CHECK(split_subtokens("").empty());
  CHECK(split_subtokens("a_b a-b") == std::vector<std::string>{"a", "b", "a", "b"});
  SimpleTokenizer tok;
  CHECK(tok.token_set("a_b a-b") == std::set<std::string>{"a", "b"});
  for (const char *s : {"parseHTTPResponse2xx", "XMLHttpRequest", "snake_case_ID", "caf\xc3\xa9" "Bar", "ABc", "x1y2",
                        "__init__", "getURLs", "A", "a"})
    CHECK(split_subtokens(s) == oracle_subtokens(s));
}

TEST_CASE("random trees match the recount") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const AstTree t = random_tree(rng, 150, i % 3 == 0 ? LabelStyle::Tricky : LabelStyle::Plain);
    check_equal(tree_stats(t), oracle_stats(t));
    TreeStatsOptions opts;
    opts.exclude_value_children = true;
    check_equal(tree_stats(t, opts), oracle_stats(t, true));
    const TreeStats s = tree_stats(t);
    CHECK(s.depth <= s.size);
    CHECK(s.unique_types <= s.size);
    if (s.size > 1)
      CHECK(s.branching_factor >= 1.0);
  }
}

TEST_CASE("adding a child grows size by one and never shrinks depth") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 60);
    std::vector<NodeId> hosts;
    for (const AstNode &n : t.nodes())
      if (n.kind == NodeKind::NonTerminal)
        hosts.push_back(n.id);
    if (hosts.empty())
      continue;
    const NodeId host = hosts[rng() % hosts.size()];
    const TreeStats before = tree_stats(t);
    const TreeStats after = tree_stats(with_extra_child(t, host, NodeKind::Value, "extra"));
    CHECK(after.size == before.size + 1);
    CHECK(after.depth >= before.depth);
  }
}

TEST_CASE("duplicating a leaf token keeps unique_tokens") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 60);
    std::string existing;
    for (const AstNode &n : t.nodes())
      if (n.kind == NodeKind::Value)
        existing = n.label;
    if (existing.empty() || t.root().kind != NodeKind::NonTerminal)
      continue;
    const TreeStats before = tree_stats(t);
    const TreeStats after = tree_stats(with_extra_child(t, 0, NodeKind::Value, existing));
    CHECK(after.unique_tokens == before.unique_tokens);
  }
}

TEST_CASE("fixture corpus matches the recount") {
  std::ifstream in(std::string(ASTKIT_FIXTURE_DIR) + "/java200.jsonl");
  std::size_t n = 0;
  for (std::string line; std::getline(in, line); ++n) {
    SourceSnippet s;
    s.code = nlohmann::json::parse(line)["code"].get<std::string>();
    const AstTree t = parse_method(s).tree;
    check_equal(tree_stats(t), oracle_stats(t));
  }
  CHECK(n == 200);
}

TEST_CASE("aggregation") {
  CHECK_THROWS_AS((void)aggregate_stats(std::vector<TreeStats>{}), InputError);
  const MetricSummary odd = summarize({3, 1, 2});
  CHECK(odd.mean == 2.0);
  CHECK(odd.median == 2.0);
  const MetricSummary even = summarize({4, 1, 3, 2});
  CHECK(even.mean == 2.5);
  CHECK(even.median == 2.5);
  CHECK(even.min == 1.0);
  CHECK(even.max == 4.0);

  std::vector<TreeStats> all;
  for (std::size_t n : {1, 2, 3})
    all.push_back(tree_stats(chain_tree(n)));
  const CorpusStats c = aggregate_stats(all);
  CHECK(c.count == 3);
  CHECK(c.size.mean == 2.0);
  CHECK(c.size.median == 2.0);
  CHECK(c.depth.median >= c.depth.min);
  CHECK(c.depth.median <= c.depth.max);
}

} // TEST_SUITE
