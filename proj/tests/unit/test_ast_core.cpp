#include "astkit/ast.hpp"
#include "astkit/error.hpp"
#include "astkit/linearize.hpp"
#include "astkit/sexpr.hpp"

#include "random_trees.hpp"

#include <doctest.h>

#include <algorithm>

using namespace astkit;
using namespace astkit::testing;

namespace {

std::vector<std::string> labels_in(const AstTree &t, const std::vector<NodeId> &ids) {
  std::vector<std::string> out;
  for (NodeId id : ids)
    out.push_back(t.node(id).label);
  return out;
}

std::vector<std::string> split_spaces(const std::string &s) {
  std::vector<std::string> out;
  std::size_t at = 0;
  while (at <= s.size()) {
    const auto sp = s.find(' ', at);
    out.push_back(s.substr(at, sp == std::string::npos ? std::string::npos : sp - at));
    if (sp == std::string::npos)
      break;
    at = sp + 1;
  }
  return out;
}

std::vector<NodeKind> kinds_of(const AstTree &t) {
  std::vector<NodeKind> out;
  for (const AstNode &n : t.nodes())
    out.push_back(n.kind);
  return out;
}

AstTree chain_abc() {
  TreeBuilder b;
  const NodeId a = b.add_root(NodeKind::NonTerminal, "A");
  const NodeId bb = b.add_child(a, NodeKind::Terminal, "B");
  b.add_child(bb, NodeKind::Value, "c");
  return std::move(b).build();
}

AstTree single(NodeKind kind, const std::string &label) {
  TreeBuilder b;
  b.add_root(kind, label);
  return std::move(b).build();
}

} // namespace

TEST_SUITE("ast_core") {

TEST_CASE("builder renumbers into preorder") {
  TreeBuilder b;
  const NodeId a = b.add_root(NodeKind::NonTerminal, "A");
  const NodeId c = b.add_child(a, NodeKind::Terminal, "C");
  const NodeId bb = b.add_child(a, NodeKind::Terminal, "B");
  b.add_child(bb, NodeKind::Value, "x");
  b.add_child(c, NodeKind::Value, "y");
  const AstTree t = std::move(b).build();
  CHECK(labels_in(t, preorder_nodes(t)) == std::vector<std::string>{"A", "C", "y", "B", "x"});
  CHECK(t.parent(0) == kNoNode);
  CHECK(t.child_index(3) == 1);
  CHECK(t.subtree_end(1) == 3);
  CHECK(t.subtree_end(0) == 5);
}

TEST_CASE("invalid trees are rejected") {
  std::vector<AstNode> nodes(2);
  nodes[0] = {0, "v", NodeKind::Value, {1}};
  nodes[1] = {1, "w", NodeKind::Value, {}};
  CHECK_THROWS_AS((void)AstTree::from_nodes(nodes, 0), InputError);

  nodes[0] = {0, "T", NodeKind::Terminal, {1}};
  nodes[1] = {1, "N", NodeKind::NonTerminal, {}};
  CHECK_THROWS_AS((void)AstTree::from_nodes(nodes, 0), InputError);

  nodes[0] = {0, "A", NodeKind::NonTerminal, {1}};
  nodes[1] = {1, "B", NodeKind::NonTerminal, {0}};
  CHECK_THROWS_AS((void)AstTree::from_nodes(nodes, 0), InputError);

  CHECK_THROWS_AS((void)AstTree::from_nodes({}, 0), InputError);
  TreeBuilder empty;
  CHECK_THROWS_AS((void)std::move(empty).build(), InputError);
}

TEST_CASE("preorder examples") {
  CHECK(labels_in(single(NodeKind::NonTerminal, "A"), preorder_nodes(single(NodeKind::NonTerminal, "A"))) ==
        std::vector<std::string>{"A"});
  const AstTree e1 = example_e1();
  CHECK(labels_in(e1, preorder_nodes(e1)) == std::vector<std::string>{"A", "B", "x", "C", "y", "z"});
  const AstTree chain = chain_abc();
  CHECK(labels_in(chain, preorder_nodes(chain)) == std::vector<std::string>{"A", "B", "c"});
}

TEST_CASE("bfs examples") {
  CHECK(bfs_sequence(single(NodeKind::NonTerminal, "A")) == std::vector<std::string>{"A"});
  CHECK(bfs_sequence(example_e1()) == std::vector<std::string>{"A", "B", "C", "x", "y", "z"});
  CHECK(bfs_sequence(chain_abc()) == std::vector<std::string>{"A", "B", "c"});
  CHECK(bfs_line(example_e1()) == "A B C x y z");
}

TEST_CASE("sbt examples") {
  CHECK(sbt_encode(single(NodeKind::NonTerminal, "A")) == std::vector<std::string>{"(", "A", ")", "A"});
  CHECK(sbt_line(example_e1()) == "( A ( B ( x ) x ) B ( C ( y ) y ( z ) z ) C ) A");
  TreeBuilder b;
  b.add_child(b.add_root(NodeKind::NonTerminal, "A"), NodeKind::NonTerminal, "B");
  CHECK(sbt_line(std::move(b).build()) == "( A ( B ) B ) A");
}

TEST_CASE("sbt decode examples") {
  const AstTree one = sbt_decode(split_spaces("( A ) A"));
  REQUIRE(one.size() == 1);
  CHECK(one.root().label == "A");

  const AstTree e1 = example_e1();
  CHECK(sbt_decode(sbt_encode(e1)) == e1);

  try {
    (void)sbt_decode(split_spaces("( A ( B ) C ) A"));
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS((void)sbt_decode(split_spaces("( A ( B ) B")), ParseError);
  CHECK_THROWS_AS((void)sbt_decode(split_spaces(") A")), ParseError);
  CHECK_THROWS_AS((void)sbt_decode(std::vector<std::string>{}), ParseError);
  CHECK_THROWS_AS((void)sbt_decode(split_spaces("( A ) A ( B ) B")), ParseError);
}

TEST_CASE("mask examples") {
  const AstTree masked = mask_leaves(example_e1());
  CHECK(to_sexpr(masked) == R"((A (B "<mask>") (C "<mask>" "<mask>")))");
  const AstTree no_values = single(NodeKind::NonTerminal, "A");
  CHECK(mask_leaves(no_values) == no_values);
  const AstTree value = mask_leaves(single(NodeKind::Value, "x"));
  CHECK(value.root().label == "<mask>");
  CHECK(sbt_line(mask_leaves(example_e1()), true) ==
        "( A ( B ( <mask> ) <mask> ) B ( C ( <mask> ) <mask> ( <mask> ) <mask> ) C ) A");
}

TEST_CASE("sbt round trip on random trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const AstTree t = random_tree(rng, 120, i % 2 ? LabelStyle::Tricky : LabelStyle::Plain);
    const auto tokens = sbt_encode(t);
    CHECK(tokens.size() == 4 * t.size());
    const auto kinds = kinds_of(t);
    REQUIRE(sbt_decode(tokens, kinds) == t);
    CHECK(same_shape(sbt_decode(tokens), t));
    CHECK(sbt_decode(parse_sbt_line(sbt_line(t)), kinds) == t);
  }
}

TEST_CASE("bfs and preorder carry the same labels") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 80);
    auto pre = labels_in(t, preorder_nodes(t));
    auto bfs = bfs_sequence(t);
    std::sort(pre.begin(), pre.end());
    std::sort(bfs.begin(), bfs.end());
    CHECK(pre == bfs);
  }
}

TEST_CASE("mask preserves structure and non-value labels") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const AstTree t = random_tree(rng, 80, LabelStyle::Tricky);
    const AstTree m = mask_leaves(t);
    REQUIRE(m.size() == t.size());
    for (NodeId v = 0; v < t.size(); ++v) {
      CHECK(m.node(v).children == t.node(v).children);
      CHECK(m.node(v).kind == t.node(v).kind);
      CHECK(m.node(v).label == (t.node(v).kind == NodeKind::Value ? "<mask>" : t.node(v).label));
    }
  }
}

TEST_CASE("masked sbt line keeps literal <mask> labels apart") {
  TreeBuilder b;
  const NodeId r = b.add_root(NodeKind::NonTerminal, "<mask>");
  b.add_child(r, NodeKind::Value, "v");
  const AstTree masked = mask_leaves(std::move(b).build());
  CHECK(sbt_line(masked, true) == "( \\<mask> ( <mask> ) <mask> ) \\<mask>");
}

TEST_CASE("sexpr round trip on random trees") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const AstTree t = random_tree(rng, 60, LabelStyle::Tricky);
    REQUIRE(parse_sexpr(to_sexpr(t)) == t);
  }
  CHECK_THROWS_AS((void)parse_sexpr("(A (B \"x\")"), ParseError);
  CHECK_THROWS_AS((void)parse_sexpr(""), ParseError);
}

TEST_CASE("token escaping round trips") {
  for (const char *s : {"", " ", "a b", "\\", "(", ")", "<mask>", "\t\n\r", "caf\xc3\xa9"})
    CHECK(unescape_token(escape_token(s)) == s);
}

} // TEST_SUITE
