#include "astkit/binary_tree.hpp"
#include "astkit/cfg.hpp"
#include "astkit/error.hpp"
#include "astkit/frontend.hpp"
#include "astkit/sexpr.hpp"
#include "astkit/split_ast.hpp"

#include "oracles.hpp"
#include "random_trees.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>

using namespace astkit;
using namespace astkit::testing;

namespace {

AstTree method(const std::string &code) {
  SourceSnippet s;
  s.code = code;
  return parse_method(s).tree;
}

using Edges = std::vector<std::pair<CfgIndex, CfgIndex>>;

Edges edges_of(const Cfg &g) {
  Edges out;
  for (CfgIndex u = 0; u < g.size(); ++u)
    for (CfgIndex v : g.succ[u])
      out.emplace_back(u, v);
  return out;
}

std::vector<std::string> labels(const AstTree &t, const Cfg &g) {
  std::vector<std::string> out;
  for (const CfgNode &n : g.nodes)
    out.push_back(t.node(n.ast).label);
  return out;
}

std::size_t count_in(const std::string &hay, const std::string &needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
    ++n;
  return n;
}

struct FixtureRecord {
  std::string id;
  std::string code;
};

std::vector<FixtureRecord> fixture() {
  std::ifstream in(std::string(ASTKIT_FIXTURE_DIR) + "/java200.jsonl");
  std::vector<FixtureRecord> out;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    out.push_back({j["id"].get<std::string>(), j["code"].get<std::string>()});
  }
  return out;
}

} // namespace

TEST_SUITE("tree_transform") {

//===----------------------------------------------------------------------===//
// Binary trees
//===----------------------------------------------------------------------===//

TEST_CASE("binary examples") {
  CHECK(to_sexpr(to_binary(parse_sexpr(R"((P "x" "y" "z"))"))) == R"((P "x" (<grp> :n "y" "z")))");
  CHECK(to_sexpr(to_binary(parse_sexpr(R"((A (B "x")))"))) == R"("A:B:x")");
  const AstTree ab = parse_sexpr(R"((A "x" "y"))");
  CHECK(to_binary(ab) == ab);
  CHECK(is_binary(ab));
  CHECK_FALSE(is_binary(parse_sexpr(R"((P "x" "y" "z"))")));
}

TEST_CASE("binary invariants on random trees") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 1000; ++i) {
    const AstTree t = random_tree(rng, 120, LabelStyle::Unique);
    const AstTree b = to_binary(t);
    for (const AstNode &n : b.nodes())
      CHECK((n.children.empty() || n.children.size() == 2));
    std::string all_labels;
    for (const AstNode &n : b.nodes())
      all_labels += n.label + '\n';
    for (const AstNode &n : t.nodes())
      if (n.kind == NodeKind::Value)
        CHECK(count_in(all_labels, n.label) == 1);
    CHECK(to_binary(b) == b);
    REQUIRE(flatten(b) == oracle_binary(t, std::string(kGroupLabel)));
  }
}

//===----------------------------------------------------------------------===//
// CFG
//===----------------------------------------------------------------------===//

TEST_CASE("cfg examples") {
  {
    const AstTree t = method("void f() { s1(); s2(); }");
    const Cfg g = build_cfg(t);
    CHECK(g.size() == 3);
    CHECK(edges_of(g) == Edges{{0, 1}, {1, 2}});
    CHECK(g.nodes[0].role == CfgRole::Entry);
  }
  {
    const AstTree t = method("int f(boolean c) { if (c) { return 1; } else { return 2; } }");
    const Cfg g = build_cfg(t);
    CHECK(labels(t, g) == std::vector<std::string>{"method_declaration", "if_statement", "return_statement",
                                                   "return_statement"});
    CHECK(g.nodes[1].role == CfgRole::Branch);
    CHECK(edges_of(g) == Edges{{0, 1}, {1, 2}, {1, 3}});
  }
  {
    const AstTree t = method("void f(int c) { while (c > 0) { s(); } after(); }");
    const Cfg g = build_cfg(t);
    CHECK(labels(t, g) == std::vector<std::string>{"method_declaration", "while_statement", "expression_statement",
                                                   "expression_statement"});
    CHECK(g.nodes[1].role == CfgRole::Loop);
    CHECK(edges_of(g) == Edges{{0, 1}, {1, 2}, {1, 3}, {2, 1}});
  }
  CHECK_THROWS_AS((void)build_cfg(parse_sexpr("(class_declaration (identifier \"K\"))")), InputError);
}

TEST_CASE("cfg leaves out catch and finally and prunes dead code") {
  const AstTree t = method("void f() { a(); try { b(); } catch (Exception e) { c(); } finally { d(); } e(); }");
  const Cfg g = build_cfg(t);
  CHECK(g.size() == 4);
  CHECK(edges_of(g) == Edges{{0, 1}, {1, 2}, {2, 3}});
  const Cfg dead = build_cfg(method("int f() { return 1; x(); }"));
  CHECK(dead.size() == 2);
}

TEST_CASE("cfg loops, jumps and switches") {
  {
    const Cfg g = build_cfg(method("void f(int n) { for (int i = 0; i < n; i++) { if (i == 2) continue; "
                                   "if (i == 5) break; work(); } done(); }"));
    // entry, for, if, continue, if, break, work, done
    CHECK(g.size() == 8);
    CHECK(g.succ[3] == std::vector<CfgIndex>{1});
    CHECK(g.succ[5] == std::vector<CfgIndex>{7});
    CHECK(g.succ[6] == std::vector<CfgIndex>{1});
  }
  {
    const Cfg g = build_cfg(method("void f(int n) { do { n--; } while (n > 0); done(); }"));
    CHECK(g.size() == 4);
    CHECK(g.nodes[2].role == CfgRole::DoCondition);
    CHECK(edges_of(g) == Edges{{0, 1}, {1, 2}, {2, 1}, {2, 3}});
  }
  {
    const Cfg g = build_cfg(method("void f(int c) { switch (c) { case 1: a(); case 2: b(); break; } done(); }"));
    // entry, switch, label1, a, label2, b, break, done
    CHECK(g.size() == 8);
    CHECK(g.succ[1] == std::vector<CfgIndex>{2, 4, 7});
    CHECK(g.succ[3] == std::vector<CfgIndex>{4});
    CHECK(g.succ[6] == std::vector<CfgIndex>{7});
  }
}

//===----------------------------------------------------------------------===//
// Dominators and blocks
//===----------------------------------------------------------------------===//

TEST_CASE("dominator examples") {
  CHECK(build_dominator_tree(Cfg::from_edges(3, {{0, 1}, {1, 2}})).idom ==
        std::vector<CfgIndex>{kNoCfgNode, 0, 1});
  CHECK(build_dominator_tree(Cfg::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})).idom ==
        std::vector<CfgIndex>{kNoCfgNode, 0, 0, 0});
  CHECK(build_dominator_tree(Cfg::from_edges(2, {{0, 1}, {1, 1}})).idom == std::vector<CfgIndex>{kNoCfgNode, 0});
  CHECK_THROWS_AS((void)build_dominator_tree(Cfg::from_edges(3, {{0, 1}})), InputError);
  CHECK_THROWS_AS((void)Cfg::from_edges(2, {{0, 2}}), InputError);
}

TEST_CASE("dominators match the deletion oracle") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const Cfg g = random_reachable_cfg(rng, 50);
    REQUIRE(build_dominator_tree(g).idom == oracle_idom(g));
  }
}

TEST_CASE("partition examples") {
  const Cfg chain = Cfg::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(partition_blocks(build_dominator_tree(chain), chain) == std::vector<std::vector<CfgIndex>>{{0, 1, 2}});
  const Cfg fork = Cfg::from_edges(3, {{0, 1}, {0, 2}});
  CHECK(partition_blocks(build_dominator_tree(fork), fork) ==
        std::vector<std::vector<CfgIndex>>{{0}, {1}, {2}});
  const Cfg diamond = Cfg::from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  const auto blocks = partition_blocks(build_dominator_tree(diamond), diamond);
  CHECK(blocks == std::vector<std::vector<CfgIndex>>{{0, 1}, {2}, {3}, {4}});
}

TEST_CASE("blocks are a partition on random graphs") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const Cfg g = random_reachable_cfg(rng, 40);
    const auto blocks = partition_blocks(build_dominator_tree(g), g);
    std::vector<int> seen(g.size(), 0);
    for (const auto &b : blocks)
      for (CfgIndex v : b)
        ++seen[v];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

//===----------------------------------------------------------------------===//
// Split ASTs
//===----------------------------------------------------------------------===//

TEST_CASE("split examples") {
  Frontend frontend;
  SourceSnippet s;
  s.code = "int f(int x) { int y = x * 2; log(y); return y; }";
  const SplitAstSet straight = split_asts(s, frontend);
  REQUIRE(straight.blocks.size() == 1);
  CHECK(straight.blocks[0].tree == frontend.parse(s).tree);

  s.code = "int f(int x) { if (x > 0) { return 1; } else { return 2; } }";
  const SplitAstSet two = split_asts(s, frontend);
  REQUIRE(two.blocks.size() == 3);
  CHECK(two.blocks[0].code == "int f ( int x ) { if ( x > 0 ) { } }");
  CHECK(two.blocks[1].code == "int f ( int x ) { return 1 ; }");
  CHECK(two.blocks[2].code == "int f ( int x ) { return 2 ; }");
  for (const SplitBlock &b : two.blocks)
    CHECK(b.tree.root().label == "method_declaration");

  s.code = "void f() { try { a(); } catch (Exception e) { secret(); } b(); }";
  for (const SplitBlock &b : split_asts(s, frontend).blocks)
    CHECK(b.code.find("secret") == std::string::npos);

  s.code = "";
  CHECK_THROWS_AS((void)split_asts(s, frontend), InputError);
}

TEST_CASE("split fixture corpus") {
  Frontend frontend;
  for (const FixtureRecord &r : fixture()) {
    CAPTURE(r.id);
    SourceSnippet s;
    s.id = r.id;
    s.code = r.code;
    const SplitAstSet set = split_asts(s, frontend);
    CHECK(set.skipped_blocks == 0);

    const AstTree &m = set.method;
    const NodeId body = m.root().children.back();
    std::vector<std::string> header;
    for (NodeId v = 0; v < body; ++v)
      if (m.node(v).kind == NodeKind::Value)
        header.push_back(m.node(v).label);
    std::string header_text;
    for (const auto &tok : header)
      header_text += tok + ' ';

    std::set<NodeId> covered;
    for (const SplitBlock &b : set.blocks) {
      CHECK(b.tree.root().label == m.root().label);
      CHECK(b.code.rfind(header_text + "{", 0) == 0);
      CHECK(b.code.find("catchMarker") == std::string::npos);
      for (NodeId st : b.statements)
        CHECK(covered.insert(st).second);
    }
    const Cfg g = build_cfg(m);
    CHECK(covered.size() == g.size() - 1);

    if (r.id.rfind("straight_", 0) == 0)
      CHECK(set.blocks.size() == 1);
    if (r.id.rfind("ifelse2r_", 0) == 0)
      CHECK(set.blocks.size() == 3);
  }
}

} // TEST_SUITE
