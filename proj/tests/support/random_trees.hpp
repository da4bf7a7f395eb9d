#pragma once

#include "astkit/ast.hpp"
#include "astkit/cfg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace astkit::testing {

enum class LabelStyle {
  Plain,   // short ASCII labels, values may repeat
  Tricky,  // brackets, blanks, quotes, <mask>, UTF-8 and friends
  Unique,  // every Value label distinct and findable as a substring
};

inline std::string pick_label(std::mt19937_64 &rng, NodeKind kind, LabelStyle style, std::size_t serial) {
  static const std::array<const char *, 6> types{"A", "B", "C", "Expr", "Stmt", "call_expression"};
  static const std::array<const char *, 8> values{"x", "y", "z", "getMaxValue2", "HTTPServer", "a_b", "0", "foo"};
  static const std::array<const char *, 16> tricky{"(", ")", "", " ", "a b", "<mask>", "\"", "\\",
                                                   ":n", "<grp>", "caf\xc3\xa9", "\t", "%", "^", "_", "x:y"};
  auto draw = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (kind == NodeKind::Value && style == LabelStyle::Unique)
    return "v#" + std::to_string(serial) + "#";
  if (style == LabelStyle::Tricky && draw(3) == 0)
    return tricky[draw(tricky.size())];
  return kind == NodeKind::Value ? values[draw(values.size())] : types[draw(types.size())];
}

/// A random valid tree with 1..max_nodes nodes. Mixes bushy and deep shapes.
inline AstTree random_tree(std::mt19937_64 &rng, std::size_t max_nodes, LabelStyle style = LabelStyle::Plain) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double depth_bias = unit(rng);

  TreeBuilder b;
  std::vector<NodeId> open; // nodes that may take children
  std::vector<NodeKind> kinds;
  auto add = [&](NodeId parent, NodeKind kind) {
    const std::string label = pick_label(rng, kind, style, b.size());
    const NodeId id = parent == kNoNode ? b.add_root(kind, label) : b.add_child(parent, kind, label);
    kinds.push_back(kind);
    if (kind != NodeKind::Value)
      open.push_back(id);
    return id;
  };

  if (n == 1) {
    const auto r = std::uniform_int_distribution<int>(0, 2)(rng);
    add(kNoNode, r == 0 ? NodeKind::Value : r == 1 ? NodeKind::Terminal : NodeKind::NonTerminal);
    return std::move(b).build();
  }
  add(kNoNode, NodeKind::NonTerminal);
  while (b.size() < n) {
    NodeId parent;
    if (unit(rng) < depth_bias)
      parent = open.back();
    else
      parent = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    NodeKind kind = NodeKind::Value;
    if (kinds[parent] == NodeKind::NonTerminal) {
      const double r = unit(rng);
      kind = r < 0.45 ? NodeKind::Value : r < 0.65 ? NodeKind::Terminal : NodeKind::NonTerminal;
    }
    add(parent, kind);
  }
  return std::move(b).build();
}

inline AstTree chain_tree(std::size_t n) {
  TreeBuilder b;
  NodeId at = b.add_root(n == 1 ? NodeKind::Value : NodeKind::NonTerminal, "n0");
  for (std::size_t i = 1; i < n; ++i)
    at = b.add_child(at, i + 1 == n ? NodeKind::Value : NodeKind::NonTerminal, "n" + std::to_string(i));
  return std::move(b).build();
}

inline AstTree star_tree(std::size_t leaves) {
  TreeBuilder b;
  const NodeId root = b.add_root(NodeKind::NonTerminal, "root");
  for (std::size_t i = 0; i < leaves; ++i)
    b.add_child(root, NodeKind::Value, "leaf" + std::to_string(i));
  return std::move(b).build();
}

/// E1 = A(B(x), C(y, z)).
inline AstTree example_e1() {
  TreeBuilder b;
  const NodeId a = b.add_root(NodeKind::NonTerminal, "A");
  const NodeId bb = b.add_child(a, NodeKind::Terminal, "B");
  b.add_child(bb, NodeKind::Value, "x");
  const NodeId c = b.add_child(a, NodeKind::Terminal, "C");
  b.add_child(c, NodeKind::Value, "y");
  b.add_child(c, NodeKind::Value, "z");
  return std::move(b).build();
}

/// Random CFG on 1..max_nodes nodes where every node is reachable from 0.
inline Cfg random_reachable_cfg(std::mt19937_64 &rng, std::size_t max_nodes) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
  std::vector<std::pair<CfgIndex, CfgIndex>> edges;
  for (CfgIndex v = 1; v < n; ++v) {
    const auto u = std::uniform_int_distribution<CfgIndex>(0, v - 1)(rng);
    edges.emplace_back(u, v);
  }
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
  std::uniform_int_distribution<CfgIndex> any(0, static_cast<CfgIndex>(n - 1));
  for (std::size_t i = 0; i < extra; ++i)
    edges.emplace_back(any(rng), any(rng));

  // Relabel so the spanning edges do not always point forward.
  std::vector<CfgIndex> perm(n);
  for (CfgIndex i = 0; i < n; ++i)
    perm[i] = i;
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  for (auto &[u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return Cfg::from_edges(n, edges);
}

} // namespace astkit::testing
