#pragma once

#include "astkit/ast.hpp"
#include "astkit/cfg.hpp"
#include "astkit/paths.hpp"
#include "astkit/relmat.hpp"
#include "astkit/tree_stats.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace astkit::testing {

//===----------------------------------------------------------------------===//
// Paths
//===----------------------------------------------------------------------===//

inline std::vector<NodeId> ancestors_inclusive(const AstTree &t, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId at = v; at != kNoNode; at = t.parent(at))
    out.push_back(at);
  return out;
}

/// Every Value-leaf pair, path built through the LCA, then filtered.
inline std::vector<PathContext> oracle_paths(const AstTree &t, std::size_t max_length, std::size_t max_width) {
  std::vector<NodeId> leaves;
  for (const AstNode &n : t.nodes())
    if (n.kind == NodeKind::Value)
      leaves.push_back(n.id);
  std::vector<PathContext> out;
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      const auto up = ancestors_inclusive(t, leaves[a]);
      const auto down = ancestors_inclusive(t, leaves[b]);
      const std::set<NodeId> down_set(down.begin(), down.end());
      std::size_t ia = 0;
      while (!down_set.count(up[ia]))
        ++ia;
      const NodeId lca = up[ia];
      const std::size_t ib = static_cast<std::size_t>(std::find(down.begin(), down.end(), lca) - down.begin());

      PathContext p;
      p.start_leaf = leaves[a];
      p.end_leaf = leaves[b];
      p.start_value = t.node(leaves[a]).label;
      p.end_value = t.node(leaves[b]).label;
      for (std::size_t i = 0; i <= ia; ++i)
        p.nodes.push_back(up[i]);
      for (std::size_t i = ib; i-- > 0;)
        p.nodes.push_back(down[i]);
      p.directions.assign(ia, Direction::Up);
      p.directions.insert(p.directions.end(), ib, Direction::Down);
      const auto ca = static_cast<long>(t.child_index(up[ia - 1]));
      const auto cb = static_cast<long>(t.child_index(down[ib - 1]));
      p.width = static_cast<std::size_t>(std::labs(cb - ca));
      if (p.length() <= max_length && p.width <= max_width)
        out.push_back(std::move(p));
    }
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Relations
//===----------------------------------------------------------------------===//

struct RelationOracle {
  std::vector<RelationEntry> ancestor;
  std::vector<RelationEntry> sibling;
};

inline RelationOracle oracle_relations(const AstTree &t, int max_distance) {
  RelationOracle r;
  const auto n = static_cast<NodeId>(t.size());
  for (NodeId j = 0; j < n; ++j) {
    const auto anc = ancestors_inclusive(t, j);
    for (std::size_t d = 1; d < anc.size(); ++d)
      if (static_cast<int>(d) <= max_distance)
        r.ancestor.push_back({anc[d], j, static_cast<int>(d)});
  }
  for (const AstNode &p : t.nodes())
    for (std::size_t x = 0; x < p.children.size(); ++x)
      for (std::size_t y = x + 1; y < p.children.size(); ++y)
        if (static_cast<int>(y - x) <= max_distance)
          r.sibling.push_back({p.children[x], p.children[y], static_cast<int>(y - x)});
  std::sort(r.ancestor.begin(), r.ancestor.end());
  std::sort(r.sibling.begin(), r.sibling.end());
  return r;
}

//===----------------------------------------------------------------------===//
// Dominators
//===----------------------------------------------------------------------===//

inline std::vector<bool> reachable_without(const Cfg &g, CfgIndex removed) {
  std::vector<bool> seen(g.size(), false);
  if (removed == g.entry)
    return seen;
  std::vector<CfgIndex> stack{g.entry};
  seen[g.entry] = true;
  while (!stack.empty()) {
    const CfgIndex u = stack.back();
    stack.pop_back();
    for (CfgIndex v : g.succ[u])
      if (v != removed && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return seen;
}

/// u dominates v iff deleting u cuts v off from the entry. The immediate
/// dominator is the strict dominator with the most dominators of its own.
inline std::vector<CfgIndex> oracle_idom(const Cfg &g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> dominated_by(n, std::vector<bool>(n, false));
  for (CfgIndex u = 0; u < n; ++u) {
    const auto seen = reachable_without(g, u);
    for (CfgIndex v = 0; v < n; ++v)
      if (v == u || !seen[v])
        dominated_by[v][u] = true;
  }
  std::vector<std::size_t> dom_count(n, 0);
  for (CfgIndex v = 0; v < n; ++v)
    dom_count[v] = static_cast<std::size_t>(std::count(dominated_by[v].begin(), dominated_by[v].end(), true));
  std::vector<CfgIndex> idom(n, kNoCfgNode);
  for (CfgIndex v = 0; v < n; ++v) {
    if (v == g.entry)
      continue;
    std::size_t best = 0;
    for (CfgIndex u = 0; u < n; ++u)
      if (u != v && dominated_by[v][u] && dom_count[u] > best) {
        best = dom_count[u];
        idom[v] = u;
      }
  }
  return idom;
}

//===----------------------------------------------------------------------===//
// Tree statistics
//===----------------------------------------------------------------------===//

/// Sub-token rule restated as a regular expression over a byte string in
/// which non-ASCII bytes count as lowercase letters.
inline std::vector<std::string> oracle_subtokens(const std::string &text) {
  std::string shadow = text;
  for (char &c : shadow)
    if (static_cast<unsigned char>(c) >= 0x80)
      c = 'a';
  static const std::regex piece("[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(shadow.begin(), shadow.end(), piece); it != std::sregex_iterator(); ++it) {
    std::string tok = text.substr(static_cast<std::size_t>(it->position()), static_cast<std::size_t>(it->length()));
    for (char &c : tok)
      if (c >= 'A' && c <= 'Z')
        c = static_cast<char>(c - 'A' + 'a');
    out.push_back(std::move(tok));
  }
  return out;
}

inline TreeStats oracle_stats(const AstTree &t, bool exclude_value_children = false) {
  TreeStats s;
  s.size = t.size();
  std::function<std::size_t(NodeId)> depth = [&](NodeId v) -> std::size_t {
    std::size_t best = 0;
    for (NodeId c : t.node(v).children)
      best = std::max(best, depth(c));
    return best + 1;
  };
  s.depth = depth(0);
  std::size_t internal = 0, kids = 0;
  std::set<std::string> types, tokens;
  for (const AstNode &n : t.nodes()) {
    if (!n.children.empty())
      types.insert(n.label);
    std::size_t k = 0;
    for (NodeId c : n.children)
      if (!exclude_value_children || t.node(c).kind != NodeKind::Value)
        ++k;
    if (k > 0) {
      ++internal;
      kids += k;
    }
    if (n.kind == NodeKind::Value)
      for (auto &tok : oracle_subtokens(n.label))
        tokens.insert(tok);
  }
  s.branching_factor = internal == 0 ? 0.0 : static_cast<double>(kids) / static_cast<double>(internal);
  s.unique_types = types.size();
  s.unique_tokens = tokens.size();
  return s;
}

//===----------------------------------------------------------------------===//
// Binary trees
//===----------------------------------------------------------------------===//

struct OracleNode {
  std::string label;
  std::vector<std::unique_ptr<OracleNode>> kids;
};

inline std::unique_ptr<OracleNode> oracle_copy(const AstTree &t, NodeId v) {
  auto n = std::make_unique<OracleNode>();
  n->label = t.node(v).label;
  for (NodeId c : t.node(v).children)
    n->kids.push_back(oracle_copy(t, c));
  return n;
}

inline void oracle_split(OracleNode &n, const std::string &group_label) {
  if (n.kids.size() > 2) {
    auto grp = std::make_unique<OracleNode>();
    grp->label = group_label;
    for (std::size_t i = 1; i < n.kids.size(); ++i)
      grp->kids.push_back(std::move(n.kids[i]));
    n.kids.resize(1);
    n.kids.push_back(std::move(grp));
  }
  for (auto &k : n.kids)
    oracle_split(*k, group_label);
}

inline std::unique_ptr<OracleNode> oracle_merge(std::unique_ptr<OracleNode> n) {
  if (n->kids.size() == 1) {
    auto below = oracle_merge(std::move(n->kids[0]));
    below->label = n->label + ":" + below->label;
    return below;
  }
  for (auto &k : n->kids)
    k = oracle_merge(std::move(k));
  return n;
}

/// Flattened as (label, child count) in preorder.
inline void oracle_flatten(const OracleNode &n, std::vector<std::pair<std::string, std::size_t>> &out) {
  out.emplace_back(n.label, n.kids.size());
  for (const auto &k : n.kids)
    oracle_flatten(*k, out);
}

inline std::vector<std::pair<std::string, std::size_t>> oracle_binary(const AstTree &t,
                                                                      const std::string &group_label) {
  auto root = oracle_copy(t, 0);
  oracle_split(*root, group_label);
  root = oracle_merge(std::move(root));
  std::vector<std::pair<std::string, std::size_t>> out;
  oracle_flatten(*root, out);
  return out;
}

inline std::vector<std::pair<std::string, std::size_t>> flatten(const AstTree &t) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const AstNode &n : t.nodes())
    out.emplace_back(n.label, n.children.size());
  return out;
}

} // namespace astkit::testing
