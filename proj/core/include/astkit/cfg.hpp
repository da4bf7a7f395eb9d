#pragma once

#include "astkit/ast.hpp"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace astkit {

using CfgIndex = std::uint32_t;
inline constexpr CfgIndex kNoCfgNode = std::numeric_limits<CfgIndex>::max();

enum class CfgRole : std::uint8_t {
  Entry,       // the method declaration
  Simple,      // any statement without inner flow
  Branch,      // if condition
  Loop,        // while / for / enhanced-for header
  DoCondition, // trailing condition of a do loop
  Switch,      // switch head
  CaseLabel,   // one switch group or rule
  Guard,       // try-with-resources or synchronized header
};

struct CfgNode {
  NodeId ast = kNoNode; // statement subtree root in the method tree
  CfgRole role = CfgRole::Simple;
};

/// Statement-level control flow graph. Nodes are sorted by AST preorder id,
/// so node 0 is the entry and index order is statement order.
struct Cfg {
  std::vector<CfgNode> nodes;
  std::vector<std::vector<CfgIndex>> succ; // sorted, no duplicates
  CfgIndex entry = 0;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
  [[nodiscard]] std::vector<std::vector<CfgIndex>> predecessors() const;

  /// Plain graph with Simple nodes and no AST references; entry is node 0.
  /// Throws InputError for out-of-range endpoints.
  static Cfg from_edges(std::size_t node_count, const std::vector<std::pair<CfgIndex, CfgIndex>> &edges);
};

/// Throws InputError unless the root is a method or constructor declaration.
/// Catch and finally clauses are left out, and statements unreachable from
/// the entry are pruned.
[[nodiscard]] Cfg build_cfg(const AstTree &method_tree);

struct DominatorTree {
  std::vector<CfgIndex> idom; // kNoCfgNode for the entry
  CfgIndex entry = 0;
};

/// Throws InputError if some node is unreachable from the entry.
[[nodiscard]] DominatorTree build_dominator_tree(const Cfg &cfg);

/// Cuts each dominator-tree edge u->v where v has CFG in-degree > 1 or u has
/// CFG out-degree > 1. Each block lists its nodes in ascending order; blocks
/// are ordered by their first node.
[[nodiscard]] std::vector<std::vector<CfgIndex>> partition_blocks(const DominatorTree &dom, const Cfg &cfg);

} // namespace astkit
