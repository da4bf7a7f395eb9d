#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astkit {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// NonTerminal and Terminal carry grammar type names; Value carries token
/// text and is always a leaf.
enum class NodeKind : std::uint8_t { NonTerminal, Terminal, Value };

[[nodiscard]] std::string_view to_string(NodeKind kind) noexcept;

struct AstNode {
  NodeId id = 0;
  std::string label;
  NodeKind kind = NodeKind::NonTerminal;
  std::vector<NodeId> children;

  [[nodiscard]] bool is_leaf() const noexcept { return children.empty(); }
  bool operator==(const AstNode &) const = default;
};

/// Rooted ordered labeled tree. Node ids are 0..n-1 in preorder, so the root
/// is always node 0 and `nodes()` is already in canonical order.
///
/// Instances are immutable once built; use TreeBuilder or one of the readers
/// (sexpr, sbt) to create them.
class AstTree {
public:
  AstTree() = default;

  [[nodiscard]] std::span<const AstNode> nodes() const noexcept { return nodes_; }
  [[nodiscard]] const AstNode &node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] const AstNode &root() const { return nodes_.front(); }
  [[nodiscard]] NodeId root_id() const noexcept { return 0; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

  /// kNoNode for the root.
  [[nodiscard]] NodeId parent(NodeId id) const { return parents_.at(id); }
  /// Position of `id` among its parent's children; 0 for the root.
  [[nodiscard]] std::size_t child_index(NodeId id) const { return child_index_.at(id); }
  /// One past the last node of the subtree rooted at `id` (preorder interval).
  [[nodiscard]] NodeId subtree_end(NodeId id) const { return subtree_end_.at(id); }

  /// Labels, kinds and child order all equal.
  bool operator==(const AstTree &other) const { return nodes_ == other.nodes_; }

  /// Builds a tree from nodes in arbitrary id order. Validates every
  /// structural invariant and renumbers into preorder.
  /// Throws InputError when the nodes do not form a valid tree.
  static AstTree from_nodes(std::vector<AstNode> nodes, NodeId root);

private:
  explicit AstTree(std::vector<AstNode> preorder_nodes);

  std::vector<AstNode> nodes_;
  std::vector<NodeId> parents_;
  std::vector<std::uint32_t> child_index_;
  std::vector<NodeId> subtree_end_;
};

/// Same labels and child order, kinds ignored.
[[nodiscard]] bool same_shape(const AstTree &a, const AstTree &b);

/// Incremental construction in any order; `build()` renumbers to preorder.
class TreeBuilder {
public:
  NodeId add_root(NodeKind kind, std::string label);
  NodeId add_child(NodeId parent, NodeKind kind, std::string label);
  void set_kind(NodeId id, NodeKind kind) { nodes_.at(id).kind = kind; }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const AstNode &node(NodeId id) const { return nodes_.at(id); }

  /// Throws InputError if no root was added or the invariants fail.
  [[nodiscard]] AstTree build() &&;

private:
  std::vector<AstNode> nodes_;
  NodeId root_ = kNoNode;
};

} // namespace astkit
