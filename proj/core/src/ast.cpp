#include "astkit/ast.hpp"

#include "astkit/error.hpp"

#include <utility>

namespace astkit {

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
  case NodeKind::NonTerminal:
    return "NonTerminal";
  case NodeKind::Terminal:
    return "Terminal";
  case NodeKind::Value:
    return "Value";
  }
  return "?";
}

AstTree AstTree::from_nodes(std::vector<AstNode> nodes, NodeId root) {
  const std::size_t n = nodes.size();
  if (n == 0)
    throw InputError("tree has no nodes");
  if (root >= n)
    throw InputError("root id out of range");
  for (std::size_t i = 0; i < n; ++i)
    if (nodes[i].id != i)
      throw InputError("node ids must be dense and match their index");

  std::vector<std::uint32_t> parent_count(n, 0);
  for (const AstNode &node : nodes) {
    if (node.kind == NodeKind::Value && !node.children.empty())
      throw InputError("Value node '" + node.label + "' has children");
    for (NodeId c : node.children) {
      if (c >= n)
        throw InputError("child id out of range");
      if (node.kind == NodeKind::Terminal && nodes[c].kind != NodeKind::Value)
        throw InputError("Terminal node '" + node.label + "' has a non-Value child");
      ++parent_count[c];
    }
  }
  if (parent_count[root] != 0)
    throw InputError("root appears as a child");
  for (std::size_t i = 0; i < n; ++i)
    if (i != root && parent_count[i] != 1)
      throw InputError("node " + std::to_string(i) + " does not have exactly one parent");

  // With one parent per non-root node, a traversal from the root that reaches
  // all n nodes proves the graph is a connected, acyclic tree.
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    if (order.size() > n)
      throw InputError("cycle detected");
    const auto &ch = nodes[id].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it)
      stack.push_back(*it);
  }
  if (order.size() != n)
    throw InputError("tree is not connected");

  std::vector<NodeId> remap(n);
  for (std::size_t i = 0; i < n; ++i)
    remap[order[i]] = static_cast<NodeId>(i);

  std::vector<AstNode> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    AstNode &src = nodes[order[i]];
    AstNode &dst = out[i];
    dst.id = static_cast<NodeId>(i);
    dst.label = std::move(src.label);
    dst.kind = src.kind;
    dst.children.reserve(src.children.size());
    for (NodeId c : src.children)
      dst.children.push_back(remap[c]);
  }
  return AstTree(std::move(out));
}

AstTree::AstTree(std::vector<AstNode> preorder_nodes) : nodes_(std::move(preorder_nodes)) {
  const std::size_t n = nodes_.size();
  parents_.assign(n, kNoNode);
  child_index_.assign(n, 0);
  subtree_end_.assign(n, 0);
  for (const AstNode &node : nodes_) {
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      parents_[node.children[k]] = node.id;
      child_index_[node.children[k]] = static_cast<std::uint32_t>(k);
    }
  }
  // Preorder: a subtree ends where the last child's subtree ends.
  for (std::size_t i = n; i-- > 0;) {
    const auto &ch = nodes_[i].children;
    subtree_end_[i] = ch.empty() ? static_cast<NodeId>(i + 1) : subtree_end_[ch.back()];
  }
}

bool same_shape(const AstTree &a, const AstTree &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const AstNode &x = a.nodes()[i];
    const AstNode &y = b.nodes()[i];
    if (x.label != y.label || x.children != y.children)
      return false;
  }
  return true;
}

NodeId TreeBuilder::add_root(NodeKind kind, std::string label) {
  if (root_ != kNoNode)
    throw InputError("tree already has a root");
  root_ = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(AstNode{root_, std::move(label), kind, {}});
  return root_;
}

NodeId TreeBuilder::add_child(NodeId parent, NodeKind kind, std::string label) {
  if (parent >= nodes_.size())
    throw InputError("parent id out of range");
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(AstNode{id, std::move(label), kind, {}});
  nodes_[parent].children.push_back(id);
  return id;
}

AstTree TreeBuilder::build() && {
  if (root_ == kNoNode)
    throw InputError("tree has no root");
  return AstTree::from_nodes(std::move(nodes_), root_);
}

} // namespace astkit
