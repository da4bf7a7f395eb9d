#include "astkit/relmat.hpp"

#include "astkit/error.hpp"

#include <algorithm>

namespace astkit {
namespace {

std::optional<int> lookup(const std::vector<RelationEntry> &entries, NodeId i, NodeId j) {
  const bool flip = i > j;
  const RelationEntry key{flip ? j : i, flip ? i : j, 0};
  auto it = std::lower_bound(entries.begin(), entries.end(), key, [](const RelationEntry &a, const RelationEntry &b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  if (it == entries.end() || it->i != key.i || it->j != key.j)
    return std::nullopt;
  return flip ? -it->d : it->d;
}

} // namespace

std::optional<int> RelationMatrices::ancestor_distance(NodeId i, NodeId j) const {
  return lookup(ancestor, i, j);
}

std::optional<int> RelationMatrices::sibling_distance(NodeId i, NodeId j) const {
  return lookup(sibling, i, j);
}

RelationMatrices compute_relations(const AstTree &tree, int max_distance) {
  if (max_distance < 1)
    throw InputError("max distance must be at least 1");
  RelationMatrices m;
  m.node_count = tree.size();
  m.max_distance = max_distance;
  const auto p = static_cast<std::size_t>(max_distance);

  for (const AstNode &node : tree.nodes()) {
    NodeId a = tree.parent(node.id);
    for (int d = 1; a != kNoNode && d <= max_distance; ++d, a = tree.parent(a))
      m.ancestor.push_back({a, node.id, d});

    const auto &kids = node.children;
    for (std::size_t x = 0; x < kids.size(); ++x)
      for (std::size_t y = x + 1; y < kids.size() && y - x <= p; ++y)
        m.sibling.push_back({kids[x], kids[y], static_cast<int>(y - x)});
  }
  std::sort(m.ancestor.begin(), m.ancestor.end());
  std::sort(m.sibling.begin(), m.sibling.end());
  return m;
}

int delta_index(std::optional<int> d, int max_distance) {
  if (max_distance < 1)
    throw InputError("max distance must be at least 1");
  if (!d || *d < -max_distance || *d > max_distance)
    return 0;
  return *d + max_distance + 1;
}

std::string to_coo(const RelationMatrices &m) {
  std::string out = "# nodes=" + std::to_string(m.node_count) + " P=" + std::to_string(m.max_distance) +
                    " order=preorder\n";
  auto emit = [&](char tag, const std::vector<RelationEntry> &entries) {
    for (const RelationEntry &e : entries) {
      out += tag;
      out += ' ';
      out += std::to_string(e.i);
      out += ' ';
      out += std::to_string(e.j);
      out += ' ';
      out += std::to_string(e.d);
      out += '\n';
    }
  };
  emit('A', m.ancestor);
  emit('S', m.sibling);
  return out;
}

} // namespace astkit
