#include "astkit/binary_tree.hpp"

#include <vector>

namespace astkit {
namespace {

struct WorkNode {
  std::string label;
  NodeKind kind;
  std::vector<std::size_t> children;
};

class Binarizer {
public:
  explicit Binarizer(const AstTree &tree) {
    work_.reserve(tree.size() * 2);
    for (const AstNode &n : tree.nodes())
      work_.push_back({n.label, n.kind, {n.children.begin(), n.children.end()}});
  }

  AstTree run() {
    split();
    TreeBuilder builder;
    emit_merged(0, builder, kNoNode);
    return std::move(builder).build();
  }

private:
  void split() {
    for (std::size_t i = 0; i < work_.size(); ++i) {
      if (work_[i].children.size() <= 2)
        continue;
      WorkNode group{std::string(kGroupLabel), NodeKind::NonTerminal,
                     {work_[i].children.begin() + 1, work_[i].children.end()}};
      work_[i].children.resize(1);
      work_[i].children.push_back(work_.size());
      work_.push_back(std::move(group));
    }
  }

  void emit_merged(std::size_t id, TreeBuilder &builder, NodeId parent) {
    std::string label = work_[id].label;
    std::size_t bottom = id;
    while (work_[bottom].children.size() == 1) {
      bottom = work_[bottom].children.front();
      label += ':';
      label += work_[bottom].label;
    }
    const WorkNode &b = work_[bottom];
    NodeKind kind = b.kind;
    if (kind == NodeKind::Terminal)
      for (std::size_t c : b.children)
        if (work_[c].kind != NodeKind::Value || !work_[c].children.empty())
          kind = NodeKind::NonTerminal;
    if (kind == NodeKind::Value && !b.children.empty())
      kind = NodeKind::NonTerminal;

    const NodeId self = parent == kNoNode ? builder.add_root(kind, std::move(label))
                                          : builder.add_child(parent, kind, std::move(label));
    for (std::size_t c : b.children)
      emit_merged(c, builder, self);
  }

  std::vector<WorkNode> work_;
};

} // namespace

AstTree to_binary(const AstTree &tree) {
  if (tree.empty())
    return tree;
  return Binarizer(tree).run();
}

bool is_binary(const AstTree &tree) noexcept {
  for (const AstNode &n : tree.nodes())
    if (n.children.size() != 0 && n.children.size() != 2)
      return false;
  return true;
}

} // namespace astkit
