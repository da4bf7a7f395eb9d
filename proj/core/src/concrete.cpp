// Concrete-tree normalization: backend node taxonomy -> NonTerminal /
// Terminal / Value.

#include "astkit/frontend.hpp"

#include <array>
#include <string_view>

namespace astkit {
namespace {

constexpr std::array<std::string_view, 7> kPunctuation = {"{", "}", "(", ")", ";", ",", "."};

// Literals whose internal structure (fragments, escapes, quotes) is lexical.
constexpr std::array<std::string_view, 2> kAtomicTypes = {"string_literal", "character_literal"};

bool contains(auto const &list, std::string_view s) {
  for (std::string_view v : list)
    if (v == s)
      return true;
  return false;
}

class Normalizer {
public:
  Normalizer(const ConcreteTree &concrete, const FrontendConfig &config)
      : concrete_(concrete), config_(config) {}

  AstTree run(ConcreteId root) {
    const ConcreteNode &n = concrete_.nodes.at(root);
    if (!n.named && n.children.empty()) {
      builder_.add_root(NodeKind::Value, std::string(concrete_.text(root)));
    } else {
      emit_named(root, kNoNode);
    }
    return std::move(builder_).build();
  }

private:
  bool skipped(ConcreteId id) const {
    const ConcreteNode &n = concrete_.nodes[id];
    if (n.missing)
      return true;
    if (n.extra && !n.error)
      return true;
    if (config_.drop_punctuation && !n.named && n.children.empty() && contains(kPunctuation, n.type))
      return true;
    return false;
  }

  bool anonymous_leaf(ConcreteId id) const {
    const ConcreteNode &n = concrete_.nodes[id];
    return !n.named && n.children.empty();
  }

  NodeId add(NodeId parent, NodeKind kind, std::string label) {
    return parent == kNoNode ? builder_.add_root(kind, std::move(label))
                             : builder_.add_child(parent, kind, std::move(label));
  }

  void emit(ConcreteId id, NodeId parent) {
    if (anonymous_leaf(id)) {
      add(parent, NodeKind::Value, std::string(concrete_.text(id)));
      return;
    }
    emit_named(id, parent);
  }

  void emit_named(ConcreteId id, NodeId parent) {
    const ConcreteNode &n = concrete_.nodes[id];
    const std::string_view text = concrete_.text(id);

    if (contains(kAtomicTypes, n.type) || n.children.empty()) {
      const NodeId self = add(parent, NodeKind::Terminal, n.type);
      if (!text.empty())
        builder_.add_child(self, NodeKind::Value, std::string(text));
      return;
    }

    std::vector<ConcreteId> kept;
    kept.reserve(n.children.size());
    bool only_tokens = true;
    for (ConcreteId c : n.children) {
      if (skipped(c))
        continue;
      kept.push_back(c);
      only_tokens = only_tokens && anonymous_leaf(c);
    }

    const NodeKind kind = (!kept.empty() && only_tokens) ? NodeKind::Terminal : NodeKind::NonTerminal;
    const NodeId self = add(parent, kind, n.type);
    for (ConcreteId c : kept)
      emit(c, self);
  }

  const ConcreteTree &concrete_;
  const FrontendConfig &config_;
  TreeBuilder builder_;
};

} // namespace

std::size_t ConcreteTree::error_count(ConcreteId root) const {
  std::size_t count = 0;
  std::vector<ConcreteId> stack{root};
  while (!stack.empty()) {
    const ConcreteNode &n = nodes.at(stack.back());
    stack.pop_back();
    if (n.error || n.missing)
      ++count;
    stack.insert(stack.end(), n.children.begin(), n.children.end());
  }
  return count;
}

AstTree normalize_tree(const ConcreteTree &concrete, ConcreteId root, const FrontendConfig &config) {
  return Normalizer(concrete, config).run(root);
}

} // namespace astkit
