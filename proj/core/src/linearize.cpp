#include "astkit/linearize.hpp"

#include "astkit/error.hpp"

#include <deque>

namespace astkit {

std::vector<NodeId> preorder_nodes(const AstTree &tree) {
  std::vector<NodeId> order;
  order.reserve(tree.size());
  if (tree.empty())
    return order;
  std::vector<NodeId> stack{tree.root_id()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto &ch = tree.node(id).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it)
      stack.push_back(*it);
  }
  return order;
}

std::vector<std::string> bfs_sequence(const AstTree &tree) {
  std::vector<std::string> out;
  out.reserve(tree.size());
  if (tree.empty())
    return out;
  std::deque<NodeId> queue{tree.root_id()};
  while (!queue.empty()) {
    const AstNode &node = tree.node(queue.front());
    queue.pop_front();
    out.push_back(node.label);
    queue.insert(queue.end(), node.children.begin(), node.children.end());
  }
  return out;
}

std::vector<std::string> sbt_encode(const AstTree &tree) {
  std::vector<std::string> out;
  out.reserve(tree.size() * 4);
  if (tree.empty())
    return out;
  struct Item {
    NodeId id;
    bool close;
  };
  std::vector<Item> stack{{tree.root_id(), false}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const AstNode &node = tree.node(item.id);
    if (item.close) {
      out.emplace_back(")");
      out.push_back(node.label);
      continue;
    }
    out.emplace_back("(");
    out.push_back(node.label);
    stack.push_back({item.id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back({*it, false});
  }
  return out;
}

AstTree sbt_decode(std::span<const std::string> tokens, std::span<const NodeKind> kinds) {
  if (tokens.empty())
    throw ParseError("empty SBT sequence", 0);

  TreeBuilder builder;
  std::vector<NodeId> stack;
  std::size_t pos = 0;
  bool done = false;

  while (pos < tokens.size()) {
    if (done)
      throw ParseError("tokens after the root closed", pos);
    if (tokens[pos] == "(") {
      if (pos + 1 >= tokens.size())
        throw ParseError("missing label after '('", pos + 1);
      const std::string &label = tokens[pos + 1];
      const NodeId id = stack.empty() ? builder.add_root(NodeKind::NonTerminal, label)
                                      : builder.add_child(stack.back(), NodeKind::NonTerminal, label);
      stack.push_back(id);
      pos += 2;
    } else if (tokens[pos] == ")") {
      if (stack.empty())
        throw ParseError("unbalanced ')'", pos);
      if (pos + 1 >= tokens.size())
        throw ParseError("missing label after ')'", pos + 1);
      const AstNode &open = builder.node(stack.back());
      if (tokens[pos + 1] != open.label)
        throw ParseError("closing label '" + tokens[pos + 1] + "' does not match '" + open.label + "'",
                         pos + 1);
      stack.pop_back();
      done = stack.empty();
      pos += 2;
    } else {
      throw ParseError("expected '(' or ')', got '" + tokens[pos] + "'", pos);
    }
  }
  if (!stack.empty())
    throw ParseError("unbalanced '(' at end of input", tokens.size());

  // Builder ids are allocated in first-visit order, i.e. already preorder.
  if (!kinds.empty()) {
    if (kinds.size() != builder.size())
      throw InputError("kind side channel has " + std::to_string(kinds.size()) + " entries for " +
                       std::to_string(builder.size()) + " nodes");
    for (NodeId i = 0; i < builder.size(); ++i)
      builder.set_kind(i, kinds[i]);
  } else {
    for (NodeId i = 0; i < builder.size(); ++i) {
      const AstNode &node = builder.node(i);
      if (node.children.empty()) {
        builder.set_kind(i, NodeKind::Value);
        continue;
      }
      bool leaf_children = true;
      for (NodeId c : node.children)
        leaf_children = leaf_children && builder.node(c).children.empty();
      builder.set_kind(i, leaf_children ? NodeKind::Terminal : NodeKind::NonTerminal);
    }
  }
  return std::move(builder).build();
}

AstTree mask_leaves(const AstTree &tree) {
  std::vector<AstNode> nodes(tree.nodes().begin(), tree.nodes().end());
  for (AstNode &node : nodes)
    if (node.kind == NodeKind::Value)
      node.label = std::string(kMaskToken);
  return AstTree::from_nodes(std::move(nodes), tree.root_id());
}

std::string escape_token(std::string_view label) {
  if (label.empty())
    return "\\e";
  if (label == kMaskToken)
    return "\\<mask>";
  std::string out;
  out.reserve(label.size());
  for (char c : label) {
    switch (c) {
    case '\\':
      out += "\\\\";
      break;
    case ' ':
      out += "\\s";
      break;
    case '\t':
      out += "\\t";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\r':
      out += "\\r";
      break;
    case '(':
      out += "\\(";
      break;
    case ')':
      out += "\\)";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::string unescape_token(std::string_view token) {
  if (token == "\\e")
    return {};
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] != '\\' || i + 1 == token.size()) {
      out += token[i];
      continue;
    }
    const char e = token[++i];
    switch (e) {
    case 's':
      out += ' ';
      break;
    case 't':
      out += '\t';
      break;
    case 'n':
      out += '\n';
      break;
    case 'r':
      out += '\r';
      break;
    default:
      out += e; // \\ \( \) and the '<' of \<mask>
    }
  }
  return out;
}

std::string sbt_line(const AstTree &tree, bool masked) {
  std::string out;
  if (tree.empty())
    return out;
  auto label_token = [&](const AstNode &node) {
    if (masked && node.kind == NodeKind::Value && node.label == kMaskToken)
      return std::string(kMaskToken);
    return escape_token(node.label);
  };
  struct Item {
    NodeId id;
    bool close;
  };
  std::vector<Item> stack{{tree.root_id(), false}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const AstNode &node = tree.node(item.id);
    if (!out.empty())
      out += ' ';
    out += item.close ? ") " : "( ";
    out += label_token(node);
    if (item.close)
      continue;
    stack.push_back({item.id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back({*it, false});
  }
  return out;
}

std::string bfs_line(const AstTree &tree) {
  std::string out;
  for (const std::string &label : bfs_sequence(tree)) {
    if (!out.empty())
      out += ' ';
    out += escape_token(label);
  }
  return out;
}

std::vector<std::string> parse_sbt_line(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(' ', start);
    if (end == std::string_view::npos)
      end = line.size();
    const std::string_view raw = line.substr(start, end - start);
    if (raw.empty()) {
      if (end == line.size() && tokens.empty())
        break;
      throw ParseError("empty token in SBT line", tokens.size());
    }
    if (raw == "(" || raw == ")" || raw == kMaskToken)
      tokens.emplace_back(raw);
    else
      tokens.push_back(unescape_token(raw));
    start = end + 1;
  }
  return tokens;
}

} // namespace astkit
