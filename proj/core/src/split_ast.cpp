#include "astkit/split_ast.hpp"

#include "astkit/cfg.hpp"
#include "astkit/error.hpp"

#include <string_view>

namespace astkit {
namespace {

bool is_method_label(std::string_view label) {
  return label == "method_declaration" || label == "constructor_declaration" ||
         label == "compact_constructor_declaration";
}

class Renderer {
public:
  explicit Renderer(const AstTree &tree) : tree_(tree) {}

  /// Value tokens of the subtree at `id`, skipping the subtrees in `skip`.
  void tokens(NodeId id, const std::vector<NodeId> &skip = {}) {
    const NodeId end = tree_.subtree_end(id);
    NodeId i = id;
    while (i < end) {
      bool skipped = false;
      for (NodeId s : skip)
        if (i == s) {
          i = tree_.subtree_end(s);
          skipped = true;
          break;
        }
      if (skipped)
        continue;
      const AstNode &n = tree_.node(i);
      if (n.kind == NodeKind::Value)
        word(n.label);
      ++i;
    }
  }

  void word(std::string_view w) {
    if (!out_.empty())
      out_ += ' ';
    out_ += w;
  }

  std::string take() { return std::move(out_); }

private:
  const AstTree &tree_;
  std::string out_;
};

NodeId method_body(const AstTree &tree) {
  for (NodeId c : tree.root().children) {
    const std::string &l = tree.node(c).label;
    if (l == "block" || l == "constructor_body")
      return c;
  }
  return kNoNode;
}

// Children that hold nested statements and so are not part of a header.
std::vector<NodeId> nested_parts(const AstTree &tree, const CfgNode &node) {
  const AstNode &n = tree.node(node.ast);
  std::vector<NodeId> out;
  bool past_condition = false;
  for (NodeId c : n.children) {
    const AstNode &child = tree.node(c);
    if (child.kind == NodeKind::Value)
      continue;
    switch (node.role) {
    case CfgRole::Branch:
      if (past_condition)
        out.push_back(c);
      past_condition = true;
      break;
    case CfgRole::Loop:
      if (c == n.children.back())
        out.push_back(c);
      break;
    case CfgRole::Switch:
      if (child.label == "switch_block")
        out.push_back(c);
      break;
    case CfgRole::Guard:
      if (child.label == "block")
        out.push_back(c);
      break;
    case CfgRole::CaseLabel:
      if (child.label != "switch_label")
        out.push_back(c);
      break;
    default:
      break;
    }
  }
  if (node.role == CfgRole::Branch) {
    // Also drop the `else` keyword.
    for (NodeId c : n.children)
      if (tree.node(c).kind == NodeKind::Value && tree.node(c).label == "else")
        out.push_back(c);
  }
  return out;
}

} // namespace

std::vector<std::pair<std::vector<NodeId>, std::string>> split_code(const AstTree &method) {
  const Cfg cfg = build_cfg(method);
  const DominatorTree dom = build_dominator_tree(cfg);
  const auto blocks = partition_blocks(dom, cfg);

  Renderer header_renderer(method);
  const NodeId body = method_body(method);
  header_renderer.tokens(method.root_id(), body == kNoNode ? std::vector<NodeId>{} : std::vector<NodeId>{body});
  const std::string header = header_renderer.take();

  std::vector<std::pair<std::vector<NodeId>, std::string>> out;
  out.reserve(blocks.size());
  for (const auto &block : blocks) {
    Renderer r(method);
    r.word(header);
    r.word("{");
    std::vector<NodeId> open_until; // subtree ends of opened headers
    std::vector<NodeId> statements;
    for (CfgIndex idx : block) {
      const CfgNode &node = cfg.nodes[idx];
      if (node.role == CfgRole::Entry)
        continue;
      while (!open_until.empty() && node.ast >= open_until.back()) {
        r.word("}");
        open_until.pop_back();
      }
      statements.push_back(node.ast);
      switch (node.role) {
      case CfgRole::Simple:
        r.tokens(node.ast);
        break;
      case CfgRole::DoCondition:
        r.word("do { } while");
        r.tokens(node.ast);
        r.word(";");
        break;
      case CfgRole::CaseLabel:
        r.tokens(node.ast, nested_parts(method, node));
        break;
      default:
        r.tokens(node.ast, nested_parts(method, node));
        r.word("{");
        open_until.push_back(method.subtree_end(node.ast));
        break;
      }
    }
    for (std::size_t i = 0; i < open_until.size(); ++i)
      r.word("}");
    r.word("}");
    out.emplace_back(std::move(statements), r.take());
  }
  return out;
}

SplitAstSet split_asts(const SourceSnippet &snippet, Frontend &frontend) {
  FrontendConfig kept = frontend.config();
  kept.drop_punctuation = false;
  SplitAstSet result;
  result.method = parse_method(snippet, kept).tree;
  if (!is_method_label(result.method.root().label))
    throw InputError("no method declaration in '" + snippet.id + "'");

  for (auto &[statements, code] : split_code(result.method)) {
    SourceSnippet piece{snippet.id, snippet.language, code};
    try {
      ParseOutcome parsed = frontend.parse(piece);
      if (!is_method_label(parsed.tree.root().label)) {
        ++result.skipped_blocks;
        continue;
      }
      result.blocks.push_back({std::move(statements), std::move(code), std::move(parsed.tree)});
    } catch (const ParseError &) {
      ++result.skipped_blocks;
    } catch (const InputError &) {
      ++result.skipped_blocks;
    }
  }
  return result;
}

} // namespace astkit
