#include "astkit/cfg.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>

namespace astkit {
namespace {

bool is_method_label(std::string_view label) {
  return label == "method_declaration" || label == "constructor_declaration" ||
         label == "compact_constructor_declaration";
}

struct FlowContext {
  enum class Kind { Loop, Switch, Label } kind;
  std::string label;
  CfgIndex continue_target = kNoCfgNode;
  std::vector<CfgIndex> breaks;
};

class CfgBuilder {
public:
  explicit CfgBuilder(const AstTree &tree) : tree_(tree) {}

  Cfg run() {
    const AstNode &root = tree_.root();
    if (!is_method_label(root.label))
      throw InputError("control flow graph requires a method declaration root, got '" + root.label + "'");
    const CfgIndex entry = add(tree_.root_id(), CfgRole::Entry);
    for (NodeId c : structural_children(tree_.root_id())) {
      const std::string &l = tree_.node(c).label;
      if (l == "block" || l == "constructor_body")
        flow_sequence(c, {entry});
    }
    return finish();
  }

private:
  std::vector<NodeId> structural_children(NodeId id) const {
    std::vector<NodeId> out;
    for (NodeId c : tree_.node(id).children)
      if (tree_.node(c).kind != NodeKind::Value)
        out.push_back(c);
    return out;
  }

  std::string identifier_text(NodeId id) const {
    for (NodeId c : structural_children(id)) {
      const AstNode &n = tree_.node(c);
      if (n.label == "identifier" && n.children.size() == 1)
        return tree_.node(n.children.front()).label;
    }
    return {};
  }

  CfgIndex add(NodeId ast, CfgRole role) {
    nodes_.push_back({ast, role});
    succ_.emplace_back();
    return static_cast<CfgIndex>(nodes_.size() - 1);
  }

  void connect(const std::vector<CfgIndex> &preds, CfgIndex to) {
    for (CfgIndex p : preds)
      succ_[p].push_back(to);
  }

  CfgIndex open(NodeId ast, CfgRole role, const std::vector<CfgIndex> &preds) {
    const CfgIndex n = add(ast, role);
    connect(preds, n);
    return n;
  }

  FlowContext *find_break_target(const std::string &label) {
    for (auto it = contexts_.rbegin(); it != contexts_.rend(); ++it) {
      if (label.empty() ? it->kind != FlowContext::Kind::Label : it->label == label)
        return &*it;
    }
    return nullptr;
  }

  FlowContext *find_continue_target(const std::string &label) {
    for (auto it = contexts_.rbegin(); it != contexts_.rend(); ++it)
      if (it->kind == FlowContext::Kind::Loop && (label.empty() || it->label == label))
        return &*it;
    return nullptr;
  }

  std::vector<CfgIndex> flow_sequence(NodeId block, std::vector<CfgIndex> preds) {
    for (NodeId c : structural_children(block))
      preds = flow(c, std::move(preds));
    return preds;
  }

  std::vector<CfgIndex> flow(NodeId stmt, std::vector<CfgIndex> preds, std::string label = {}) {
    const std::string &type = tree_.node(stmt).label;

    if (type == "block")
      return flow_sequence(stmt, std::move(preds));

    if (type == "labeled_statement") {
      const auto kids = structural_children(stmt);
      const std::string name = identifier_text(stmt);
      if (kids.size() < 2)
        return preds;
      contexts_.push_back({FlowContext::Kind::Label, name, kNoCfgNode, {}});
      auto exits = flow(kids.back(), std::move(preds), name);
      auto &breaks = contexts_.back().breaks;
      exits.insert(exits.end(), breaks.begin(), breaks.end());
      contexts_.pop_back();
      return exits;
    }

    if (type == "if_statement") {
      const CfgIndex cond = open(stmt, CfgRole::Branch, preds);
      const auto kids = structural_children(stmt);
      std::vector<CfgIndex> exits;
      if (kids.size() >= 2)
        exits = flow(kids[1], {cond});
      else
        exits.push_back(cond);
      if (kids.size() >= 3) {
        auto alt = flow(kids[2], {cond});
        exits.insert(exits.end(), alt.begin(), alt.end());
      } else {
        exits.push_back(cond);
      }
      return exits;
    }

    if (type == "while_statement" || type == "for_statement" || type == "enhanced_for_statement") {
      const CfgIndex head = open(stmt, CfgRole::Loop, preds);
      contexts_.push_back({FlowContext::Kind::Loop, label, head, {}});
      const auto kids = structural_children(stmt);
      const NodeId last = tree_.node(stmt).children.back();
      if (!kids.empty() && kids.back() == last)
        connect(flow(last, {head}), head);
      else
        connect({head}, head);
      std::vector<CfgIndex> exits{head};
      auto &breaks = contexts_.back().breaks;
      exits.insert(exits.end(), breaks.begin(), breaks.end());
      contexts_.pop_back();
      return exits;
    }

    if (type == "do_statement") {
      const auto kids = structural_children(stmt);
      NodeId cond_ast = stmt;
      for (NodeId c : kids)
        if (tree_.node(c).label == "parenthesized_expression")
          cond_ast = c;
      const CfgIndex cond = add(cond_ast, CfgRole::DoCondition);
      contexts_.push_back({FlowContext::Kind::Loop, label, cond, {}});
      preds.push_back(cond);
      std::vector<CfgIndex> body_exits = preds;
      if (!kids.empty() && kids.front() != cond_ast)
        body_exits = flow(kids.front(), std::move(preds));
      connect(body_exits, cond);
      std::vector<CfgIndex> exits{cond};
      auto &breaks = contexts_.back().breaks;
      exits.insert(exits.end(), breaks.begin(), breaks.end());
      contexts_.pop_back();
      return exits;
    }

    if (type == "switch_expression")
      return flow_switch(stmt, std::move(preds), std::move(label));

    if (type == "try_statement") {
      for (NodeId c : structural_children(stmt))
        if (tree_.node(c).label == "block")
          return flow_sequence(c, std::move(preds));
      return preds;
    }

    if (type == "try_with_resources_statement" || type == "synchronized_statement") {
      const CfgIndex head = open(stmt, CfgRole::Guard, preds);
      for (NodeId c : structural_children(stmt))
        if (tree_.node(c).label == "block")
          return flow_sequence(c, {head});
      return {head};
    }

    const CfgIndex n = open(stmt, CfgRole::Simple, preds);

    if (type == "break_statement" || type == "yield_statement") {
      FlowContext *ctx = nullptr;
      if (type == "yield_statement") {
        for (auto it = contexts_.rbegin(); it != contexts_.rend() && !ctx; ++it)
          if (it->kind == FlowContext::Kind::Switch)
            ctx = &*it;
      } else {
        ctx = find_break_target(identifier_text(stmt));
      }
      if (!ctx)
        return {n};
      ctx->breaks.push_back(n);
      return {};
    }
    if (type == "continue_statement") {
      FlowContext *ctx = find_continue_target(identifier_text(stmt));
      if (!ctx)
        return {n};
      succ_[n].push_back(ctx->continue_target);
      return {};
    }
    if (type == "return_statement" || type == "throw_statement")
      return {};
    return {n};
  }

  std::vector<CfgIndex> flow_switch(NodeId stmt, std::vector<CfgIndex> preds, std::string label) {
    const CfgIndex head = open(stmt, CfgRole::Switch, preds);
    NodeId body = kNoNode;
    for (NodeId c : structural_children(stmt))
      if (tree_.node(c).label == "switch_block")
        body = c;
    if (body == kNoNode)
      return {head};

    contexts_.push_back({FlowContext::Kind::Switch, std::move(label), kNoCfgNode, {}});
    std::vector<CfgIndex> exits;
    std::vector<CfgIndex> fall;
    bool has_default = false;
    for (NodeId group : structural_children(body)) {
      const bool rule = tree_.node(group).label == "switch_rule";
      std::vector<NodeId> stmts;
      for (NodeId c : structural_children(group)) {
        const AstNode &n = tree_.node(c);
        if (n.label == "switch_label") {
          if (!n.children.empty() && tree_.node(n.children.front()).label == "default")
            has_default = true;
        } else {
          stmts.push_back(c);
        }
      }
      std::vector<CfgIndex> in{head};
      if (!rule)
        in.insert(in.end(), fall.begin(), fall.end());
      const CfgIndex case_node = open(group, CfgRole::CaseLabel, in);
      std::vector<CfgIndex> cur{case_node};
      for (NodeId s : stmts)
        cur = flow(s, std::move(cur));
      if (rule) {
        exits.insert(exits.end(), cur.begin(), cur.end());
        fall.clear();
      } else {
        fall = std::move(cur);
      }
    }
    exits.insert(exits.end(), fall.begin(), fall.end());
    auto &breaks = contexts_.back().breaks;
    exits.insert(exits.end(), breaks.begin(), breaks.end());
    contexts_.pop_back();
    if (!has_default)
      exits.push_back(head);
    return exits;
  }

  Cfg finish() {
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<CfgIndex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const CfgIndex u = stack.back();
      stack.pop_back();
      for (CfgIndex v : succ_[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }

    std::vector<CfgIndex> order;
    for (CfgIndex i = 0; i < nodes_.size(); ++i)
      if (seen[i])
        order.push_back(i);
    std::sort(order.begin(), order.end(), [&](CfgIndex a, CfgIndex b) { return nodes_[a].ast < nodes_[b].ast; });
    std::vector<CfgIndex> remap(nodes_.size(), kNoCfgNode);
    for (CfgIndex i = 0; i < order.size(); ++i)
      remap[order[i]] = i;

    Cfg cfg;
    cfg.nodes.reserve(order.size());
    cfg.succ.resize(order.size());
    for (CfgIndex old : order) {
      cfg.nodes.push_back(nodes_[old]);
      auto &out = cfg.succ[remap[old]];
      for (CfgIndex v : succ_[old])
        out.push_back(remap[v]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    cfg.entry = 0;
    return cfg;
  }

  const AstTree &tree_;
  std::vector<CfgNode> nodes_;
  std::vector<std::vector<CfgIndex>> succ_;
  std::vector<FlowContext> contexts_;
};

} // namespace

std::vector<std::vector<CfgIndex>> Cfg::predecessors() const {
  std::vector<std::vector<CfgIndex>> pred(nodes.size());
  for (CfgIndex u = 0; u < succ.size(); ++u)
    for (CfgIndex v : succ[u])
      pred[v].push_back(u);
  return pred;
}

Cfg Cfg::from_edges(std::size_t node_count, const std::vector<std::pair<CfgIndex, CfgIndex>> &edges) {
  if (node_count == 0)
    throw InputError("graph needs at least one node");
  Cfg cfg;
  cfg.nodes.assign(node_count, CfgNode{});
  cfg.nodes.front().role = CfgRole::Entry;
  cfg.succ.resize(node_count);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw InputError("edge endpoint out of range");
    cfg.succ[u].push_back(v);
  }
  for (auto &s : cfg.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return cfg;
}

Cfg build_cfg(const AstTree &method_tree) {
  if (method_tree.empty())
    throw InputError("control flow graph requires a non-empty tree");
  return CfgBuilder(method_tree).run();
}

} // namespace astkit
