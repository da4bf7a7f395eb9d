#include "astkit/tree_stats.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace astkit {

TreeStats tree_stats(const AstTree &tree, const Tokenizer &subtokenizer, const TreeStatsOptions &options) {
  TreeStats s;
  s.size = tree.size();
  if (tree.empty())
    return s;

  // Preorder ids: a parent always precedes its children, so one forward pass
  // fills depths.
  std::vector<std::size_t> depth(tree.size(), 1);
  std::size_t inner = 0;
  std::size_t child_total = 0;
  std::unordered_set<std::string_view> types;
  std::unordered_set<std::string> tokens;

  for (const AstNode &node : tree.nodes()) {
    for (NodeId c : node.children)
      depth[c] = depth[node.id] + 1;
    s.depth = std::max(s.depth, depth[node.id]);

    if (!node.children.empty())
      types.insert(node.label);
    else if (node.kind == NodeKind::Value)
      for (std::string &t : subtokenizer.tokenize(node.label))
        tokens.insert(std::move(t));

    std::size_t counted = node.children.size();
    if (options.exclude_value_children)
      counted = static_cast<std::size_t>(std::count_if(node.children.begin(), node.children.end(),
                                                       [&](NodeId c) { return tree.node(c).kind != NodeKind::Value; }));
    if (counted > 0) {
      ++inner;
      child_total += counted;
    }
  }
  s.branching_factor = inner == 0 ? 0.0 : static_cast<double>(child_total) / static_cast<double>(inner);
  s.unique_types = types.size();
  s.unique_tokens = tokens.size();
  return s;
}

TreeStats tree_stats(const AstTree &tree, const TreeStatsOptions &options) {
  static const SimpleTokenizer simple;
  return tree_stats(tree, simple, options);
}

MetricSummary summarize(std::vector<double> values) {
  if (values.empty())
    throw InputError("cannot summarize an empty list");
  std::sort(values.begin(), values.end());
  MetricSummary m;
  m.min = values.front();
  m.max = values.back();
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const std::size_t n = values.size();
  m.median = (n % 2 == 1) ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  return m;
}

CorpusStats aggregate_stats(std::span<const TreeStats> stats) {
  if (stats.empty())
    throw InputError("aggregate_stats requires at least one tree");
  auto column = [&](auto field) {
    std::vector<double> v;
    v.reserve(stats.size());
    for (const TreeStats &s : stats)
      v.push_back(static_cast<double>(field(s)));
    return summarize(std::move(v));
  };
  CorpusStats c;
  c.count = stats.size();
  c.size = column([](const TreeStats &s) { return s.size; });
  c.depth = column([](const TreeStats &s) { return s.depth; });
  c.branching_factor = column([](const TreeStats &s) { return s.branching_factor; });
  c.unique_types = column([](const TreeStats &s) { return s.unique_types; });
  c.unique_tokens = column([](const TreeStats &s) { return s.unique_tokens; });
  return c;
}

} // namespace astkit
