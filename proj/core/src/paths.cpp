#include "astkit/paths.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <tuple>

namespace astkit {
namespace {

struct Candidate {
  NodeId a;
  NodeId b;
  NodeId lca;
  std::uint32_t up;
  std::uint32_t down;
  std::uint32_t width;
};

// Unbiased draw in [0, n).
std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

} // namespace

std::vector<PathContext> extract_path_contexts(const AstTree &tree, const PathConfig &config) {
  if (config.max_length == 0)
    throw InputError("max_length must be at least 1");
  if (config.max_contexts && *config.max_contexts == 0)
    throw InputError("max_contexts must be positive");

  std::vector<NodeId> leaves;
  std::vector<std::uint32_t> depth(tree.size(), 0);
  for (const AstNode &node : tree.nodes()) {
    for (NodeId c : node.children)
      depth[c] = depth[node.id] + 1;
    if (node.kind == NodeKind::Value)
      leaves.push_back(node.id);
  }

  std::vector<Candidate> found;
  for (NodeId a : leaves) {
    std::uint32_t up = 0;
    NodeId below = a;
    NodeId u = tree.parent(a);
    while (u != kNoNode && up + 1 < config.max_length) {
      ++up;
      const auto &children = tree.node(u).children;
      const std::size_t ia = tree.child_index(below);
      const std::size_t last = std::min(children.size() - 1, ia + config.max_width);
      for (std::size_t ib = ia + 1; ib <= last; ++ib) {
        const NodeId sub = children[ib];
        auto lo = std::lower_bound(leaves.begin(), leaves.end(), sub);
        auto hi = std::lower_bound(lo, leaves.end(), tree.subtree_end(sub));
        for (auto it = lo; it != hi; ++it) {
          const std::uint32_t down = depth[*it] - depth[u];
          if (up + down <= config.max_length)
            found.push_back({a, *it, u, up, down, static_cast<std::uint32_t>(ib - ia)});
        }
      }
      below = u;
      u = tree.parent(u);
    }
  }

  std::sort(found.begin(), found.end(),
            [](const Candidate &x, const Candidate &y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });

  if (config.max_contexts && found.size() > *config.max_contexts) {
    std::mt19937_64 rng(config.sample_seed);
    std::vector<std::uint32_t> idx(found.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
    const std::size_t k = *config.max_contexts;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + draw_below(rng, idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    std::vector<Candidate> kept;
    kept.reserve(k);
    for (std::uint32_t i : idx)
      kept.push_back(found[i]);
    found = std::move(kept);
  }

  std::vector<PathContext> out;
  out.reserve(found.size());
  for (const Candidate &c : found) {
    PathContext p;
    p.start_leaf = c.a;
    p.end_leaf = c.b;
    p.start_value = tree.node(c.a).label;
    p.end_value = tree.node(c.b).label;
    p.width = c.width;
    for (NodeId n = c.a; n != c.lca; n = tree.parent(n))
      p.nodes.push_back(n);
    p.nodes.push_back(c.lca);
    const std::size_t mark = p.nodes.size();
    for (NodeId n = c.b; n != c.lca; n = tree.parent(n))
      p.nodes.push_back(n);
    std::reverse(p.nodes.begin() + static_cast<std::ptrdiff_t>(mark), p.nodes.end());
    p.directions.assign(c.up, Direction::Up);
    p.directions.insert(p.directions.end(), c.down, Direction::Down);
    out.push_back(std::move(p));
  }
  return out;
}

std::string percent_escape_label(std::string_view label) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  auto encode = [](std::string &out, unsigned char c) {
    out += '%';
    out += kHex[c >> 4];
    out += kHex[c & 0xf];
  };
  std::string out;
  if (label == "_") {
    encode(out, '_');
    return out;
  }
  for (char ch : label) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == '%' || c == '^' || std::isspace(c) || c < 0x20 || c == 0x7f)
      encode(out, c);
    else
      out += ch;
  }
  return out;
}

std::string format_path_context(const AstTree &tree, const PathContext &context) {
  std::string out = percent_escape_label(context.start_value);
  out += '\t';
  for (std::size_t i = 0; i < context.nodes.size(); ++i) {
    if (i > 0)
      out += context.directions[i - 1] == Direction::Up ? " ^ " : " _ ";
    out += percent_escape_label(tree.node(context.nodes[i]).label);
  }
  out += '\t';
  out += percent_escape_label(context.end_value);
  return out;
}

} // namespace astkit
