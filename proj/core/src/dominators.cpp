#include "astkit/cfg.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <numeric>

namespace astkit {

DominatorTree build_dominator_tree(const Cfg &cfg) {
  const std::size_t n = cfg.size();
  if (n == 0)
    throw InputError("dominator tree of an empty graph");
  if (cfg.entry >= n)
    throw InputError("entry node out of range");

  // Iterative postorder DFS from the entry.
  std::vector<CfgIndex> postorder;
  postorder.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<CfgIndex, std::size_t>> stack{{cfg.entry, 0}};
  seen[cfg.entry] = 1;
  while (!stack.empty()) {
    auto &[u, next] = stack.back();
    if (next < cfg.succ[u].size()) {
      const CfgIndex v = cfg.succ[u][next++];
      if (!seen[v]) {
        seen[v] = 1;
        stack.emplace_back(v, 0);
      }
    } else {
      postorder.push_back(u);
      stack.pop_back();
    }
  }
  if (postorder.size() != n)
    throw InputError("graph has nodes unreachable from the entry");

  std::vector<std::size_t> po_number(n);
  for (std::size_t i = 0; i < n; ++i)
    po_number[postorder[i]] = i;
  const auto pred = cfg.predecessors();

  std::vector<CfgIndex> idom(n, kNoCfgNode);
  idom[cfg.entry] = cfg.entry;
  auto intersect = [&](CfgIndex a, CfgIndex b) {
    while (a != b) {
      while (po_number[a] < po_number[b])
        a = idom[a];
      while (po_number[b] < po_number[a])
        b = idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = postorder.rbegin(); it != postorder.rend(); ++it) {
      const CfgIndex u = *it;
      if (u == cfg.entry)
        continue;
      CfgIndex best = kNoCfgNode;
      for (CfgIndex p : pred[u]) {
        if (idom[p] == kNoCfgNode)
          continue;
        best = best == kNoCfgNode ? p : intersect(p, best);
      }
      if (best != idom[u]) {
        idom[u] = best;
        changed = true;
      }
    }
  }

  idom[cfg.entry] = kNoCfgNode;
  return {std::move(idom), cfg.entry};
}

std::vector<std::vector<CfgIndex>> partition_blocks(const DominatorTree &dom, const Cfg &cfg) {
  const std::size_t n = cfg.size();
  if (dom.idom.size() != n)
    throw InputError("dominator tree does not match the graph");
  std::vector<std::size_t> in_degree(n, 0);
  for (const auto &s : cfg.succ)
    for (CfgIndex v : s)
      ++in_degree[v];

  std::vector<CfgIndex> group(n);
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](CfgIndex x) {
    while (group[x] != x) {
      group[x] = group[group[x]];
      x = group[x];
    }
    return x;
  };

  for (CfgIndex v = 0; v < n; ++v) {
    const CfgIndex u = dom.idom[v];
    if (u == kNoCfgNode)
      continue;
    if (in_degree[v] > 1 || cfg.succ[u].size() > 1)
      continue;
    const CfgIndex a = find(u);
    const CfgIndex b = find(v);
    if (a != b)
      group[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::vector<CfgIndex>> blocks;
  std::vector<std::size_t> block_of(n, static_cast<std::size_t>(-1));
  for (CfgIndex v = 0; v < n; ++v) {
    const CfgIndex r = find(v);
    if (block_of[r] == static_cast<std::size_t>(-1)) {
      block_of[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(v);
  }
  return blocks;
}

} // namespace astkit
