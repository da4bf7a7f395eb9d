#pragma once

#include "astkit/ast.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace astkit {

inline constexpr int kDefaultMaxDistance = 7;

struct RelationEntry {
  NodeId i = 0;
  NodeId j = 0;
  int d = 0;
  auto operator<=>(const RelationEntry &) const = default;
};

/// Sparse ancestor (A) and sibling (S) distance matrices over preorder node
/// ids. Only i < j is stored with d > 0; the mirror entry is (j, i, -d).
struct RelationMatrices {
  std::size_t node_count = 0;
  int max_distance = kDefaultMaxDistance;
  std::vector<RelationEntry> ancestor; // sorted by (i, j)
  std::vector<RelationEntry> sibling;  // sorted by (i, j)

  /// Signed lookups; nullopt when the pair is unrelated or beyond the
  /// threshold.
  [[nodiscard]] std::optional<int> ancestor_distance(NodeId i, NodeId j) const;
  [[nodiscard]] std::optional<int> sibling_distance(NodeId i, NodeId j) const;
};

/// Throws InputError for max_distance < 1.
[[nodiscard]] RelationMatrices compute_relations(const AstTree &tree, int max_distance = kDefaultMaxDistance);

/// d + P + 1 for d in [-P, P], else 0. Throws InputError for P < 1.
[[nodiscard]] int delta_index(std::optional<int> d, int max_distance = kDefaultMaxDistance);

/// COO text: `# nodes=N P=P order=preorder`, then `A i j d` and `S i j d`.
[[nodiscard]] std::string to_coo(const RelationMatrices &m);

} // namespace astkit
