#pragma once

#include "astkit/ast.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace astkit {

enum class Direction : std::uint8_t { Up, Down };

/// Leaf-to-leaf AST path with its endpoint values. `nodes` holds n1..n(k+1)
/// (both Value leaves included) and `directions` d1..dk: a run of Up followed
/// by a run of Down through the lowest common ancestor.
struct PathContext {
  NodeId start_leaf = 0;
  NodeId end_leaf = 0;
  std::string start_value;
  std::string end_value;
  std::vector<NodeId> nodes;
  std::vector<Direction> directions;
  std::size_t width = 0; // child-index gap at the LCA

  [[nodiscard]] std::size_t length() const noexcept { return directions.size(); }
  bool operator==(const PathContext &) const = default;
};

struct PathConfig {
  std::size_t max_length = 8;
  std::size_t max_width = 2;
  std::optional<std::size_t> max_contexts = 200; // nullopt = unlimited
  std::uint64_t sample_seed = 0;
};

/// All Value-leaf pairs (left leaf first, document order) whose path satisfies
/// the length and width bounds. When more than `max_contexts` qualify, a
/// seeded uniform sample is returned, still in document order.
/// Throws InputError for max_length == 0 or max_contexts == 0.
[[nodiscard]] std::vector<PathContext> extract_path_contexts(const AstTree &tree, const PathConfig &config = {});

/// `x_start<TAB>n1 ^ n2 ... _ nk+1<TAB>x_end`; labels percent-escape `%`,
/// whitespace, `^`, and a bare `_`.
[[nodiscard]] std::string format_path_context(const AstTree &tree, const PathContext &context);
[[nodiscard]] std::string percent_escape_label(std::string_view label);

} // namespace astkit
