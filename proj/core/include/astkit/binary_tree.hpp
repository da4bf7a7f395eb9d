#pragma once

#include "astkit/ast.hpp"

#include <string_view>

namespace astkit {

inline constexpr std::string_view kGroupLabel = "<grp>";

/// Binary-tree conversion in two passes:
///  1. top-down, a node with more than two children keeps its leftmost child
///     and gets a synthetic `<grp>` right child holding the rest (repeated
///     until every arity is <= 2);
///  2. every single-child node is merged with its child; the merged label is
///     `parent:child` and the merged node takes the child's kind.
/// Every node of the result has 0 or 2 children. Terminals that end up with a
/// `<grp>` child become NonTerminals.
[[nodiscard]] AstTree to_binary(const AstTree &tree);

[[nodiscard]] bool is_binary(const AstTree &tree) noexcept;

} // namespace astkit
