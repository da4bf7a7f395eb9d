#pragma once

#include "astkit/ast.hpp"
#include "astkit/frontend.hpp"

#include <string>
#include <vector>

namespace astkit {

struct SplitBlock {
  /// Statement roots in `SplitAstSet::method`, in source order. The block
  /// holding the declaration lists only its statements.
  std::vector<NodeId> statements;
  std::string code;
  AstTree tree;
};

struct SplitAstSet {
  /// Punctuation-keeping parse of the whole method that the blocks refer to.
  AstTree method;
  std::vector<SplitBlock> blocks;
  std::size_t skipped_blocks = 0;
};

/// Splits a method along the blocks of its dominator tree. Each block becomes
/// `<declaration> { <statements> }` with any opened control headers closed,
/// and is parsed with `frontend`. Blocks whose code yields no method tree are
/// skipped and counted.
///
/// Errors: whatever `Frontend::parse` raises for the full method, and
/// InputError when the snippet holds no method declaration.
[[nodiscard]] SplitAstSet split_asts(const SourceSnippet &snippet, Frontend &frontend);

/// The split code of each block of an already parsed, punctuation-keeping
/// method tree.
[[nodiscard]] std::vector<std::pair<std::vector<NodeId>, std::string>> split_code(const AstTree &method);

} // namespace astkit
