#pragma once

#include "astkit/ast.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astkit {

inline constexpr std::string_view kMaskToken = "<mask>";

/// Depth-first, left-to-right node ids. Equal to 0..n-1 by construction, kept
/// as an operation so consumers do not rely on the numbering detail.
[[nodiscard]] std::vector<NodeId> preorder_nodes(const AstTree &tree);

/// Level-order labels.
[[nodiscard]] std::vector<std::string> bfs_sequence(const AstTree &tree);

/// Structure-based traversal: SBT(n) = "(" label SBT(c1) ... SBT(ck) ")" label.
/// Always 4 tokens per node.
[[nodiscard]] std::vector<std::string> sbt_encode(const AstTree &tree);

/// Inverse of sbt_encode. Decoding is positional, so labels may themselves be
/// "(" or ")". Without `kinds` (preorder), leaves become Value and nodes whose
/// children are all leaves become Terminal. Throws ParseError with a token
/// index on malformed input.
[[nodiscard]] AstTree sbt_decode(std::span<const std::string> tokens,
                                 std::span<const NodeKind> kinds = {});

/// Copy of `tree` with every Value label replaced by `<mask>`.
[[nodiscard]] AstTree mask_leaves(const AstTree &tree);

// Line formats: tokens joined by single spaces. Labels escape backslash,
// whitespace (\s \t \n \r), brackets, the empty string (\e) and a literal
// `<mask>` (as \<mask>); SBT structure brackets stay bare.

[[nodiscard]] std::string escape_token(std::string_view label);
[[nodiscard]] std::string unescape_token(std::string_view token);

/// One SBT line. With `masked`, Value nodes labelled `<mask>` are written as
/// the bare reserved token; everywhere else `<mask>` is escaped.
[[nodiscard]] std::string sbt_line(const AstTree &tree, bool masked = false);
[[nodiscard]] std::string bfs_line(const AstTree &tree);

/// Splits an SBT line back into the token list sbt_decode expects.
[[nodiscard]] std::vector<std::string> parse_sbt_line(std::string_view line);

} // namespace astkit
