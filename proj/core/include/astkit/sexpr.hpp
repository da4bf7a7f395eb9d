#pragma once

#include "astkit/ast.hpp"

#include <string>
#include <string_view>

namespace astkit {

// Tree interchange format, one tree per line:
//
//   (LABEL child child ...)   NonTerminal / Terminal
//   "token text"              Value leaf
//
// Value strings escape `"`, `\`, newline, carriage return and tab with a
// backslash. Bare labels escape whitespace (`\s \t \n \r`), brackets, quotes,
// backslash and a leading colon; the empty label is `\e`.
//
// Kinds are inferred on read: a list whose children are all strings is a
// Terminal, anything else a NonTerminal. The two shapes inference cannot
// recover carry a marker after the label: `:n` (NonTerminal whose children are
// all Values) and `:t` (childless Terminal).

[[nodiscard]] std::string to_sexpr(const AstTree &tree);

/// Throws ParseError (byte offset) on malformed input.
[[nodiscard]] AstTree parse_sexpr(std::string_view text);

} // namespace astkit
