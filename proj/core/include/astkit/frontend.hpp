#pragma once

#include "astkit/ast.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace astkit {

struct SourceSnippet {
  std::string id;
  std::string language = "java";
  std::string code;
};

struct FrontendConfig {
  std::string language = "java";
  /// Drop anonymous `{ } ( ) ; , .` tokens during normalization.
  bool drop_punctuation = true;
};

//===----------------------------------------------------------------------===//
// Concrete (backend) trees
//===----------------------------------------------------------------------===//

using ConcreteId = std::uint32_t;

struct ConcreteNode {
  std::string type;
  bool named = false;
  bool missing = false; // inserted by error recovery, zero width
  bool extra = false;   // comments and other extras
  bool error = false;   // an ERROR node
  std::uint32_t start_byte = 0;
  std::uint32_t end_byte = 0;
  std::vector<ConcreteId> children;
};

/// Typed node tree as produced by a parser backend. Owns the source so node
/// text can be sliced out of it. Node 0 is the root.
struct ConcreteTree {
  std::string source;
  std::vector<ConcreteNode> nodes;

  [[nodiscard]] std::string_view text(ConcreteId id) const {
    const ConcreteNode &n = nodes.at(id);
    return std::string_view(source).substr(n.start_byte, n.end_byte - n.start_byte);
  }
  /// ERROR plus MISSING nodes in the subtree.
  [[nodiscard]] std::size_t error_count(ConcreteId root = 0) const;
};

/// Parse text into a typed tree. Instances are not thread-safe; give each
/// worker its own.
class ParserBackend {
public:
  virtual ~ParserBackend() = default;
  [[nodiscard]] virtual std::string_view language() const noexcept = 0;
  [[nodiscard]] virtual ConcreteTree parse(std::string_view source) = 0;
};

[[nodiscard]] bool is_supported_language(std::string_view language) noexcept;

/// Default backend for `language` (tree-sitter). Honors ASTKIT_GRAMMAR_DIR.
/// Throws ConfigError for unsupported languages or unloadable grammars.
[[nodiscard]] std::unique_ptr<ParserBackend> make_backend(std::string_view language);

/// Maps the subtree at `root` onto the canonical AST: named nodes become
/// NonTerminal/Terminal, token text becomes Value leaves, comments and
/// MISSING placeholders are dropped, and so is anonymous punctuation when
/// `config.drop_punctuation` is set.
[[nodiscard]] AstTree normalize_tree(const ConcreteTree &concrete, ConcreteId root,
                                     const FrontendConfig &config);

//===----------------------------------------------------------------------===//
// Method-level parsing
//===----------------------------------------------------------------------===//

struct ParseOutcome {
  AstTree tree;
  std::size_t error_node_count = 0;
  bool wrapped = false; // parsed inside a synthetic `class __W { ... }`
};

/// Owns one backend; confine each instance to a single thread.
class Frontend {
public:
  /// Throws ConfigError for an unsupported language.
  explicit Frontend(FrontendConfig config = {});
  Frontend(FrontendConfig config, std::unique_ptr<ParserBackend> backend);

  /// Errors: ConfigError (language mismatch), InputError (blank code),
  /// ParseError (no method and no usable fragment).
  [[nodiscard]] ParseOutcome parse(const SourceSnippet &snippet);

  [[nodiscard]] const FrontendConfig &config() const noexcept { return config_; }

private:
  FrontendConfig config_;
  std::unique_ptr<ParserBackend> backend_;
};

/// Convenience form that keeps one Frontend per thread and config.
[[nodiscard]] ParseOutcome parse_method(const SourceSnippet &snippet, const FrontendConfig &config = {});

} // namespace astkit
