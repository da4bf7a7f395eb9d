#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astkit {

/// Splits on non-alphanumerics, lower->upper camelCase boundaries, acronym
/// boundaries (`HTTPServer` -> http, server) and letter/digit boundaries, then
/// lowercases. Bytes >= 0x80 are treated as caseless letters so UTF-8
/// identifiers stay whole.
[[nodiscard]] std::vector<std::string> split_subtokens(std::string_view text);

class Tokenizer {
public:
  virtual ~Tokenizer() = default;

  /// Token sequence (multiset order preserved).
  [[nodiscard]] virtual std::vector<std::string> tokenize(std::string_view text) const = 0;

  /// Batch form; external tokenizers override it to amortize process start-up.
  [[nodiscard]] virtual std::vector<std::vector<std::string>>
  tokenize_batch(std::span<const std::string> texts) const;

  [[nodiscard]] std::set<std::string> token_set(std::string_view text) const;
};

class SimpleTokenizer final : public Tokenizer {
public:
  [[nodiscard]] std::vector<std::string> tokenize(std::string_view text) const override {
    return split_subtokens(text);
  }
};

/// Runs a shell command that reads one JSON string per line on stdin and
/// writes one JSON array of strings per line on stdout.
class CommandTokenizer final : public Tokenizer {
public:
  explicit CommandTokenizer(std::string command);

  [[nodiscard]] std::vector<std::string> tokenize(std::string_view text) const override;
  [[nodiscard]] std::vector<std::vector<std::string>>
  tokenize_batch(std::span<const std::string> texts) const override;

private:
  std::string command_;
};

enum class TokenizerMode { Simple, External };

struct TokenizerConfig {
  TokenizerMode mode = TokenizerMode::Simple;
  std::string external_spec; // shell command when mode == External
};

/// Throws ConfigError when external mode has no command.
[[nodiscard]] std::unique_ptr<Tokenizer> make_tokenizer(const TokenizerConfig &config);

} // namespace astkit
