#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace astkit {

/// Caller supplied something the operation cannot accept (empty input,
/// mismatched lengths, tree not rooted where required, ...).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Misconfiguration: unsupported language, unloadable grammar, unusable
/// external tokenizer.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input. `position` is a token index for token streams
/// and a byte offset for character streams.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace astkit
