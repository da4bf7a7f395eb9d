#include "astkit/tokenize.hpp"

#include "astkit/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

namespace astkit {
namespace {

enum class CharClass { Upper, Lower, Digit, Other };

CharClass classify(unsigned char c) {
  if (c >= 'A' && c <= 'Z')
    return CharClass::Upper;
  if ((c >= 'a' && c <= 'z') || c >= 0x80)
    return CharClass::Lower;
  if (c >= '0' && c <= '9')
    return CharClass::Digit;
  return CharClass::Other;
}

bool is_letter(CharClass c) { return c == CharClass::Upper || c == CharClass::Lower; }

class TempFile {
public:
  TempFile() {
    const char *dir = std::getenv("TMPDIR");
    path_ = std::string(dir != nullptr && *dir != '\0' ? dir : "/tmp") + "/astkit-tok-XXXXXX";
    const int fd = ::mkstemp(path_.data());
    if (fd < 0)
      throw ConfigError("cannot create temporary file for external tokenizer");
    ::close(fd);
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;

  [[nodiscard]] const std::string &path() const { return path_; }

private:
  std::string path_;
};

std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += '\'';
  return out;
}

} // namespace

std::vector<std::string> split_subtokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty())
      out.push_back(std::move(current));
    current.clear();
  };

  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    const CharClass cls = classify(c);
    if (cls == CharClass::Other) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const CharClass prev = classify(static_cast<unsigned char>(text[i - 1]));
      bool boundary = false;
      if (prev == CharClass::Lower && cls == CharClass::Upper)
        boundary = true;
      else if (is_letter(prev) != is_letter(cls))
        boundary = true; // letter/digit
      else if (prev == CharClass::Upper && cls == CharClass::Upper && i + 1 < n &&
               classify(static_cast<unsigned char>(text[i + 1])) == CharClass::Lower &&
               static_cast<unsigned char>(text[i + 1]) < 0x80)
        boundary = true; // end of an acronym: HTTP|Server
      if (boundary)
        flush();
    }
    current += (cls == CharClass::Upper) ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  }
  flush();
  return out;
}

std::vector<std::vector<std::string>> Tokenizer::tokenize_batch(std::span<const std::string> texts) const {
  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  for (const std::string &t : texts)
    out.push_back(tokenize(t));
  return out;
}

std::set<std::string> Tokenizer::token_set(std::string_view text) const {
  auto tokens = tokenize(text);
  return {std::make_move_iterator(tokens.begin()), std::make_move_iterator(tokens.end())};
}

CommandTokenizer::CommandTokenizer(std::string command) : command_(std::move(command)) {
  if (command_.empty())
    throw ConfigError("external tokenizer requires a command");
}

std::vector<std::string> CommandTokenizer::tokenize(std::string_view text) const {
  const std::string one(text);
  return tokenize_batch(std::span<const std::string>(&one, 1)).front();
}

std::vector<std::vector<std::string>>
CommandTokenizer::tokenize_batch(std::span<const std::string> texts) const {
  if (texts.empty())
    return {};
  TempFile input;
  {
    std::ofstream os(input.path(), std::ios::binary);
    for (const std::string &t : texts)
      os << nlohmann::json(t).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    if (!os)
      throw ConfigError("cannot write external tokenizer input");
  }

  const std::string cmd = command_ + " < " + shell_quote(input.path());
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr)
    throw ConfigError("cannot start external tokenizer: " + command_);

  std::string buffer;
  char chunk[4096];
  std::size_t got = 0;
  while ((got = std::fread(chunk, 1, sizeof chunk, pipe)) > 0)
    buffer.append(chunk, got);
  const int status = ::pclose(pipe);
  if (status != 0)
    throw ConfigError("external tokenizer failed (status " + std::to_string(status) + "): " + command_);

  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  std::size_t start = 0;
  while (start < buffer.size()) {
    std::size_t end = buffer.find('\n', start);
    if (end == std::string::npos)
      end = buffer.size();
    const std::string_view line(buffer.data() + start, end - start);
    start = end + 1;
    if (line.empty())
      continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception &e) {
      throw ConfigError(std::string("external tokenizer produced invalid output: ") + e.what());
    }
  }
  if (out.size() != texts.size())
    throw ConfigError("external tokenizer returned " + std::to_string(out.size()) + " lines for " +
                      std::to_string(texts.size()) + " inputs");
  return out;
}

std::unique_ptr<Tokenizer> make_tokenizer(const TokenizerConfig &config) {
  switch (config.mode) {
  case TokenizerMode::Simple:
    return std::make_unique<SimpleTokenizer>();
  case TokenizerMode::External:
    if (config.external_spec.empty())
      throw ConfigError("external tokenizer mode requires a command");
    return std::make_unique<CommandTokenizer>(config.external_spec);
  }
  throw ConfigError("unknown tokenizer mode");
}

} // namespace astkit
