#include "astkit/frontend.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace astkit {
namespace {

constexpr std::string_view kWrapPrefix = "class __W {\n";
constexpr std::string_view kWrapSuffix = "\n}";

bool is_method_type(std::string_view type) {
  return type == "method_declaration" || type == "constructor_declaration" ||
         type == "compact_constructor_declaration";
}

std::optional<ConcreteId> find_method(const ConcreteTree &tree) {
  std::vector<ConcreteId> stack{0};
  while (!stack.empty()) {
    const ConcreteId id = stack.back();
    stack.pop_back();
    const ConcreteNode &n = tree.nodes[id];
    if (n.named && is_method_type(n.type))
      return id;
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back(*it);
  }
  return std::nullopt;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

struct Attempt {
  ConcreteTree tree;
  std::optional<ConcreteId> method;
  std::size_t errors = 0;
};

} // namespace

Frontend::Frontend(FrontendConfig config) : config_(std::move(config)) {
  backend_ = make_backend(config_.language);
}

Frontend::Frontend(FrontendConfig config, std::unique_ptr<ParserBackend> backend)
    : config_(std::move(config)), backend_(std::move(backend)) {
  if (!backend_)
    throw ConfigError("frontend requires a backend");
  if (backend_->language() != config_.language)
    throw ConfigError("backend language '" + std::string(backend_->language()) +
                      "' does not match configured language '" + config_.language + "'");
}

ParseOutcome Frontend::parse(const SourceSnippet &snippet) {
  if (!snippet.language.empty() && snippet.language != config_.language) {
    if (!is_supported_language(snippet.language))
      throw ConfigError("unsupported language '" + snippet.language + "'");
    throw ConfigError("snippet language '" + snippet.language + "' does not match frontend language '" +
                      config_.language + "'");
  }
  if (blank(snippet.code))
    throw InputError("empty source snippet" + (snippet.id.empty() ? std::string() : " '" + snippet.id + "'"));

  auto attempt = [&](std::string_view source) {
    Attempt a{backend_->parse(source), std::nullopt, 0};
    a.method = find_method(a.tree);
    a.errors = a.tree.error_count();
    return a;
  };

  Attempt bare = attempt(snippet.code);
  if (bare.method && bare.errors == 0)
    return {normalize_tree(bare.tree, *bare.method, config_), 0, false};

  std::string wrapped_source;
  wrapped_source.reserve(snippet.code.size() + kWrapPrefix.size() + kWrapSuffix.size());
  wrapped_source.append(kWrapPrefix).append(snippet.code).append(kWrapSuffix);
  Attempt wrapped = attempt(wrapped_source);

  const bool use_wrapped = wrapped.method && (!bare.method || wrapped.errors < bare.errors);
  if (use_wrapped)
    return {normalize_tree(wrapped.tree, *wrapped.method, config_), wrapped.errors, true};
  if (bare.method)
    return {normalize_tree(bare.tree, *bare.method, config_), bare.errors, false};

  // No method anywhere: fall back to the whole bare parse as a fragment, as
  // long as it holds something besides comments.
  const ConcreteNode &root = bare.tree.nodes.front();
  const bool has_content = std::any_of(root.children.begin(), root.children.end(), [&](ConcreteId c) {
    const ConcreteNode &n = bare.tree.nodes[c];
    return !(n.extra && !n.error) && !n.missing;
  });
  if (!has_content)
    throw ParseError("no method declaration or parseable fragment in '" + snippet.id + "'", 0);
  return {normalize_tree(bare.tree, 0, config_), bare.errors, false};
}

ParseOutcome parse_method(const SourceSnippet &snippet, const FrontendConfig &config) {
  thread_local std::map<std::pair<std::string, bool>, std::unique_ptr<Frontend>> cache;
  auto key = std::make_pair(config.language, config.drop_punctuation);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Frontend>(config)).first;
  return it->second->parse(snippet);
}

} // namespace astkit
