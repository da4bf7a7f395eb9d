#include "astkit/error.hpp"
#include "astkit/frontend.hpp"

#include <tree_sitter/api.h>

#include <dlfcn.h>

#include <cstdlib>
#include <map>
#include <mutex>

extern "C" const TSLanguage *tree_sitter_java(void);

namespace astkit {
namespace {

using LanguageFn = const TSLanguage *(*)();

// Grammars loaded from ASTKIT_GRAMMAR_DIR stay mapped for the process
// lifetime; TSLanguage pointers point into the shared object.
const TSLanguage *load_grammar(const std::string &dir, std::string_view language) {
  static std::mutex mutex;
  static std::map<std::string, const TSLanguage *> loaded;

  const std::string lang(language);
  const std::string path = dir + "/libtree-sitter-" + lang + ".so";
  std::lock_guard lock(mutex);
  if (auto it = loaded.find(path); it != loaded.end())
    return it->second;

  void *handle = ::dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (handle == nullptr) {
    const char *why = ::dlerror();
    throw ConfigError("cannot load grammar " + path + ": " + (why != nullptr ? why : "unknown error"));
  }
  const std::string symbol = "tree_sitter_" + lang;
  auto fn = reinterpret_cast<LanguageFn>(::dlsym(handle, symbol.c_str()));
  if (fn == nullptr)
    throw ConfigError("grammar " + path + " does not export " + symbol);
  const TSLanguage *ts_language = fn();
  loaded.emplace(path, ts_language);
  return ts_language;
}

const TSLanguage *resolve_language(std::string_view language) {
  if (!is_supported_language(language))
    throw ConfigError("unsupported language '" + std::string(language) + "'");
  if (const char *dir = std::getenv("ASTKIT_GRAMMAR_DIR"); dir != nullptr && *dir != '\0')
    return load_grammar(dir, language);
  return tree_sitter_java();
}

class TreeSitterBackend final : public ParserBackend {
public:
  explicit TreeSitterBackend(std::string_view language) : language_(language) {
    parser_ = ts_parser_new();
    if (!ts_parser_set_language(parser_, resolve_language(language))) {
      ts_parser_delete(parser_);
      throw ConfigError("grammar ABI version is incompatible with the tree-sitter runtime");
    }
  }
  ~TreeSitterBackend() override { ts_parser_delete(parser_); }
  TreeSitterBackend(const TreeSitterBackend &) = delete;
  TreeSitterBackend &operator=(const TreeSitterBackend &) = delete;

  [[nodiscard]] std::string_view language() const noexcept override { return language_; }

  [[nodiscard]] ConcreteTree parse(std::string_view source) override {
    ConcreteTree out;
    out.source.assign(source);
    TSTree *tree = ts_parser_parse_string(parser_, nullptr, out.source.data(),
                                          static_cast<std::uint32_t>(out.source.size()));
    if (tree == nullptr)
      throw ConfigError("tree-sitter returned no tree");
    collect(ts_tree_root_node(tree), out);
    ts_tree_delete(tree);
    return out;
  }

private:
  static ConcreteId add(TSNode node, ConcreteTree &out, ConcreteId parent) {
    const auto id = static_cast<ConcreteId>(out.nodes.size());
    ConcreteNode n;
    n.type = ts_node_type(node);
    n.named = ts_node_is_named(node);
    n.missing = ts_node_is_missing(node);
    n.extra = ts_node_is_extra(node);
    n.error = ts_node_is_error(node);
    n.start_byte = ts_node_start_byte(node);
    n.end_byte = ts_node_end_byte(node);
    out.nodes.push_back(std::move(n));
    if (parent != id)
      out.nodes[parent].children.push_back(id);
    return id;
  }

  static void collect(TSNode root, ConcreteTree &out) {
    out.nodes.reserve(ts_node_descendant_count(root));
    std::vector<ConcreteId> path{add(root, out, 0)};
    TSTreeCursor cursor = ts_tree_cursor_new(root);
    while (true) {
      if (ts_tree_cursor_goto_first_child(&cursor)) {
        path.push_back(add(ts_tree_cursor_current_node(&cursor), out, path.back()));
        continue;
      }
      bool finished = false;
      while (true) {
        if (ts_tree_cursor_goto_next_sibling(&cursor)) {
          path.pop_back();
          path.push_back(add(ts_tree_cursor_current_node(&cursor), out, path.back()));
          break;
        }
        if (!ts_tree_cursor_goto_parent(&cursor)) {
          finished = true;
          break;
        }
        path.pop_back();
      }
      if (finished)
        break;
    }
    ts_tree_cursor_delete(&cursor);
  }

  std::string language_;
  TSParser *parser_ = nullptr;
};

} // namespace

bool is_supported_language(std::string_view language) noexcept { return language == "java"; }

std::unique_ptr<ParserBackend> make_backend(std::string_view language) {
  return std::make_unique<TreeSitterBackend>(language);
}

} // namespace astkit
