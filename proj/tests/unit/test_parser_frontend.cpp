#include "astkit/error.hpp"
#include "astkit/frontend.hpp"
#include "astkit/sexpr.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

using namespace astkit;

namespace {

SourceSnippet snip(std::string code) {
  SourceSnippet s;
  s.id = "t";
  s.code = std::move(code);
  return s;
}

std::vector<std::string> fixture_codes() {
  std::ifstream in(std::string(ASTKIT_FIXTURE_DIR) + "/java200.jsonl");
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    out.push_back(nlohmann::json::parse(line)["code"].get<std::string>());
  return out;
}

bool has_label(const AstTree &t, std::string_view label) {
  for (const AstNode &n : t.nodes())
    if (n.label == label)
      return true;
  return false;
}

class ScopedEnv {
public:
  ScopedEnv(const char *name, const char *value) : name_(name) {
    if (const char *old = std::getenv(name))
      old_ = old;
    ::setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (old_)
      ::setenv(name_, old_->c_str(), 1);
    else
      ::unsetenv(name_);
  }

private:
  const char *name_;
  std::optional<std::string> old_;
};

} // namespace

TEST_SUITE("parser_frontend") {

TEST_CASE("well-formed method") {
  const ParseOutcome p = parse_method(snip("int id(int a){return a;}"));
  CHECK(p.error_node_count == 0);
  CHECK(p.tree.root().label == "method_declaration");
  CHECK(to_sexpr(p.tree) ==
        R"((method_declaration (integral_type "int") (identifier "id") (formal_parameters (formal_parameter )"
        R"((integral_type "int") (identifier "a"))) (block (return_statement "return" (identifier "a")))))");
}

TEST_CASE("broken input yields an outcome, not an exception") {
  const ParseOutcome p = parse_method(snip("int f( {"));
  CHECK(p.error_node_count >= 1);
  CHECK_FALSE(p.tree.empty());
}

TEST_CASE("blank input and bad languages") {
  CHECK_THROWS_AS((void)parse_method(snip("")), InputError);
  CHECK_THROWS_AS((void)parse_method(snip(" \n\t")), InputError);
  SourceSnippet py = snip("def f(): pass");
  py.language = "python";
  CHECK_THROWS_AS((void)parse_method(py), ConfigError);
  FrontendConfig cfg;
  cfg.language = "cobol";
  CHECK_THROWS_AS(Frontend{cfg}, ConfigError);
  CHECK_THROWS_AS((void)parse_method(snip("// only a comment")), ParseError);
}

TEST_CASE("identifiers become terminals with a value child") {
  const ParseOutcome p = parse_method(snip("int compare(int a, int b) { return a - b; }"));
  bool found = false;
  for (const AstNode &n : p.tree.nodes()) {
    if (n.label != "identifier" || p.tree.node(n.children.at(0)).label != "compare")
      continue;
    found = true;
    CHECK(n.kind == NodeKind::Terminal);
    REQUIRE(n.children.size() == 1);
    CHECK(p.tree.node(n.children[0]).kind == NodeKind::Value);
  }
  CHECK(found);
}

TEST_CASE("punctuation flag") {
  const std::string code = "void f(int a, int b) { g(a, b); h(); }";
  FrontendConfig keep;
  keep.drop_punctuation = false;
  const ParseOutcome dropped = parse_method(snip(code));
  const ParseOutcome kept = parse_method(snip(code), keep);
  CHECK_FALSE(has_label(dropped.tree, ";"));
  CHECK_FALSE(has_label(dropped.tree, "{"));
  CHECK(has_label(kept.tree, ";"));
  CHECK(has_label(kept.tree, "("));
  CHECK(kept.tree.size() > dropped.tree.size());
}

TEST_CASE("comments are dropped") {
  const ParseOutcome a = parse_method(snip("/** doc */ int f() { // note\n return 1; /* x */ }"));
  const ParseOutcome b = parse_method(snip("int f() { return 1; }"));
  CHECK(a.tree == b.tree);
}

TEST_CASE("wrapping is invisible") {
  for (const std::string &code : {std::string("int id(int a){return a;}"),
                                  std::string("public static <T> void each(List<T> xs) { for (T x : xs) use(x); }"),
                                  std::string("@Override public String toString() { return \"s\"; }")}) {
    const ParseOutcome bare = parse_method(snip(code));
    const ParseOutcome wrapped = parse_method(snip("class K {\n" + code + "\n}"));
    CHECK(bare.tree == wrapped.tree);
    CHECK(bare.error_node_count == 0);
  }
}

TEST_CASE("constructors are methods too") {
  const ParseOutcome p = parse_method(snip("Holder(int size) { this.size = size; }"));
  CHECK(p.error_node_count == 0);
  CHECK(p.tree.root().label == "constructor_declaration");
}

TEST_CASE("fixture corpus: deterministic, valid, monotone in punctuation") {
  FrontendConfig keep;
  keep.drop_punctuation = false;
  Frontend second;
  for (const std::string &code : fixture_codes()) {
    const ParseOutcome a = parse_method(snip(code));
    const ParseOutcome b = second.parse(snip(code));
    CHECK(a.tree == b.tree);
    CHECK(a.error_node_count == b.error_node_count);
    CHECK(AstTree::from_nodes({a.tree.nodes().begin(), a.tree.nodes().end()}, 0) == a.tree);
    CHECK(parse_method(snip(code), keep).tree.size() >= a.tree.size());
  }
}

TEST_CASE("grammar directory override") {
  const std::string code = "int id(int a){return a;}";
  const ParseOutcome builtin = parse_method(snip(code));
  {
    ScopedEnv env("ASTKIT_GRAMMAR_DIR", ASTKIT_TEST_GRAMMAR_DIR);
    Frontend loaded;
    CHECK(loaded.parse(snip(code)).tree == builtin.tree);
  }
  {
    ScopedEnv env("ASTKIT_GRAMMAR_DIR", "/nonexistent/grammars");
    CHECK_THROWS_AS(Frontend{}, ConfigError);
  }
}

} // TEST_SUITE
