// Acceptance run: one line per criterion, non-zero exit if any fails.

#include "astkit/binary_tree.hpp"
#include "astkit/cfg.hpp"
#include "astkit/eval_metrics.hpp"
#include "astkit/frontend.hpp"
#include "astkit/linearize.hpp"
#include "astkit/paths.hpp"
#include "astkit/relmat.hpp"
#include "astkit/split_ast.hpp"
#include "astkit/tree_stats.hpp"

#include "cli.hpp"
#include "compare_oracle.hpp"
#include "oracles.hpp"
#include "random_trees.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace astkit;
using namespace astkit::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Fixture {
  std::string id;
  std::string code;
};

std::vector<Fixture> load_fixture() {
  std::ifstream in(std::string(ASTKIT_FIXTURE_DIR) + "/java200.jsonl");
  std::vector<Fixture> out;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    out.push_back({j["id"].get<std::string>(), j["code"].get<std::string>()});
  }
  return out;
}

AstTree parse_code(const std::string &code) {
  SourceSnippet s;
  s.code = code;
  return parse_method(s).tree;
}

std::vector<NodeKind> kinds_of(const AstTree &t) {
  std::vector<NodeKind> out;
  for (const AstNode &n : t.nodes())
    out.push_back(n.kind);
  return out;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

int failures = 0;

void criterion(int n, double limit_seconds, const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s budget)";
  }
  if (!o.ok)
    ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << "criterion " << n << ": " << (o.ok ? "PASS" : "FAIL") << "  [" << timing << "] " << o.detail
            << std::endl;
}

//===----------------------------------------------------------------------===//
// 10k-method corpus
//===----------------------------------------------------------------------===//

std::string synth_method(std::mt19937_64 &rng, std::size_t i) {
  static const char *names[] = {"count", "total", "value", "index", "buffer", "result", "limit", "node"};
  static const char *calls[] = {"process", "update", "log", "emit", "store", "check", "flush", "render"};
  auto pick = [&](auto &arr) { return arr[rng() % (sizeof arr / sizeof arr[0])]; };
  auto stmt = [&](const std::string &v) {
    switch (rng() % 4) {
    case 0: return std::string(pick(calls)) + "(" + v + ");";
    case 1: return v + " = " + v + " + " + std::to_string(rng() % 9 + 1) + ";";
    case 2: return std::string("this.") + pick(names) + " = " + v + ";";
    default: return v + "++;";
    }
  };
  const std::string v = pick(names);
  const std::string name = std::string(pick(calls)) + std::to_string(i);
  std::string body;
  const std::size_t parts = 1 + rng() % 4;
  for (std::size_t p = 0; p < parts; ++p) {
    switch (rng() % 6) {
    case 0:
      body += "  if (" + v + " > " + std::to_string(rng() % 50) + ") {\n    " + stmt(v) + "\n  } else {\n    " +
              stmt(v) + "\n  }\n";
      break;
    case 1:
      body += "  for (int k = 0; k < " + v + "; k++) {\n    " + stmt(v) + "\n    if (k == 3) break;\n  }\n";
      break;
    case 2:
      body += "  try {\n    " + stmt(v) + "\n  } catch (Exception e) {\n    log(e);\n  }\n";
      break;
    case 3:
      body += "  switch (" + v + ") {\n    case 1:\n      " + stmt(v) + "\n      break;\n    default:\n      " +
              stmt(v) + "\n  }\n";
      break;
    case 4:
      body += "  while (" + v + " < 10) {\n    " + stmt(v) + "\n  }\n";
      break;
    default:
      body += "  " + stmt(v) + "\n  " + stmt(v) + "\n";
    }
  }
  return "public int " + name + "(int " + v + ") {\n" + body + "  return " + v + ";\n}";
}

std::string read_all(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs every pipeline step into `dir` and returns the concatenated outputs.
std::vector<std::pair<std::string, std::string>> run_pipeline(const std::string &input, const fs::path &dir,
                                                              const std::vector<std::string> &extra) {
  std::vector<std::vector<std::string>> steps = {{"parse"}, {"relmat"}, {"stats"}};
  for (const char *m : {"raw", "bfs", "sbt", "sbt-notok", "path", "binary", "split"})
    steps.push_back({"transform", "--method", m});
  std::vector<std::pair<std::string, std::string>> outputs;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string out = (dir / ("step" + std::to_string(i))).string();
    std::vector<std::string> args = steps[i];
    args.insert(args.end(), {"-i", input, "-o", out});
    args.insert(args.end(), extra.begin(), extra.end());
    if (cli::run(args) != 0)
      throw std::runtime_error("pipeline step failed: " + args[0]);
    outputs.emplace_back(read_all(out), read_all(out + ".errors.jsonl"));
  }
  return outputs;
}

} // namespace

int main() {
  const std::vector<Fixture> fixture = load_fixture();
  std::vector<AstTree> fixture_trees;
  for (const Fixture &f : fixture)
    fixture_trees.push_back(parse_code(f.code));

  criterion(1, 10, [&] {
    std::mt19937_64 rng(101);
    std::size_t checked = 0;
    for (int i = 0; i < 1000; ++i) {
      const AstTree t = random_tree(rng, 500, i % 2 ? LabelStyle::Tricky : LabelStyle::Plain);
      const auto tokens = sbt_encode(t);
      if (!same_shape(sbt_decode(tokens), t) || !(sbt_decode(tokens, kinds_of(t)) == t))
        return Outcome{false, "random tree " + std::to_string(i) + " does not round-trip"};
      ++checked;
    }
    for (std::size_t i = 0; i < fixture_trees.size(); ++i) {
      const AstTree &t = fixture_trees[i];
      const auto tokens = parse_sbt_line(sbt_line(t));
      if (!same_shape(sbt_decode(tokens), t) || !(sbt_decode(tokens, kinds_of(t)) == t))
        return Outcome{false, "fixture " + fixture[i].id + " does not round-trip"};
      ++checked;
    }
    return Outcome{true, "sbt round trip on " + std::to_string(checked) + " trees"};
  });

  criterion(2, 10, [&] {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 1000; ++i) {
      const AstTree t = random_tree(rng, 300, LabelStyle::Unique);
      const AstTree b = to_binary(t);
      for (const AstNode &n : b.nodes())
        if (n.children.size() != 0 && n.children.size() != 2)
          return Outcome{false, "arity " + std::to_string(n.children.size()) + " in tree " + std::to_string(i)};
      std::string labels;
      for (const AstNode &n : b.nodes())
        labels += n.label + '\n';
      for (const AstNode &n : t.nodes()) {
        if (n.kind != NodeKind::Value)
          continue;
        std::size_t hits = 0;
        for (auto at = labels.find(n.label); at != std::string::npos; at = labels.find(n.label, at + 1))
          ++hits;
        if (hits != 1)
          return Outcome{false, "value " + n.label + " appears " + std::to_string(hits) + " times"};
      }
      if (!(to_binary(b) == b))
        return Outcome{false, "not idempotent on tree " + std::to_string(i)};
    }
    return Outcome{true, "1000 random trees: arity {0,2}, values kept once, idempotent"};
  });

  criterion(3, 30, [&] {
    std::mt19937_64 rng(103);
    const std::pair<std::size_t, std::size_t> settings[] = {{8, 2}, {4, 1}, {12, 6}};
    std::size_t contexts = 0;
    for (int i = 0; i < 500; ++i) {
      const AstTree t = random_tree(rng, 200);
      for (auto [len, width] : settings) {
        PathConfig c;
        c.max_length = len;
        c.max_width = width;
        c.max_contexts = std::nullopt;
        const auto got = extract_path_contexts(t, c);
        if (got != oracle_paths(t, len, width))
          return Outcome{false, "tree " + std::to_string(i) + " differs at (" + std::to_string(len) + "," +
                                    std::to_string(width) + ")"};
        contexts += got.size();
      }
    }
    return Outcome{true, "500 trees x 3 settings, " + std::to_string(contexts) + " contexts equal the oracle"};
  });

  criterion(4, 30, [&] {
    std::mt19937_64 rng(104);
    for (int i = 0; i < 500; ++i) {
      const AstTree t = random_tree(rng, 200);
      for (int p : {1, 3, 7}) {
        const RelationMatrices m = compute_relations(t, p);
        const RelationOracle o = oracle_relations(t, p);
        if (m.ancestor != o.ancestor || m.sibling != o.sibling)
          return Outcome{false, "tree " + std::to_string(i) + " differs at P=" + std::to_string(p)};
        for (const auto *list : {&m.ancestor, &m.sibling})
          for (const RelationEntry &e : *list)
            if (e.d < 1 || e.d > p)
              return Outcome{false, "distance out of range"};
        for (const RelationEntry &e : m.ancestor)
          if (m.ancestor_distance(e.j, e.i) != -e.d)
            return Outcome{false, "ancestor matrix not antisymmetric"};
        for (const RelationEntry &e : m.sibling)
          if (m.sibling_distance(e.j, e.i) != -e.d)
            return Outcome{false, "sibling matrix not antisymmetric"};
      }
    }
    for (int p : {1, 3, 7}) {
      std::set<int> image;
      for (int d = -p; d <= p; ++d)
        image.insert(delta_index(d, p));
      if (image.size() != static_cast<std::size_t>(2 * p + 1) || *image.begin() != 1 || *image.rbegin() != 2 * p + 1)
        return Outcome{false, "delta_index is not a bijection for P=" + std::to_string(p)};
    }
    return Outcome{true, "500 trees x P in {1,3,7} equal the oracle; delta_index bijective"};
  });

  criterion(5, 60, [&] {
    std::mt19937_64 rng(105);
    for (int i = 0; i < 200; ++i) {
      const Cfg g = random_reachable_cfg(rng, 50);
      if (build_dominator_tree(g).idom != oracle_idom(g))
        return Outcome{false, "graph " + std::to_string(i) + " differs"};
    }
    return Outcome{true, "200 random CFGs equal the deletion oracle"};
  });

  criterion(6, 0, [&] {
    Frontend frontend;
    std::size_t blocks = 0;
    for (const Fixture &f : fixture) {
      SourceSnippet s;
      s.id = f.id;
      s.code = f.code;
      const SplitAstSet set = split_asts(s, frontend);
      for (const SplitBlock &b : set.blocks) {
        if (b.tree.root().label != set.method.root().label)
          return Outcome{false, f.id + ": block tree is not rooted at the declaration"};
        if (b.code.find("catchMarker") != std::string::npos)
          return Outcome{false, f.id + ": catch statement inside a block"};
      }
      if (f.id.rfind("straight_", 0) == 0 && set.blocks.size() != 1)
        return Outcome{false, f.id + ": " + std::to_string(set.blocks.size()) + " blocks"};
      if (f.id.rfind("ifelse2r_", 0) == 0 && set.blocks.size() != 3)
        return Outcome{false, f.id + ": " + std::to_string(set.blocks.size()) + " blocks"};
      blocks += set.blocks.size();
    }
    return Outcome{true, std::to_string(fixture.size()) + " fixture methods, " + std::to_string(blocks) + " blocks"};
  });

  criterion(7, 0, [&] {
    std::vector<std::string> bad;
    const std::vector<std::size_t> ranks{1, 2, 4};
    if (!near(mrr(ranks), 7.0 / 12.0, 1e-9))
      bad.push_back("mrr");
    if (!near(success_rate_at_k(ranks, 1), 1.0 / 3.0, 1e-9))
      bad.push_back("sr@1");
    if (!near(success_rate_at_k(ranks, 5), 1.0, 1e-9))
      bad.push_back("sr@5");
    if (!near(precision_recall_f1(std::vector<int>{1, 1, 0, 0}, std::vector<int>{1, 0, 1, 0}).f1, 0.5, 1e-9))
      bad.push_back("f1");
    const std::vector<ClassifierSample> run{{"a", 0.9, 1}, {"b", 0.8, 1}, {"c", 0.2, 0}, {"d", 0.1, 0}};
    const ThresholdResult t = sweep_threshold(run);
    if (!near(t.threshold, 0.21, 1e-9) || !near(t.f1, 1.0, 1e-9))
      bad.push_back("sweep");
    const Tokens same = split_words("the quick brown fox jumps");
    if (!near(sentence_bleu(same, same), 1.0, 1e-9))
      bad.push_back("bleu identical");
    if (!near(sentence_bleu(split_words("a b c d"), split_words("w x y z")), 0.0, 1e-9))
      bad.push_back("bleu disjoint");
    if (!near(meteor(split_words("a b c"), split_words("a b c"), {0.9, 3.0, 0.5}), 0.981481, 1e-6))
      bad.push_back("meteor");
    if (!near(rouge_l(split_words("a c d"), split_words("a b c d"), 1.2), 0.835616, 1e-6))
      bad.push_back("rouge-l");
    std::string detail = bad.empty() ? "all metric fixtures match" : "mismatch:";
    for (const auto &b : bad)
      detail += " " + b;
    return Outcome{bad.empty(), detail};
  });

  criterion(8, 0, [&] {
    for (std::size_t n = 1; n <= 100; ++n) {
      const TreeStats s = tree_stats(chain_tree(n));
      if (s.size != n || s.depth != n || s.branching_factor != (n == 1 ? 0.0 : 1.0))
        return Outcome{false, "chain of " + std::to_string(n)};
    }
    for (std::size_t k = 1; k <= 100; ++k) {
      const TreeStats s = tree_stats(star_tree(k));
      if (s.size != k + 1 || s.depth != 2 || s.branching_factor != static_cast<double>(k))
        return Outcome{false, "star with " + std::to_string(k) + " leaves"};
    }
    for (std::size_t i = 0; i < fixture_trees.size(); ++i)
      if (!(tree_stats(fixture_trees[i]) == oracle_stats(fixture_trees[i])))
        return Outcome{false, "fixture " + fixture[i].id + " differs from the recount"};
    return Outcome{true, "chains, stars and " + std::to_string(fixture_trees.size()) + " fixture trees"};
  });

  criterion(9, 300, [&] {
    const fs::path dir = fs::temp_directory_path() / ("astkit-accept-" + std::to_string(::getpid()));
    fs::create_directories(dir / "run1");
    fs::create_directories(dir / "run2");
    const std::string input = (dir / "corpus.jsonl").string();
    {
      std::mt19937_64 rng(109);
      std::ofstream out(input);
      for (std::size_t i = 0; i < 10000; ++i)
        out << nlohmann::json{{"id", "m" + std::to_string(i)}, {"code", synth_method(rng, i)}}.dump() << '\n';
    }
    const auto first = run_pipeline(input, dir / "run1", {});
    const auto second = run_pipeline(input, dir / "run2", {"--jobs", std::to_string(cli::default_jobs() + 1)});
    fs::remove_all(dir);
    std::size_t records = 0;
    for (std::size_t i = 0; i < first.size(); ++i)
      if (first[i] != second[i])
        return Outcome{false, "step " + std::to_string(i) + " output differs between runs"};
    for (char c : first[0].first)
      records += c == '\n';
    if (records != 10000)
      return Outcome{false, "parse wrote " + std::to_string(records) + " records"};
    return Outcome{true, "10000 methods x 10 steps, two runs byte-identical (jobs " +
                             std::to_string(cli::default_jobs()) + " and " + std::to_string(cli::default_jobs() + 1) +
                             ")"};
  });

  criterion(10, 0, [&] {
    std::mt19937_64 rng(110);
    for (int i = 0; i < 200; ++i) {
      const OutcomeKind kind = i % 2 ? OutcomeKind::Real : OutcomeKind::Binary;
      const RandomRunPair p = random_run_pair(rng, kind);
      const ComparisonReport r = compare_runs(p.a, p.b, kind, p.spec);
      const CompareOracle o = oracle_compare(p.a, p.b, kind, p.spec);
      if (kind == OutcomeKind::Binary ? !(r.venn == o.venn) : !(r.winners == o.winners))
        return Outcome{false, "pair " + std::to_string(i) + ": counts differ"};
      if (!r.intervals || r.intervals->underflow != o.table.underflow || r.intervals->overflow != o.table.overflow ||
          r.intervals->rows.size() != o.table.rows.size())
        return Outcome{false, "pair " + std::to_string(i) + ": interval table shape differs"};
      for (std::size_t k = 0; k < o.table.rows.size(); ++k) {
        const IntervalRow &x = r.intervals->rows[k], &y = o.table.rows[k];
        if (x.count_a != y.count_a || x.count_b != y.count_b || !near(x.mean, y.mean, 1e-12))
          return Outcome{false, "pair " + std::to_string(i) + ": bin " + std::to_string(k) + " differs"};
      }
    }
    return Outcome{true, "200 random run pairs equal the recount"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
