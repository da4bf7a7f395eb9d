#include "astkit/binary_tree.hpp"
#include "astkit/eval_metrics.hpp"
#include "astkit/frontend.hpp"
#include "astkit/linearize.hpp"
#include "astkit/paths.hpp"
#include "astkit/relmat.hpp"
#include "astkit/split_ast.hpp"
#include "astkit/tree_stats.hpp"

#include <benchmark/benchmark.h>
#include <json.hpp>

#include <fstream>

using namespace astkit;

namespace {

const std::vector<SourceSnippet> &corpus() {
  static const std::vector<SourceSnippet> snippets = [] {
    std::vector<SourceSnippet> out;
    std::ifstream in(std::string(ASTKIT_FIXTURE_DIR) + "/java200.jsonl");
    for (std::string line; std::getline(in, line);) {
      const auto j = nlohmann::json::parse(line);
      SourceSnippet s;
      s.id = j["id"].get<std::string>();
      s.code = j["code"].get<std::string>();
      out.push_back(std::move(s));
    }
    return out;
  }();
  return snippets;
}

const std::vector<AstTree> &trees() {
  static const std::vector<AstTree> parsed = [] {
    std::vector<AstTree> out;
    for (const SourceSnippet &s : corpus())
      out.push_back(parse_method(s).tree);
    return out;
  }();
  return parsed;
}

template <class Fn> void each_tree(benchmark::State &state, Fn fn) {
  const auto &ts = trees();
  std::size_t nodes = 0;
  for (auto _ : state)
    for (const AstTree &t : ts) {
      benchmark::DoNotOptimize(fn(t));
      nodes += t.size();
    }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ts.size()));
  state.counters["nodes/s"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsRate);
}

} // namespace

static void BM_Parse(benchmark::State &state) {
  Frontend frontend;
  for (auto _ : state)
    for (const SourceSnippet &s : corpus())
      benchmark::DoNotOptimize(frontend.parse(s));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size()));
}
BENCHMARK(BM_Parse)->Unit(benchmark::kMillisecond);

static void BM_Sbt(benchmark::State &state) {
  each_tree(state, [](const AstTree &t) { return sbt_line(t); });
}
BENCHMARK(BM_Sbt)->Unit(benchmark::kMillisecond);

static void BM_SbtDecode(benchmark::State &state) {
  std::vector<std::vector<std::string>> encoded;
  for (const AstTree &t : trees())
    encoded.push_back(sbt_encode(t));
  for (auto _ : state)
    for (const auto &tokens : encoded)
      benchmark::DoNotOptimize(sbt_decode(tokens));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * encoded.size()));
}
BENCHMARK(BM_SbtDecode)->Unit(benchmark::kMillisecond);

static void BM_Paths(benchmark::State &state) {
  PathConfig c;
  c.max_contexts = std::nullopt;
  each_tree(state, [&](const AstTree &t) { return extract_path_contexts(t, c); });
}
BENCHMARK(BM_Paths)->Unit(benchmark::kMillisecond);

static void BM_Binary(benchmark::State &state) {
  each_tree(state, [](const AstTree &t) { return to_binary(t); });
}
BENCHMARK(BM_Binary)->Unit(benchmark::kMillisecond);

static void BM_Relmat(benchmark::State &state) {
  each_tree(state, [](const AstTree &t) { return compute_relations(t, 7); });
}
BENCHMARK(BM_Relmat)->Unit(benchmark::kMillisecond);

static void BM_Stats(benchmark::State &state) {
  each_tree(state, [](const AstTree &t) { return tree_stats(t); });
}
BENCHMARK(BM_Stats)->Unit(benchmark::kMillisecond);

static void BM_Split(benchmark::State &state) {
  Frontend frontend;
  for (auto _ : state)
    for (const SourceSnippet &s : corpus())
      benchmark::DoNotOptimize(split_asts(s, frontend));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus().size()));
}
BENCHMARK(BM_Split)->Unit(benchmark::kMillisecond);

static void BM_Meteor(benchmark::State &state) {
  const Tokens ref = split_words("returns the maximum value of the two given integers or the first when equal");
  const Tokens cand = split_words("return the max of two integers and the first one when both are equal");
  for (auto _ : state)
    benchmark::DoNotOptimize(meteor(cand, ref));
}
BENCHMARK(BM_Meteor);

static void BM_CorpusBleu(benchmark::State &state) {
  std::vector<Tokens> cands, refs;
  for (const SourceSnippet &s : corpus()) {
    cands.push_back(split_words(s.code));
    refs.push_back(split_words(s.code.substr(s.code.size() / 3)));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(corpus_bleu(cands, refs));
}
BENCHMARK(BM_CorpusBleu)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
