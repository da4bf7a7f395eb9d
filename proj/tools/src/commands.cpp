#include "commands.hpp"

#include "astkit/binary_tree.hpp"
#include "astkit/error.hpp"
#include "astkit/frontend.hpp"
#include "astkit/linearize.hpp"
#include "astkit/paths.hpp"
#include "astkit/relmat.hpp"
#include "astkit/sample_metrics.hpp"
#include "astkit/sexpr.hpp"
#include "astkit/split_ast.hpp"
#include "astkit/tree_stats.hpp"

#include <iostream>
#include <memory>
#include <set>
#include <unordered_map>

namespace astkit::cli {
namespace {

FrontendConfig frontend_config(const CommonOptions &o) {
  FrontendConfig c;
  c.language = o.language;
  c.drop_punctuation = !o.keep_punctuation;
  return c;
}

unsigned jobs_of(const CommonOptions &o) { return o.jobs == 0 ? default_jobs() : o.jobs; }

std::string string_field(const json &record, const char *name) {
  auto it = record.find(name);
  if (it == record.end() || !it->is_string())
    throw InputError(std::string("record has no string \"") + name + "\"");
  return it->get<std::string>();
}

SourceSnippet snippet_of(const json &record, const CommonOptions &o) {
  SourceSnippet s;
  s.id = record.at("id").get<std::string>();
  s.code = string_field(record, "code");
  auto lang = record.find("language");
  s.language = lang != record.end() && lang->is_string() ? lang->get<std::string>() : o.language;
  return s;
}

struct TreeInput {
  AstTree tree;
  std::size_t errors = 0;
};

/// A record carries either a serialized tree or source code.
TreeInput load_tree(const json &record, Frontend &frontend, const CommonOptions &o) {
  auto tree = record.find("tree");
  if (tree != record.end() && tree->is_string())
    return {parse_sexpr(tree->get<std::string>()), 0};
  ParseOutcome parsed = frontend.parse(snippet_of(record, o));
  return {std::move(parsed.tree), parsed.error_node_count};
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int finish(const char *command, const CommonOptions &o, const BatchResult &batch, const std::string &header) {
  std::string out = header;
  for (const RecordResult &r : batch.ok) {
    out += r.output.line;
    out += '\n';
  }
  write_atomic(o.output, out);

  const std::string sidecar = o.errors.empty() ? sidecar_path(o.output) : o.errors;
  const std::string errors = error_lines(batch.failed);
  if (!sidecar.empty())
    write_atomic(sidecar, errors);
  else
    std::cerr << errors;

  json summary;
  summary["command"] = command;
  summary["records"] = batch.ok.size() + batch.failed.size();
  summary["written"] = batch.ok.size();
  summary["errors"] = batch.failed.size();
  std::cerr << summary.dump() << '\n';
  return 0;
}

RecordOutput json_line(json j) { return {j.dump(), {}}; }

} // namespace

int cmd_parse(const CommonOptions &o) {
  const auto lines = read_lines(o.input);
  auto factory = [&]() -> RecordFn {
    auto frontend = std::make_shared<Frontend>(frontend_config(o));
    return [frontend, &o](const json &record) {
      TreeInput in = load_tree(record, *frontend, o);
      json j;
      j["id"] = record["id"];
      j["tree"] = to_sexpr(in.tree);
      j["errors"] = in.errors;
      return json_line(std::move(j));
    };
  };
  return finish("parse", o, process_records(lines, jobs_of(o), factory), "");
}

int cmd_stats(const CommonOptions &o, const StatsOptions &s) {
  const auto lines = read_lines(o.input);
  TreeStatsOptions opts;
  opts.exclude_value_children = s.exclude_value_children;
  auto factory = [&]() -> RecordFn {
    auto frontend = std::make_shared<Frontend>(frontend_config(o));
    return [frontend, &o, opts](const json &record) {
      const TreeStats st = tree_stats(load_tree(record, *frontend, o).tree, opts);
      RecordOutput out;
      out.line = csv_field(record["id"].get<std::string>()) + ',' + std::to_string(st.size) + ',' +
                 std::to_string(st.depth) + ',' + format_number(st.branching_factor) + ',' +
                 std::to_string(st.unique_types) + ',' + std::to_string(st.unique_tokens);
      out.numbers = {static_cast<double>(st.size), static_cast<double>(st.depth), st.branching_factor,
                     static_cast<double>(st.unique_types), static_cast<double>(st.unique_tokens)};
      return out;
    };
  };
  const BatchResult batch = process_records(lines, jobs_of(o), factory);

  if (!s.summary.empty()) {
    std::vector<TreeStats> all;
    for (const RecordResult &r : batch.ok) {
      const auto &n = r.output.numbers;
      TreeStats t;
      t.size = static_cast<std::size_t>(n[0]);
      t.depth = static_cast<std::size_t>(n[1]);
      t.branching_factor = n[2];
      t.unique_types = static_cast<std::size_t>(n[3]);
      t.unique_tokens = static_cast<std::size_t>(n[4]);
      all.push_back(t);
    }
    json j;
    j["count"] = all.size();
    if (!all.empty()) {
      const CorpusStats c = aggregate_stats(all);
      auto put = [&](const char *name, const MetricSummary &m) {
        j[name] = {{"mean", m.mean}, {"median", m.median}, {"min", m.min}, {"max", m.max}};
      };
      put("size", c.size);
      put("depth", c.depth);
      put("branching", c.branching_factor);
      put("unique_types", c.unique_types);
      put("unique_tokens", c.unique_tokens);
    }
    write_atomic(s.summary, j.dump(2) + "\n");
  }
  return finish("stats", o, batch, "id,size,depth,branching,unique_types,unique_tokens\n");
}

int cmd_transform(const CommonOptions &o, const TransformOptions &t) {
  static const std::set<std::string> methods{"raw", "bfs", "sbt", "sbt-notok", "path", "binary", "split"};
  if (!methods.count(t.method))
    throw UsageError("unknown transform method '" + t.method + "'");
  PathConfig paths;
  paths.max_length = t.max_length;
  paths.max_width = t.max_width;
  paths.max_contexts = t.max_contexts == 0 ? std::nullopt : std::optional<std::size_t>(t.max_contexts);
  paths.sample_seed = t.seed;
  if (paths.max_length == 0)
    throw UsageError("--max-length must be at least 1");

  const auto lines = read_lines(o.input);
  auto factory = [&]() -> RecordFn {
    auto frontend = std::make_shared<Frontend>(frontend_config(o));
    return [frontend, &o, &t, paths](const json &record) {
      json j;
      j["id"] = record["id"];
      if (t.method == "split") {
        const SplitAstSet set = split_asts(snippet_of(record, o), *frontend);
        json blocks = json::array();
        for (const SplitBlock &b : set.blocks)
          blocks.push_back(to_sexpr(b.tree));
        j["blocks"] = std::move(blocks);
        j["skipped_blocks"] = set.skipped_blocks;
        return json_line(std::move(j));
      }
      const AstTree tree = load_tree(record, *frontend, o).tree;
      if (t.method == "raw") {
        j["tree"] = to_sexpr(tree);
      } else if (t.method == "bfs") {
        j["bfs"] = bfs_line(tree);
      } else if (t.method == "sbt") {
        j["sbt"] = sbt_line(tree);
      } else if (t.method == "sbt-notok") {
        j["sbt"] = sbt_line(mask_leaves(tree), true);
      } else if (t.method == "binary") {
        j["tree"] = to_sexpr(to_binary(tree));
      } else {
        json contexts = json::array();
        for (const PathContext &p : extract_path_contexts(tree, paths))
          contexts.push_back(format_path_context(tree, p));
        j["paths"] = std::move(contexts);
      }
      return json_line(std::move(j));
    };
  };
  return finish("transform", o, process_records(lines, jobs_of(o), factory), "");
}

int cmd_relmat(const CommonOptions &o, int max_distance) {
  if (max_distance < 1)
    throw UsageError("--max-distance must be at least 1");
  const auto lines = read_lines(o.input);
  auto factory = [&]() -> RecordFn {
    auto frontend = std::make_shared<Frontend>(frontend_config(o));
    return [frontend, &o, max_distance](const json &record) {
      const RelationMatrices m = compute_relations(load_tree(record, *frontend, o).tree, max_distance);
      json j;
      j["id"] = record["id"];
      j["coo"] = to_coo(m);
      return json_line(std::move(j));
    };
  };
  return finish("relmat", o, process_records(lines, jobs_of(o), factory), "");
}

namespace {

/// Serves tokens computed up front in one batch; falls back to the wrapped
/// tokenizer for unseen text.
class PrecomputedTokenizer final : public Tokenizer {
public:
  PrecomputedTokenizer(const Tokenizer &inner, std::unordered_map<std::string, std::vector<std::string>> table)
      : inner_(inner), table_(std::move(table)) {}

  std::vector<std::string> tokenize(std::string_view text) const override {
    auto it = table_.find(std::string(text));
    return it != table_.end() ? it->second : inner_.tokenize(text);
  }

private:
  const Tokenizer &inner_;
  std::unordered_map<std::string, std::vector<std::string>> table_;
};

} // namespace

int cmd_characterize(const CommonOptions &o, const CharacterizeOptions &c) {
  if (c.metric != "jaccard" && c.metric != "overlap")
    throw UsageError("--metric must be jaccard or overlap");
  TokenizerConfig tc;
  if (c.tokenizer == "simple") {
    tc.mode = TokenizerMode::Simple;
  } else if (c.tokenizer == "external") {
    tc.mode = TokenizerMode::External;
    tc.external_spec = c.tokenizer_cmd;
    if (tc.external_spec.empty())
      throw UsageError("--tokenizer external requires --tokenizer-cmd");
  } else {
    throw UsageError("--tokenizer must be simple or external");
  }
  const std::unique_ptr<Tokenizer> base = make_tokenizer(tc);
  const std::vector<std::string> fields = c.metric == "jaccard" ? std::vector<std::string>{"code1", "code2"}
                                                                 : std::vector<std::string>{c.text_field, "code"};
  const std::string metric_name = c.metric == "jaccard"       ? "jaccard"
                                  : c.text_field == "summary" ? "ease"
                                  : c.text_field == "query"   ? "relevance"
                                                              : "overlap";

  const auto lines = read_lines(o.input);

  std::unique_ptr<Tokenizer> precomputed;
  const Tokenizer *tokenizer = base.get();
  if (tc.mode == TokenizerMode::External) {
    std::set<std::string> unique;
    for (const std::string &line : lines) {
      const json r = json::parse(line, nullptr, false);
      if (!r.is_object())
        continue;
      for (const std::string &f : fields)
        if (r.contains(f) && r[f].is_string())
          unique.insert(r[f].get<std::string>());
    }
    const std::vector<std::string> texts(unique.begin(), unique.end());
    const auto tokens = base->tokenize_batch(texts);
    std::unordered_map<std::string, std::vector<std::string>> table;
    for (std::size_t i = 0; i < texts.size(); ++i)
      table.emplace(texts[i], tokens[i]);
    precomputed = std::make_unique<PrecomputedTokenizer>(*base, std::move(table));
    tokenizer = precomputed.get();
  }

  auto factory = [&]() -> RecordFn {
    return [&](const json &record) {
      const std::string a = string_field(record, fields[0].c_str());
      const std::string b = string_field(record, fields[1].c_str());
      const double v = c.metric == "jaccard" ? jaccard(a, b, *tokenizer) : overlap_ratio(a, b, *tokenizer);
      RecordOutput out;
      out.line = csv_field(record["id"].get<std::string>()) + ',' + metric_name + ',' + format_number(v);
      out.numbers = {v};
      return out;
    };
  };
  return finish("characterize", o, process_records(lines, jobs_of(o), factory), "id,metric,value\n");
}

} // namespace astkit::cli
