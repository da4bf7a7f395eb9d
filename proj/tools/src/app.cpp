#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace astkit::cli {
namespace {

void add_common(CLI::App &cmd, CommonOptions &o, bool with_frontend = true) {
  cmd.add_option("-i,--input", o.input, "Input JSONL file, - for stdin")->required();
  cmd.add_option("-o,--output", o.output, "Output file, - for stdout");
  cmd.add_option("--errors", o.errors, "Error sidecar path (default <output>.errors.jsonl)");
  cmd.add_option("-j,--jobs", o.jobs, "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  if (with_frontend) {
    cmd.add_option("--language", o.language, "Source language")->check(CLI::IsMember({"java"}));
    cmd.add_flag("--keep-punctuation", o.keep_punctuation, "Keep { } ( ) ; , . tokens in trees");
  }
}

} // namespace

int run(const std::vector<std::string> &args) {
  CLI::App app{"astkit: AST feature extraction for method-level code corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "astkit 0.1.0");

  CommonOptions common;
  StatsOptions stats;
  TransformOptions transform;
  int max_distance = 7;
  CharacterizeOptions characterize;
  ScoreOptions score;
  CompareOptions compare;

  auto *parse_cmd = app.add_subcommand("parse", "Parse methods into s-expression trees");
  add_common(*parse_cmd, common);

  auto *stats_cmd = app.add_subcommand("stats", "Per-tree statistics as CSV");
  add_common(*stats_cmd, common);
  stats_cmd->add_option("--summary", stats.summary, "Write corpus mean/median JSON here");
  stats_cmd->add_flag("--exclude-value-children", stats.exclude_value_children,
                      "Ignore Value children when computing the branching factor");

  auto *transform_cmd = app.add_subcommand("transform", "Apply a preprocessing method");
  add_common(*transform_cmd, common);
  transform_cmd->add_option("--method", transform.method, "raw, bfs, sbt, sbt-notok, path, binary or split")
      ->required()
      ->check(CLI::IsMember({"raw", "bfs", "sbt", "sbt-notok", "path", "binary", "split"}));
  transform_cmd->add_option("--max-length", transform.max_length, "Path length bound")->check(CLI::PositiveNumber);
  transform_cmd->add_option("--max-width", transform.max_width, "Path width bound");
  transform_cmd->add_option("--max-contexts", transform.max_contexts, "Contexts per tree, 0 for unlimited");
  transform_cmd->add_option("--seed", transform.seed, "Sampling seed");

  auto *relmat_cmd = app.add_subcommand("relmat", "Ancestor and sibling relation matrices");
  add_common(*relmat_cmd, common);
  relmat_cmd->add_option("--max-distance", max_distance, "Distance threshold P")->check(CLI::PositiveNumber);

  auto *char_cmd = app.add_subcommand("characterize", "Token overlap metrics per record");
  add_common(*char_cmd, common, false);
  char_cmd->add_option("--metric", characterize.metric, "jaccard (code1/code2) or overlap (text field vs code)")
      ->required()
      ->check(CLI::IsMember({"jaccard", "overlap"}));
  char_cmd->add_option("--text-field", characterize.text_field, "Text field for overlap: summary or query");
  char_cmd->add_option("--tokenizer", characterize.tokenizer, "simple or external")
      ->check(CLI::IsMember({"simple", "external"}));
  char_cmd->add_option("--tokenizer-cmd", characterize.tokenizer_cmd,
                       "Command reading JSON strings and writing JSON token arrays, one per line");

  auto *score_cmd = app.add_subcommand("score", "Task metrics over a run file");
  add_common(*score_cmd, common, false);
  score_cmd->add_option("--task", score.task, "clone, search or summarization")
      ->required()
      ->check(CLI::IsMember({"clone", "search", "summarization"}));
  score_cmd->add_flag("--smooth", score.smooth, "Add-one smoothing for BLEU n >= 2");
  score_cmd->add_flag("--strict-threshold", score.strict_threshold, "Predict positive only for score > threshold");
  score_cmd->add_option("--threshold", score.threshold, "Fixed clone threshold instead of the sweep")
      ->check(CLI::Range(0.0, 1.0));
  score_cmd->add_option("--k", score.ks, "Cut-offs for SR@k")->delimiter(',');
  score_cmd->add_option("--bleu-level", score.bleu_level, "corpus or sentence")
      ->check(CLI::IsMember({"corpus", "sentence"}));

  auto *compare_cmd = app.add_subcommand("compare", "Venn and interval comparison of two runs");
  compare_cmd->add_option("--a", compare.run_a, "Run A JSONL {id, value}")->required();
  compare_cmd->add_option("--b", compare.run_b, "Run B JSONL {id, value}")->required();
  compare_cmd->add_option("--kind", compare.kind, "binary or real")->check(CLI::IsMember({"binary", "real"}));
  compare_cmd->add_option("--values", compare.values, "Characterization JSONL {id, value}");
  compare_cmd->add_option("--edges", compare.edges, "Ascending bin edges, comma separated")->delimiter(',');
  compare_cmd->add_option("-o,--output", compare.output, "Report path, - for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (parse_cmd->parsed())
      return cmd_parse(common);
    if (stats_cmd->parsed())
      return cmd_stats(common, stats);
    if (transform_cmd->parsed())
      return cmd_transform(common, transform);
    if (relmat_cmd->parsed())
      return cmd_relmat(common, max_distance);
    if (char_cmd->parsed())
      return cmd_characterize(common, characterize);
    if (score_cmd->parsed())
      return cmd_score(common, score);
    if (compare_cmd->parsed())
      return cmd_compare(compare);
  } catch (const UsageError &e) {
    std::cerr << "astkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "astkit: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace astkit::cli
