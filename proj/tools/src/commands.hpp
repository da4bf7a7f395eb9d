#pragma once

#include "cli.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace astkit::cli {

struct CommonOptions {
  std::string input = "-";
  std::string output = "-";
  std::string errors; // sidecar override
  unsigned jobs = 0;  // 0 = default_jobs()
  std::string language = "java";
  bool keep_punctuation = false;
};

struct StatsOptions {
  std::string summary;
  bool exclude_value_children = false;
};

struct TransformOptions {
  std::string method;
  std::size_t max_length = 8;
  std::size_t max_width = 2;
  std::size_t max_contexts = 200; // 0 = unlimited
  std::uint64_t seed = 0;
};

struct CharacterizeOptions {
  std::string metric;          // jaccard | overlap
  std::string text_field = "summary";
  std::string tokenizer = "simple";
  std::string tokenizer_cmd;
};

struct ScoreOptions {
  std::string task;
  bool smooth = false;
  bool strict_threshold = false;
  std::optional<double> threshold;
  std::vector<std::size_t> ks{1, 5, 10};
  std::string bleu_level = "corpus";
};

struct CompareOptions {
  std::string run_a;
  std::string run_b;
  std::string kind = "binary";
  std::string values;
  std::vector<double> edges;
  std::string output = "-";
};

int cmd_parse(const CommonOptions &o);
int cmd_stats(const CommonOptions &o, const StatsOptions &s);
int cmd_transform(const CommonOptions &o, const TransformOptions &t);
int cmd_relmat(const CommonOptions &o, int max_distance);
int cmd_characterize(const CommonOptions &o, const CharacterizeOptions &c);
int cmd_score(const CommonOptions &o, const ScoreOptions &s);
int cmd_compare(const CompareOptions &c);

} // namespace astkit::cli
