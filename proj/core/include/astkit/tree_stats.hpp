#pragma once

#include "astkit/ast.hpp"
#include "astkit/tokenize.hpp"

#include <span>

namespace astkit {

struct TreeStats {
  std::size_t size = 0;
  std::size_t depth = 0; // nodes on the longest root-to-node path
  double branching_factor = 0.0;
  std::size_t unique_types = 0;
  std::size_t unique_tokens = 0;

  bool operator==(const TreeStats &) const = default;
};

struct TreeStatsOptions {
  /// Count only non-Value children for the branching factor (a Terminal whose
  /// children are all Values is then treated as a leaf for that metric).
  bool exclude_value_children = false;
};

/// Sub-tokens for unique_tokens come from `subtokenizer` applied to each
/// Value label. Branching factor of a leaf-only tree is 0.
[[nodiscard]] TreeStats tree_stats(const AstTree &tree, const Tokenizer &subtokenizer,
                                   const TreeStatsOptions &options = {});
[[nodiscard]] TreeStats tree_stats(const AstTree &tree, const TreeStatsOptions &options = {});

struct MetricSummary {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct CorpusStats {
  std::size_t count = 0;
  MetricSummary size;
  MetricSummary depth;
  MetricSummary branching_factor;
  MetricSummary unique_types;
  MetricSummary unique_tokens;
};

/// Median of an even count is the mean of the two middle values.
/// Throws InputError on an empty list.
[[nodiscard]] CorpusStats aggregate_stats(std::span<const TreeStats> stats);

[[nodiscard]] MetricSummary summarize(std::vector<double> values);

} // namespace astkit
