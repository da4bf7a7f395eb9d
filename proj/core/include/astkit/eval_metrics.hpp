#pragma once

#include "astkit/sample_metrics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace astkit {

//===----------------------------------------------------------------------===//
// Clone detection
//===----------------------------------------------------------------------===//

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Binary predictions and labels (0/1). Zero denominators give 0.
/// Throws InputError for mismatched lengths or non-binary entries.
[[nodiscard]] PrfScores precision_recall_f1(std::span<const int> predictions, std::span<const int> labels);

struct ClassifierSample {
  std::string id;
  double score = 0.0;
  int label = 0;
};

/// Inclusive predicts positive for score >= δ, Strict for score > δ.
enum class ThresholdRule { Inclusive, Strict };

struct ThresholdResult {
  double threshold = 0.0;
  double f1 = 0.0;
};

/// Best F1 over δ = 0.01, 0.02, ..., 0.99; ties go to the smallest δ.
/// Throws InputError for an empty run, scores outside [0, 1] or non-binary
/// labels.
[[nodiscard]] ThresholdResult sweep_threshold(std::span<const ClassifierSample> run,
                                              ThresholdRule rule = ThresholdRule::Inclusive);

[[nodiscard]] std::vector<int> predict(std::span<const ClassifierSample> run, double threshold,
                                       ThresholdRule rule = ThresholdRule::Inclusive);

//===----------------------------------------------------------------------===//
// Code search
//===----------------------------------------------------------------------===//

/// Fraction of ranks <= k. Throws InputError for an empty run, k < 1 or a
/// rank < 1.
[[nodiscard]] double success_rate_at_k(std::span<const std::size_t> ranks, std::size_t k);

/// Mean of 1/rank. Same errors as success_rate_at_k.
[[nodiscard]] double mrr(std::span<const std::size_t> ranks);

//===----------------------------------------------------------------------===//
// Summarization
//===----------------------------------------------------------------------===//

using Tokens = std::vector<std::string>;

/// Whitespace tokenization used for generated and reference text.
[[nodiscard]] Tokens split_words(std::string_view text);

/// BLEU-4 with uniform weights and brevity penalty min(1, exp(1 - r/c)).
/// Without smoothing any zero precision gives 0; with smoothing, n >= 2
/// precisions use (matches + 1) / (total + 1). An empty candidate scores 0.
/// Throws InputError for an empty reference.
[[nodiscard]] double sentence_bleu(const Tokens &candidate, const Tokens &reference, bool smooth = false);

/// Pooled n-gram counts and lengths over the whole corpus.
/// Throws InputError for mismatched sizes, an empty corpus or an empty
/// reference.
[[nodiscard]] double corpus_bleu(std::span<const Tokens> candidates, std::span<const Tokens> references,
                                 bool smooth = false);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

/// Exact-match unigram alignment with the most matches and, among those, the
/// fewest chunks. Throws InputError for an empty reference.
[[nodiscard]] double meteor(const Tokens &candidate, const Tokens &reference, const MeteorParams &params = {});

/// Minimum chunk count over maximum exact alignments; 0 when nothing matches.
[[nodiscard]] std::size_t meteor_chunks(const Tokens &candidate, const Tokens &reference);

[[nodiscard]] std::size_t lcs_length(const Tokens &a, const Tokens &b);

/// LCS-based F-measure. Throws InputError for an empty reference.
[[nodiscard]] double rouge_l(const Tokens &candidate, const Tokens &reference, double beta = 1.2);

//===----------------------------------------------------------------------===//
// Run comparison
//===----------------------------------------------------------------------===//

enum class OutcomeKind { Binary, Real };

struct RunOutcome {
  std::string id;
  double value = 0.0;
};

struct VennCounts {
  std::size_t both = 0;
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  std::size_t neither = 0;
  bool operator==(const VennCounts &) const = default;
};

struct WinnerCounts {
  std::size_t a_better = 0;
  std::size_t b_better = 0;
  std::size_t tie = 0;
  bool operator==(const WinnerCounts &) const = default;
};

struct IntervalRow {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count_a = 0; // samples only A solved / A scored higher
  std::size_t count_b = 0;
  double mean = 0.0;       // mean value over the samples counted in this row
  bool operator==(const IntervalRow &) const = default;
};

struct IntervalTable {
  std::vector<IntervalRow> rows;
  std::size_t underflow = 0;
  std::size_t overflow = 0;
  bool operator==(const IntervalTable &) const = default;
};

/// Characterization value per sample (e.g. Jaccard s) and the bin edges.
struct IntervalSpec {
  std::vector<RunOutcome> values;
  std::vector<double> edges;
};

struct ComparisonReport {
  OutcomeKind kind = OutcomeKind::Binary;
  std::size_t samples = 0;
  VennCounts venn;       // Binary only
  WinnerCounts winners;  // Real only
  std::optional<IntervalTable> intervals;
};

/// Interval rows count the samples where exactly one run succeeds (binary)
/// or one run scores higher (real), binned by their characterization value.
/// Throws InputError when the id sets differ, ids repeat, binary outcomes
/// are not 0/1, or a counted sample has no interval value.
[[nodiscard]] ComparisonReport compare_runs(std::span<const RunOutcome> run_a, std::span<const RunOutcome> run_b,
                                            OutcomeKind kind, const std::optional<IntervalSpec> &intervals = {});

} // namespace astkit
