#pragma once

#include "astkit/tokenize.hpp"

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astkit {

using TokenSet = std::set<std::string>;

/// |A ∩ B| / |A ∪ B|. One empty set gives 0; both empty throws InputError.
[[nodiscard]] double jaccard(const TokenSet &a, const TokenSet &b);
[[nodiscard]] double jaccard(std::string_view code1, std::string_view code2, const Tokenizer &tokenizer);

/// |T(text) ∩ T(code)| / |T(text)|: ease of a summary or relevance of a
/// query. Throws InputError when the text has no tokens.
[[nodiscard]] double overlap_ratio(const TokenSet &text, const TokenSet &code);
[[nodiscard]] double overlap_ratio(std::string_view text, std::string_view code, const Tokenizer &tokenizer);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double mean = 0.0; // 0 for an empty bin

  bool operator==(const HistogramBin &) const = default;
};

struct Histogram {
  std::vector<HistogramBin> bins;
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  bool operator==(const Histogram &) const = default;
};

/// Bins are [e0, e1], (e1, e2], ..., (e(k-1), ek]. Values outside [e0, ek]
/// go to underflow/overflow. Throws InputError for fewer than two edges,
/// edges that are not strictly ascending, or NaN inputs.
[[nodiscard]] Histogram bin_counts(std::span<const double> values, std::span<const double> edges);

} // namespace astkit
