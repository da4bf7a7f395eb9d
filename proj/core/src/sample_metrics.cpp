#include "astkit/sample_metrics.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace astkit {
namespace {

std::size_t intersection_size(const TokenSet &a, const TokenSet &b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

} // namespace

double jaccard(const TokenSet &a, const TokenSet &b) {
  if (a.empty() && b.empty())
    throw InputError("jaccard similarity is undefined for two empty token sets");
  const std::size_t common = intersection_size(a, b);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double jaccard(std::string_view code1, std::string_view code2, const Tokenizer &tokenizer) {
  return jaccard(tokenizer.token_set(code1), tokenizer.token_set(code2));
}

double overlap_ratio(const TokenSet &text, const TokenSet &code) {
  if (text.empty())
    throw InputError("overlap ratio is undefined for text without tokens");
  return static_cast<double>(intersection_size(text, code)) / static_cast<double>(text.size());
}

double overlap_ratio(std::string_view text, std::string_view code, const Tokenizer &tokenizer) {
  return overlap_ratio(tokenizer.token_set(text), tokenizer.token_set(code));
}

Histogram bin_counts(std::span<const double> values, std::span<const double> edges) {
  if (edges.size() < 2)
    throw InputError("histogram needs at least two edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::isnan(edges[i]))
      throw InputError("histogram edge is NaN");
    if (i > 0 && !(edges[i - 1] < edges[i]))
      throw InputError("histogram edges must be strictly ascending");
  }

  Histogram h;
  h.bins.resize(edges.size() - 1);
  std::vector<double> sums(h.bins.size(), 0.0);
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    h.bins[i].lo = edges[i];
    h.bins[i].hi = edges[i + 1];
  }
  for (double v : values) {
    if (std::isnan(v))
      throw InputError("cannot bin a NaN value");
    if (v < edges.front()) {
      ++h.underflow;
      continue;
    }
    if (v > edges.back()) {
      ++h.overflow;
      continue;
    }
    std::size_t bin = 0;
    if (v > edges.front())
      bin = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), v) - edges.begin()) - 1;
    ++h.bins[bin].count;
    sums[bin] += v;
  }
  for (std::size_t i = 0; i < h.bins.size(); ++i)
    if (h.bins[i].count > 0)
      h.bins[i].mean = sums[i] / static_cast<double>(h.bins[i].count);
  return h;
}

} // namespace astkit
