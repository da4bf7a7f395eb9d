#include "astkit/eval_metrics.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>

namespace astkit {
namespace {

void check_binary(int v, const char *what) {
  if (v != 0 && v != 1)
    throw InputError(std::string(what) + " must be 0 or 1, got " + std::to_string(v));
}

void check_ranks(std::span<const std::size_t> ranks) {
  if (ranks.empty())
    throw InputError("ranked run is empty");
  for (std::size_t r : ranks)
    if (r < 1)
      throw InputError("ranks start at 1");
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const Tokens &tokens, std::size_t n) {
  NgramCounts out;
  if (tokens.size() < n)
    return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++out[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return out;
}

constexpr std::size_t kBleuOrder = 4;

class ChunkSearch {
public:
  ChunkSearch(const Tokens &candidate, const Tokens &reference) {
    std::unordered_map<std::string, std::size_t> ids;
    auto id_of = [&](const std::string &w) { return ids.emplace(w, ids.size()).first->second; };
    for (const auto &w : reference)
      ref_.push_back(id_of(w));
    for (const auto &w : candidate)
      cand_.push_back(id_of(w));
    positions_.resize(ids.size());
    for (std::size_t j = 0; j < ref_.size(); ++j)
      positions_[ref_[j]].push_back(j);
    std::vector<std::size_t> cand_count(ids.size(), 0);
    for (std::size_t w : cand_)
      ++cand_count[w];
    skips_.resize(ids.size());
    for (std::size_t w = 0; w < ids.size(); ++w) {
      const std::size_t m = std::min(cand_count[w], positions_[w].size());
      matches_ += m;
      skips_[w] = cand_count[w] - m;
    }
    used_.assign(ref_.size(), 0);
  }

  [[nodiscard]] std::size_t matches() const noexcept { return matches_; }

  std::size_t min_chunks() {
    if (matches_ == 0)
      return 0;
    best_ = matches_ + 1;
    search(0, kNone, 0);
    return best_;
  }

private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::size_t kBudget = 200000;

  void search(std::size_t i, std::size_t prev, std::size_t chunks) {
    if (chunks >= best_ || visited_ >= kBudget)
      return;
    ++visited_;
    if (i == cand_.size()) {
      best_ = chunks;
      return;
    }
    const std::size_t w = cand_[i];
    if (positions_[w].empty()) {
      search(i + 1, kNone, chunks);
      return;
    }
    std::size_t extend = kNone;
    if (prev != kNone && prev + 1 < ref_.size() && ref_[prev + 1] == w && !used_[prev + 1]) {
      extend = prev + 1;
      used_[extend] = 1;
      search(i + 1, extend, chunks);
      used_[extend] = 0;
    }
    for (std::size_t j : positions_[w]) {
      if (j == extend || used_[j])
        continue;
      used_[j] = 1;
      search(i + 1, j, chunks + 1);
      used_[j] = 0;
    }
    if (skips_[w] > 0) {
      --skips_[w];
      search(i + 1, kNone, chunks);
      ++skips_[w];
    }
  }

  std::vector<std::size_t> ref_;
  std::vector<std::size_t> cand_;
  std::vector<std::vector<std::size_t>> positions_;
  std::vector<std::size_t> skips_;
  std::vector<char> used_;
  std::size_t matches_ = 0;
  std::size_t best_ = 0;
  std::size_t visited_ = 0;
};

} // namespace

PrfScores precision_recall_f1(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size())
    throw InputError("predictions and labels differ in length");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    check_binary(predictions[i], "prediction");
    check_binary(labels[i], "label");
    if (predictions[i] == 1 && labels[i] == 1)
      ++tp;
    else if (predictions[i] == 1)
      ++fp;
    else if (labels[i] == 1)
      ++fn;
  }
  PrfScores s;
  s.precision = ratio(static_cast<double>(tp), static_cast<double>(tp + fp));
  s.recall = ratio(static_cast<double>(tp), static_cast<double>(tp + fn));
  s.f1 = ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

std::vector<int> predict(std::span<const ClassifierSample> run, double threshold, ThresholdRule rule) {
  std::vector<int> out;
  out.reserve(run.size());
  for (const ClassifierSample &s : run)
    out.push_back(rule == ThresholdRule::Inclusive ? s.score >= threshold : s.score > threshold);
  return out;
}

ThresholdResult sweep_threshold(std::span<const ClassifierSample> run, ThresholdRule rule) {
  if (run.empty())
    throw InputError("classifier run is empty");
  std::vector<int> labels;
  labels.reserve(run.size());
  for (const ClassifierSample &s : run) {
    if (!(s.score >= 0.0 && s.score <= 1.0))
      throw InputError("score out of [0, 1] for '" + s.id + "'");
    check_binary(s.label, "label");
    labels.push_back(s.label);
  }
  ThresholdResult best{0.01, -1.0};
  for (int k = 1; k <= 99; ++k) {
    const double delta = k / 100.0;
    const double f1 = precision_recall_f1(predict(run, delta, rule), labels).f1;
    if (f1 > best.f1)
      best = {delta, f1};
  }
  return best;
}

double success_rate_at_k(std::span<const std::size_t> ranks, std::size_t k) {
  check_ranks(ranks);
  if (k < 1)
    throw InputError("k must be at least 1");
  const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mrr(std::span<const std::size_t> ranks) {
  check_ranks(ranks);
  double sum = 0.0;
  for (std::size_t r : ranks)
    sum += 1.0 / static_cast<double>(r);
  return sum / static_cast<double>(ranks.size());
}

Tokens split_words(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start)
      out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

double corpus_bleu(std::span<const Tokens> candidates, std::span<const Tokens> references, bool smooth) {
  if (candidates.size() != references.size())
    throw InputError("candidate and reference counts differ");
  if (candidates.empty())
    throw InputError("BLEU over an empty corpus");

  std::size_t cand_len = 0, ref_len = 0;
  std::size_t matched[kBleuOrder + 1] = {};
  std::size_t total[kBleuOrder + 1] = {};
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    if (references[s].empty())
      throw InputError("BLEU reference is empty");
    cand_len += candidates[s].size();
    ref_len += references[s].size();
    for (std::size_t n = 1; n <= kBleuOrder; ++n) {
      const NgramCounts c = ngrams(candidates[s], n);
      const NgramCounts r = ngrams(references[s], n);
      for (const auto &[gram, count] : c) {
        total[n] += count;
        auto it = r.find(gram);
        if (it != r.end())
          matched[n] += std::min(count, it->second);
      }
    }
  }
  if (cand_len == 0)
    return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    double p;
    if (smooth && n >= 2)
      p = (static_cast<double>(matched[n]) + 1.0) / (static_cast<double>(total[n]) + 1.0);
    else
      p = ratio(static_cast<double>(matched[n]), static_cast<double>(total[n]));
    if (p == 0.0)
      return 0.0;
    log_sum += std::log(p);
  }
  const double bp = std::min(1.0, std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len)));
  return bp * std::exp(log_sum / static_cast<double>(kBleuOrder));
}

double sentence_bleu(const Tokens &candidate, const Tokens &reference, bool smooth) {
  return corpus_bleu(std::span<const Tokens>(&candidate, 1), std::span<const Tokens>(&reference, 1), smooth);
}

std::size_t meteor_chunks(const Tokens &candidate, const Tokens &reference) {
  return ChunkSearch(candidate, reference).min_chunks();
}

double meteor(const Tokens &candidate, const Tokens &reference, const MeteorParams &params) {
  if (reference.empty())
    throw InputError("METEOR reference is empty");
  ChunkSearch search(candidate, reference);
  const std::size_t m = search.matches();
  if (m == 0)
    return 0.0;
  const std::size_t chunks = search.min_chunks();
  const double md = static_cast<double>(m);
  const double p = md / static_cast<double>(candidate.size());
  const double r = md / static_cast<double>(reference.size());
  const double f = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  const double frag = static_cast<double>(chunks) / md;
  return (1.0 - params.gamma * std::pow(frag, params.beta)) * f;
}

std::size_t lcs_length(const Tokens &a, const Tokens &b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const auto &x : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = x == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l(const Tokens &candidate, const Tokens &reference, double beta) {
  if (reference.empty())
    throw InputError("ROUGE-L reference is empty");
  const std::size_t lcs = lcs_length(candidate, reference);
  if (lcs == 0)
    return 0.0;
  const double p = static_cast<double>(lcs) / static_cast<double>(candidate.size());
  const double r = static_cast<double>(lcs) / static_cast<double>(reference.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

} // namespace astkit
