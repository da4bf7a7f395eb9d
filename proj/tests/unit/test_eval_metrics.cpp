#include "astkit/error.hpp"
#include "astkit/eval_metrics.hpp"

#include "compare_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace astkit;
using namespace astkit::testing;

namespace {

std::vector<ClassifierSample> run_of(const std::vector<double> &scores, const std::vector<int> &labels) {
  std::vector<ClassifierSample> run;
  for (std::size_t i = 0; i < scores.size(); ++i)
    run.push_back({"s" + std::to_string(i), scores[i], labels[i]});
  return run;
}

Tokens words(const char *s) { return split_words(s); }

} // namespace

TEST_SUITE("eval_metrics") {

TEST_CASE("precision, recall, f1") {
  const std::vector<int> labels{1, 0, 1, 0};
  PrfScores s = precision_recall_f1(std::vector<int>{1, 1, 0, 0}, labels);
  CHECK(s.precision == 0.5);
  CHECK(s.recall == 0.5);
  CHECK(s.f1 == 0.5);
  s = precision_recall_f1(std::vector<int>{1, 1, 1}, std::vector<int>{1, 1, 1});
  CHECK(s.f1 == 1.0);
  s = precision_recall_f1(std::vector<int>{0, 0, 0, 0}, labels);
  CHECK(s.precision == 0.0);
  CHECK(s.recall == 0.0);
  CHECK(s.f1 == 0.0);
  CHECK_THROWS_AS((void)precision_recall_f1(std::vector<int>{1}, labels), InputError);
  CHECK_THROWS_AS((void)precision_recall_f1(std::vector<int>{2}, std::vector<int>{1}), InputError);
}

TEST_CASE("prf matches a confusion-matrix count") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<int> p(n), l(n);
    int tp = 0, fp = 0, fn = 0;
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = static_cast<int>(rng() % 2);
      l[k] = static_cast<int>(rng() % 2);
      tp += p[k] && l[k];
      fp += p[k] && !l[k];
      fn += !p[k] && l[k];
    }
    const double prec = tp + fp ? double(tp) / (tp + fp) : 0.0;
    const double rec = tp + fn ? double(tp) / (tp + fn) : 0.0;
    const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    const PrfScores s = precision_recall_f1(p, l);
    CHECK(s.precision == doctest::Approx(prec));
    CHECK(s.recall == doctest::Approx(rec));
    CHECK(s.f1 == doctest::Approx(f1));
    for (double v : {s.precision, s.recall, s.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("threshold sweep examples") {
  const auto separable = run_of({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
  ThresholdResult r = sweep_threshold(separable);
  CHECK(r.threshold == doctest::Approx(0.21).epsilon(1e-12));
  CHECK(r.f1 == 1.0);
  r = sweep_threshold(run_of({0.5, 0.5, 0.5}, {1, 1, 1}));
  CHECK(r.threshold == doctest::Approx(0.01));
  CHECK(r.f1 == 1.0);
  r = sweep_threshold(run_of({0.3, 0.7}, {0, 0}));
  CHECK(r.threshold == doctest::Approx(0.01));
  CHECK(r.f1 == 0.0);

  const ThresholdResult strict = sweep_threshold(separable, ThresholdRule::Strict);
  CHECK(strict.threshold == doctest::Approx(0.20));
  CHECK(strict.f1 == 1.0);

  CHECK(predict(separable, 0.8) == std::vector<int>{1, 1, 0, 0});
  CHECK(predict(separable, 0.8, ThresholdRule::Strict) == std::vector<int>{1, 0, 0, 0});
  CHECK_THROWS_AS((void)sweep_threshold(std::vector<ClassifierSample>{}), InputError);
  CHECK_THROWS_AS((void)sweep_threshold(run_of({1.5}, {1})), InputError);
}

TEST_CASE("sweep f1 equals prf at the chosen threshold") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t k = 0; k < n; ++k) {
      scores[k] = u(rng);
      labels[k] = static_cast<int>(rng() % 2);
    }
    const auto run = run_of(scores, labels);
    for (ThresholdRule rule : {ThresholdRule::Inclusive, ThresholdRule::Strict}) {
      const ThresholdResult r = sweep_threshold(run, rule);
      CHECK(r.f1 == precision_recall_f1(predict(run, r.threshold, rule), labels).f1);
    }
  }
}

TEST_CASE("search metrics") {
  const std::vector<std::size_t> ranks{1, 2, 4};
  CHECK(mrr(ranks) == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
  CHECK(success_rate_at_k(ranks, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(success_rate_at_k(ranks, 5) == 1.0);
  CHECK(success_rate_at_k(std::vector<std::size_t>{3, 4}, 2) == 0.0);
  CHECK(mrr(std::vector<std::size_t>{1, 1, 1}) == 1.0);
  CHECK(mrr(std::vector<std::size_t>{10}) == doctest::Approx(0.1));
  CHECK_THROWS_AS((void)mrr(std::vector<std::size_t>{}), InputError);
  CHECK_THROWS_AS((void)mrr(std::vector<std::size_t>{0}), InputError);
  CHECK_THROWS_AS((void)success_rate_at_k(ranks, 0), InputError);

  std::mt19937_64 rng(79);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> r(1 + rng() % 20);
    for (auto &x : r)
      x = 1 + rng() % 12;
    CHECK(mrr(r) >= success_rate_at_k(r, 1));
  }
}

TEST_CASE("bleu") {
  CHECK(sentence_bleu(words("the cat sat on the mat"), words("the cat sat on the mat")) == doctest::Approx(1.0));
  CHECK(sentence_bleu(words("x y z w"), words("a b c d")) == 0.0);
  CHECK(sentence_bleu(words("a b c"), words("a b c d")) == 0.0);
  // p1 = p2 = p3 = 1, smoothed p4 = 1/1, BP = e^(1 - 4/3).
  CHECK(sentence_bleu(words("a b c"), words("a b c d"), true) == doctest::Approx(std::exp(1.0 - 4.0 / 3.0)));
  CHECK(sentence_bleu(Tokens{}, words("a b")) == 0.0);
  CHECK_THROWS_AS((void)sentence_bleu(words("a"), Tokens{}), InputError);

  const std::vector<Tokens> c{words("a b c d e"), words("x y z w")};
  const std::vector<Tokens> r{words("a b c d e"), words("x y z w")};
  CHECK(corpus_bleu(c, r) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)corpus_bleu(c, std::vector<Tokens>{r[0]}), InputError);
  CHECK_THROWS_AS((void)corpus_bleu(std::vector<Tokens>{}, std::vector<Tokens>{}), InputError);
}

TEST_CASE("meteor") {
  CHECK(meteor(words("a b c"), words("a b c")) == doctest::Approx(0.981481).epsilon(1e-6));
  CHECK(meteor(words("a b c"), words("d e f")) == 0.0);
  CHECK(meteor_chunks(words("a b c"), words("a b c")) == 1);
  CHECK(meteor_chunks(words("c b a"), words("a b c")) == 3);
  CHECK(meteor_chunks(words("a b x a b"), words("a b a b")) == 2);
  CHECK_THROWS_AS((void)meteor(words("a"), Tokens{}), InputError);
  MeteorParams p;
  p.gamma = 0.0;
  CHECK(meteor(words("a b c"), words("a b c"), p) == doctest::Approx(1.0));
}

TEST_CASE("rouge-l") {
  CHECK(rouge_l(words("a b c d"), words("a b c d")) == doctest::Approx(1.0));
  CHECK(rouge_l(words("a c d"), words("a b c d")) == doctest::Approx(0.835616).epsilon(1e-6));
  CHECK(rouge_l(words("x y"), words("a b")) == 0.0);
  CHECK(lcs_length(words("a c d"), words("a b c d")) == 3);
  CHECK_THROWS_AS((void)rouge_l(words("a"), Tokens{}), InputError);
}

TEST_CASE("summarization metrics peak at identity") {
  std::mt19937_64 rng(83);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f"};
  auto sentence = [&](std::size_t min_len) {
    Tokens t(min_len + rng() % 6);
    for (auto &w : t)
      w = vocab[rng() % vocab.size()];
    return t;
  };
  for (int i = 0; i < 300; ++i) {
    const Tokens ref = sentence(4);
    const Tokens cand = sentence(1);
    const double b = sentence_bleu(cand, ref), m = meteor(cand, ref), r = rouge_l(cand, ref);
    for (double v : {b, m, r}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(sentence_bleu(ref, ref) == doctest::Approx(1.0));
    CHECK(rouge_l(ref, ref) == doctest::Approx(1.0));
    CHECK(meteor(ref, ref) >= m);
    if (cand != ref) {
      CHECK(rouge_l(cand, ref) < 1.0);
      CHECK(sentence_bleu(cand, ref) < 1.0 - 1e-12);
    }
  }
}

TEST_CASE("comparison examples") {
  const std::vector<RunOutcome> a{{"1", 1}, {"2", 1}, {"3", 0}};
  const std::vector<RunOutcome> b{{"1", 1}, {"2", 0}, {"3", 1}};
  const ComparisonReport r = compare_runs(a, b, OutcomeKind::Binary);
  CHECK(r.samples == 3);
  CHECK(r.venn == VennCounts{1, 1, 1, 0});
  CHECK(compare_runs(a, a, OutcomeKind::Binary).venn == VennCounts{2, 0, 0, 1});

  CHECK_THROWS_AS((void)compare_runs(a, std::vector<RunOutcome>{{"1", 1}}, OutcomeKind::Binary), InputError);
  CHECK_THROWS_AS((void)compare_runs(a, std::vector<RunOutcome>{{"1", 1}, {"2", 1}, {"9", 1}}, OutcomeKind::Binary),
                  InputError);
  CHECK_THROWS_AS((void)compare_runs(std::vector<RunOutcome>{{"1", 1}, {"1", 0}},
                                     std::vector<RunOutcome>{{"1", 1}, {"2", 0}}, OutcomeKind::Binary),
                  InputError);
  CHECK_THROWS_AS((void)compare_runs(std::vector<RunOutcome>{{"1", 0.5}}, std::vector<RunOutcome>{{"1", 1}},
                                     OutcomeKind::Binary),
                  InputError);

  const std::vector<RunOutcome> ra{{"1", 0.4}, {"2", 0.9}, {"3", 0.5}};
  const std::vector<RunOutcome> rb{{"1", 0.6}, {"2", 0.1}, {"3", 0.5}};
  CHECK(compare_runs(ra, rb, OutcomeKind::Real).winners == WinnerCounts{1, 1, 1});

  IntervalSpec spec{{{"1", 0.1}, {"2", 0.2}, {"3", 0.05}}, {0.0, 0.15, 0.3}};
  const ComparisonReport withbins = compare_runs(a, b, OutcomeKind::Binary, spec);
  REQUIRE(withbins.intervals.has_value());
  REQUIRE(withbins.intervals->rows.size() == 2);
  CHECK(withbins.intervals->rows[0] == IntervalRow{0.0, 0.15, 0, 1, 0.05});
  CHECK(withbins.intervals->rows[1] == IntervalRow{0.15, 0.3, 1, 0, 0.2});
  spec.values.pop_back();
  CHECK_THROWS_AS((void)compare_runs(a, b, OutcomeKind::Binary, spec), InputError);
}

TEST_CASE("comparison matches a brute-force recount") {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 200; ++i) {
    const OutcomeKind kind = i % 2 ? OutcomeKind::Real : OutcomeKind::Binary;
    const RandomRunPair p = random_run_pair(rng, kind);
    const ComparisonReport r = compare_runs(p.a, p.b, kind, p.spec);
    const CompareOracle o = oracle_compare(p.a, p.b, kind, p.spec);
    CHECK(r.samples == p.a.size());
    if (kind == OutcomeKind::Binary)
      CHECK(r.venn == o.venn);
    else
      CHECK(r.winners == o.winners);
    REQUIRE(r.intervals.has_value());
    CHECK(r.intervals->underflow == o.table.underflow);
    CHECK(r.intervals->overflow == o.table.overflow);
    REQUIRE(r.intervals->rows.size() == o.table.rows.size());
    for (std::size_t k = 0; k < o.table.rows.size(); ++k) {
      CHECK(r.intervals->rows[k].count_a == o.table.rows[k].count_a);
      CHECK(r.intervals->rows[k].count_b == o.table.rows[k].count_b);
      CHECK(r.intervals->rows[k].mean == doctest::Approx(o.table.rows[k].mean).epsilon(1e-12));
    }
  }
}

} // TEST_SUITE
