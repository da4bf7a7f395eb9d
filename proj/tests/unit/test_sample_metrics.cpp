#include "astkit/error.hpp"
#include "astkit/sample_metrics.hpp"
#include "astkit/tokenize.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace astkit;

namespace {

const char *kSplitCommand =
    "python3 -c 'import sys, json\nfor l in sys.stdin: print(json.dumps(json.loads(l).split()))'";

} // namespace

TEST_SUITE("sample_metrics") {

TEST_CASE("jaccard examples") {
  CHECK(jaccard(TokenSet{"a", "b", "c"}, TokenSet{"b", "c", "d"}) == 0.5);
  CHECK(jaccard(TokenSet{"a"}, TokenSet{"b"}) == 0.0);
  CHECK(jaccard(TokenSet{"a"}, TokenSet{}) == 0.0);
  CHECK_THROWS_AS((void)jaccard(TokenSet{}, TokenSet{}), InputError);
  SimpleTokenizer tok;
  CHECK(jaccard("int getMax(int a)", "int getMax(int a)", tok) == 1.0);
  CHECK(jaccard("alpha beta", "gamma delta", tok) == 0.0);
  CHECK(jaccard("getMax(a, b)", "b a max get", tok) == 1.0);
}

TEST_CASE("overlap examples") {
  CHECK(overlap_ratio(TokenSet{"compute", "sum"}, TokenSet{"sum", "total"}) == 0.5);
  SimpleTokenizer tok;
  CHECK(overlap_ratio("compute sum", "int sum = a + b;", tok) == 0.5);
  CHECK(overlap_ratio("get max", "int getMax(int a, int b)", tok) == 1.0);
  CHECK_THROWS_AS((void)overlap_ratio("", "int x;", tok), InputError);
  CHECK_THROWS_AS((void)overlap_ratio("...", "int x;", tok), InputError);
}

TEST_CASE("set properties") {
  std::mt19937_64 rng(61);
  const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f", "g"};
  auto draw = [&] {
    TokenSet s;
    for (const auto &t : pool)
      if (rng() % 2)
        s.insert(t);
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    const TokenSet a = draw(), b = draw();
    if (!a.empty() || !b.empty()) {
      CHECK(jaccard(a, b) == jaccard(b, a));
      CHECK(jaccard(a, b) >= 0.0);
      CHECK(jaccard(a, b) <= 1.0);
    }
    if (!a.empty()) {
      CHECK(jaccard(a, a) == 1.0);
      TokenSet sup = a;
      sup.insert(b.begin(), b.end());
      CHECK(overlap_ratio(a, sup) == 1.0);
    }
  }
}

TEST_CASE("token order does not matter") {
  SimpleTokenizer tok;
  CHECK(jaccard("a b c d", "x y a", tok) == jaccard("d c b a", "a y x", tok));
  CHECK(overlap_ratio("sum of values", "values + sum", tok) == overlap_ratio("values of sum", "sum + values", tok));
}

TEST_CASE("histogram examples") {
  const std::vector<double> edges{0.0, 0.15, 0.3};
  const Histogram h = bin_counts(std::vector<double>{0.1, 0.2, 0.2}, edges);
  REQUIRE(h.bins.size() == 2);
  CHECK(h.bins[0].count == 1);
  CHECK(h.bins[0].mean == doctest::Approx(0.1));
  CHECK(h.bins[1].count == 2);
  CHECK(h.bins[1].mean == doctest::Approx(0.2));

  const Histogram empty = bin_counts(std::vector<double>{}, edges);
  CHECK(empty.bins.size() == 2);
  CHECK(empty.bins[0].count + empty.bins[1].count + empty.underflow + empty.overflow == 0);

  const Histogram edgy = bin_counts(std::vector<double>{0.0, 0.15, 0.3, -0.1, 0.31}, edges);
  CHECK(edgy.bins[0].count == 2);
  CHECK(edgy.bins[1].count == 1);
  CHECK(edgy.underflow == 1);
  CHECK(edgy.overflow == 1);

  CHECK_THROWS_AS((void)bin_counts(std::vector<double>{0.1}, std::vector<double>{0.3, 0.1}), InputError);
  CHECK_THROWS_AS((void)bin_counts(std::vector<double>{0.1}, std::vector<double>{0.1, 0.1}), InputError);
  CHECK_THROWS_AS((void)bin_counts(std::vector<double>{0.1}, std::vector<double>{0.1}), InputError);
  CHECK_THROWS_AS((void)bin_counts(std::vector<double>{std::nan("")}, edges), InputError);
}

TEST_CASE("bin counts add up") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  const std::vector<double> edges{0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 200; ++i) {
    std::vector<double> values(rng() % 50);
    for (double &v : values)
      v = u(rng);
    const Histogram h = bin_counts(values, edges);
    std::size_t in = 0, out = 0;
    for (const HistogramBin &b : h.bins)
      in += b.count;
    for (double v : values)
      out += v < 0.0 || v > 1.0;
    CHECK(in == values.size() - out);
    CHECK(h.underflow + h.overflow == out);
  }
}

TEST_CASE("external tokenizer") {
  TokenizerConfig cfg;
  cfg.mode = TokenizerMode::External;
  CHECK_THROWS_AS((void)make_tokenizer(cfg), ConfigError);
  cfg.external_spec = kSplitCommand;
  const auto tok = make_tokenizer(cfg);
  CHECK(tok->tokenize("getMax a b") == std::vector<std::string>{"getMax", "a", "b"});
  const std::vector<std::string> texts{"x y", "", "z"};
  CHECK(tok->tokenize_batch(texts) == std::vector<std::vector<std::string>>{{"x", "y"}, {}, {"z"}});
  CHECK(jaccard("getMax a", "a getMax", *tok) == 1.0);

  const CommandTokenizer broken("exit 3");
  CHECK_THROWS_AS((void)broken.tokenize("a"), ConfigError);
}

} // TEST_SUITE
