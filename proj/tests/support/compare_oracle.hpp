#pragma once

#include "astkit/eval_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace astkit::testing {

struct CompareOracle {
  VennCounts venn;
  WinnerCounts winners;
  IntervalTable table;
};

/// Brute-force recount: linear lookups, explicit interval tests per bin.
inline CompareOracle oracle_compare(const std::vector<RunOutcome> &a, const std::vector<RunOutcome> &b,
                                    OutcomeKind kind, const IntervalSpec &spec) {
  auto find = [](const std::vector<RunOutcome> &run, const std::string &id) {
    for (const RunOutcome &o : run)
      if (o.id == id)
        return o.value;
    return -1.0;
  };
  CompareOracle o;
  std::vector<std::pair<double, int>> decided; // (characterization value, +1 A / -1 B)
  for (const RunOutcome &x : a) {
    const double va = x.value;
    const double vb = find(b, x.id);
    int side = 0;
    if (kind == OutcomeKind::Binary) {
      if (va == 1 && vb == 1)
        o.venn.both++;
      else if (va == 1)
        o.venn.only_a++, side = 1;
      else if (vb == 1)
        o.venn.only_b++, side = -1;
      else
        o.venn.neither++;
    } else if (va > vb) {
      o.winners.a_better++, side = 1;
    } else if (vb > va) {
      o.winners.b_better++, side = -1;
    } else {
      o.winners.tie++;
    }
    if (side != 0)
      decided.emplace_back(find(spec.values, x.id), side);
  }
  const auto &e = spec.edges;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    IntervalRow row;
    row.lo = e[i];
    row.hi = e[i + 1];
    double sum = 0;
    for (auto [v, side] : decided) {
      const bool in = (i == 0 ? v >= e[i] : v > e[i]) && v <= e[i + 1];
      if (!in)
        continue;
      (side > 0 ? row.count_a : row.count_b)++;
      sum += v;
    }
    const std::size_t n = row.count_a + row.count_b;
    row.mean = n == 0 ? 0.0 : sum / static_cast<double>(n);
    o.table.rows.push_back(row);
  }
  for (auto [v, side] : decided) {
    o.table.underflow += v < e.front();
    o.table.overflow += v > e.back();
  }
  return o;
}

struct RandomRunPair {
  std::vector<RunOutcome> a, b;
  IntervalSpec spec;
};

inline RandomRunPair random_run_pair(std::mt19937_64 &rng, OutcomeKind kind) {
  RandomRunPair p;
  const std::size_t n = 1 + rng() % 80;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> wide(-0.1, 1.1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "s" + std::to_string(i);
    double va, vb;
    if (kind == OutcomeKind::Binary) {
      va = static_cast<double>(rng() % 2);
      vb = static_cast<double>(rng() % 2);
    } else {
      va = std::round(u(rng) * 10) / 10;
      vb = std::round(u(rng) * 10) / 10;
    }
    p.a.push_back({id, va});
    p.b.push_back({id, vb});
    p.spec.values.push_back({id, rng() % 5 == 0 ? std::round(wide(rng) * 4) / 4 : wide(rng)});
  }
  std::shuffle(p.b.begin(), p.b.end(), rng);
  std::shuffle(p.spec.values.begin(), p.spec.values.end(), rng);
  p.spec.edges = {0.0, 0.25, 0.5, 0.75, 1.0};
  return p;
}

} // namespace astkit::testing
