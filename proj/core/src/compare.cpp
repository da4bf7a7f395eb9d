#include "astkit/eval_metrics.hpp"

#include "astkit/error.hpp"

#include <map>

namespace astkit {
namespace {

std::map<std::string, double> index_run(std::span<const RunOutcome> run, const char *name) {
  std::map<std::string, double> out;
  for (const RunOutcome &o : run)
    if (!out.emplace(o.id, o.value).second)
      throw InputError(std::string("duplicate id '") + o.id + "' in " + name);
  return out;
}

} // namespace

ComparisonReport compare_runs(std::span<const RunOutcome> run_a, std::span<const RunOutcome> run_b,
                              OutcomeKind kind, const std::optional<IntervalSpec> &intervals) {
  const auto a = index_run(run_a, "run A");
  const auto b = index_run(run_b, "run B");
  if (a.size() != b.size())
    throw InputError("runs cover different ids");
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first)
      throw InputError("runs cover different ids ('" + ia->first + "' vs '" + ib->first + "')");

  ComparisonReport report;
  report.kind = kind;
  report.samples = a.size();

  // Per id: +1 when A wins, -1 when B wins, 0 otherwise.
  std::map<std::string, int> side;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    const double va = ia->second;
    const double vb = ib->second;
    int s = 0;
    if (kind == OutcomeKind::Binary) {
      if ((va != 0.0 && va != 1.0) || (vb != 0.0 && vb != 1.0))
        throw InputError("binary outcome for '" + ia->first + "' is not 0 or 1");
      if (va == 1.0 && vb == 1.0)
        ++report.venn.both;
      else if (va == 1.0)
        ++report.venn.only_a, s = 1;
      else if (vb == 1.0)
        ++report.venn.only_b, s = -1;
      else
        ++report.venn.neither;
    } else {
      if (va > vb)
        ++report.winners.a_better, s = 1;
      else if (vb > va)
        ++report.winners.b_better, s = -1;
      else
        ++report.winners.tie;
    }
    side.emplace(ia->first, s);
  }

  if (intervals) {
    const auto values = index_run(intervals->values, "interval values");
    std::vector<double> for_a, for_b, counted;
    for (const auto &[id, s] : side) {
      if (s == 0)
        continue;
      auto it = values.find(id);
      if (it == values.end())
        throw InputError("no interval value for '" + id + "'");
      (s > 0 ? for_a : for_b).push_back(it->second);
      counted.push_back(it->second);
    }
    const Histogram ha = bin_counts(for_a, intervals->edges);
    const Histogram hb = bin_counts(for_b, intervals->edges);
    const Histogram all = bin_counts(counted, intervals->edges);
    IntervalTable table;
    for (std::size_t i = 0; i < all.bins.size(); ++i)
      table.rows.push_back({all.bins[i].lo, all.bins[i].hi, ha.bins[i].count, hb.bins[i].count, all.bins[i].mean});
    table.underflow = all.underflow;
    table.overflow = all.overflow;
    report.intervals = std::move(table);
  }
  return report;
}

} // namespace astkit
