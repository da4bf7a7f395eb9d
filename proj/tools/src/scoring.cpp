#include "commands.hpp"

#include "astkit/error.hpp"
#include "astkit/eval_metrics.hpp"

#include <iostream>

namespace astkit::cli {
namespace {

double number_field(const json &record, const char *name) {
  auto it = record.find(name);
  if (it == record.end() || !it->is_number())
    throw InputError(std::string("record has no numeric \"") + name + "\"");
  return it->get<double>();
}

std::string text_field(const json &record, const char *name) {
  auto it = record.find(name);
  if (it == record.end() || !it->is_string())
    throw InputError(std::string("record has no string \"") + name + "\"");
  return it->get<std::string>();
}

int write_report(const CommonOptions &o, const BatchResult &batch, json report) {
  write_atomic(o.output, report.dump(2) + "\n");
  const std::string sidecar = o.errors.empty() ? sidecar_path(o.output) : o.errors;
  const std::string errors = error_lines(batch.failed);
  if (!sidecar.empty())
    write_atomic(sidecar, errors);
  else
    std::cerr << errors;
  json summary;
  summary["command"] = "score";
  summary["records"] = batch.ok.size() + batch.failed.size();
  summary["written"] = batch.ok.size();
  summary["errors"] = batch.failed.size();
  std::cerr << summary.dump() << '\n';
  return 0;
}

std::string interval_name(const IntervalRow &row, bool first) {
  return (first ? "[" : "(") + format_number(row.lo) + ", " + format_number(row.hi) + "]";
}

std::vector<RunOutcome> read_outcomes(const std::string &path) {
  std::vector<RunOutcome> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos)
      continue;
    const json r = json::parse(lines[i], nullptr, false);
    const std::string where = path + ":" + std::to_string(i + 1);
    if (!r.is_object() || !r.contains("id") || !r["id"].is_string())
      throw InputError(where + ": expected an object with a string \"id\"");
    if (!r.contains("value") || !(r["value"].is_number() || r["value"].is_boolean()))
      throw InputError(where + ": expected a numeric \"value\"");
    const double v = r["value"].is_boolean() ? (r["value"].get<bool>() ? 1.0 : 0.0) : r["value"].get<double>();
    out.push_back({r["id"].get<std::string>(), v});
  }
  return out;
}

} // namespace

int cmd_score(const CommonOptions &o, const ScoreOptions &s) {
  const unsigned jobs = o.jobs == 0 ? default_jobs() : o.jobs;
  if (s.task == "clone") {
    const auto lines = read_lines(o.input);
    auto factory = []() -> RecordFn {
      return [](const json &record) {
        const double score = number_field(record, "score");
        const double label = number_field(record, "label");
        if (!(score >= 0.0 && score <= 1.0))
          throw InputError("score must lie in [0, 1]");
        if (label != 0.0 && label != 1.0)
          throw InputError("label must be 0 or 1");
        return RecordOutput{"", {score, label}};
      };
    };
    const BatchResult batch = process_records(lines, jobs, factory);
    std::vector<ClassifierSample> run;
    for (const RecordResult &r : batch.ok)
      run.push_back({r.id, r.output.numbers[0], static_cast<int>(r.output.numbers[1])});
    const ThresholdRule rule = s.strict_threshold ? ThresholdRule::Strict : ThresholdRule::Inclusive;
    json report;
    report["task"] = "clone";
    report["count"] = run.size();
    report["rule"] = s.strict_threshold ? "strict" : "inclusive";
    if (!run.empty()) {
      const double delta = s.threshold ? *s.threshold : sweep_threshold(run, rule).threshold;
      std::vector<int> labels;
      for (const auto &c : run)
        labels.push_back(c.label);
      const PrfScores prf = precision_recall_f1(predict(run, delta, rule), labels);
      report["threshold"] = delta;
      report["precision"] = prf.precision;
      report["recall"] = prf.recall;
      report["f1"] = prf.f1;
    }
    return write_report(o, batch, std::move(report));
  }

  if (s.task == "search") {
    for (std::size_t k : s.ks)
      if (k < 1)
        throw UsageError("--k values must be at least 1");
    const auto lines = read_lines(o.input);
    auto factory = []() -> RecordFn {
      return [](const json &record) {
        auto it = record.find("rank");
        if (it == record.end() || !it->is_number_integer() || it->get<long long>() < 1)
          throw InputError("record has no positive integer \"rank\"");
        return RecordOutput{"", {static_cast<double>(it->get<long long>())}};
      };
    };
    const BatchResult batch = process_records(lines, jobs, factory);
    std::vector<std::size_t> ranks;
    for (const RecordResult &r : batch.ok)
      ranks.push_back(static_cast<std::size_t>(r.output.numbers[0]));
    json report;
    report["task"] = "search";
    report["count"] = ranks.size();
    if (!ranks.empty()) {
      report["mrr"] = mrr(ranks);
      for (std::size_t k : s.ks)
        report["sr@" + std::to_string(k)] = success_rate_at_k(ranks, k);
    }
    return write_report(o, batch, std::move(report));
  }

  if (s.task == "summarization") {
    if (s.bleu_level != "corpus" && s.bleu_level != "sentence")
      throw UsageError("--bleu-level must be corpus or sentence");
    const auto lines = read_lines(o.input);
    const bool smooth = s.smooth;
    auto factory = [smooth]() -> RecordFn {
      return [smooth](const json &record) {
        const Tokens cand = split_words(text_field(record, "candidate"));
        const Tokens ref = split_words(text_field(record, "reference"));
        if (ref.empty())
          throw InputError("reference has no tokens");
        json pair;
        pair["c"] = cand;
        pair["r"] = ref;
        return RecordOutput{pair.dump(), {sentence_bleu(cand, ref, smooth), meteor(cand, ref), rouge_l(cand, ref)}};
      };
    };
    const BatchResult batch = process_records(lines, jobs, factory);
    json report;
    report["task"] = "summarization";
    report["count"] = batch.ok.size();
    report["smooth"] = smooth;
    report["bleu_level"] = s.bleu_level;
    if (!batch.ok.empty()) {
      std::vector<Tokens> cands, refs;
      double sum_bleu = 0.0, sum_meteor = 0.0, sum_rouge = 0.0;
      for (const RecordResult &r : batch.ok) {
        const json pair = json::parse(r.output.line);
        cands.push_back(pair["c"].get<Tokens>());
        refs.push_back(pair["r"].get<Tokens>());
        sum_bleu += r.output.numbers[0];
        sum_meteor += r.output.numbers[1];
        sum_rouge += r.output.numbers[2];
      }
      const double n = static_cast<double>(batch.ok.size());
      report["bleu"] = s.bleu_level == "corpus" ? corpus_bleu(cands, refs, smooth) : sum_bleu / n;
      report["meteor"] = sum_meteor / n;
      report["rouge_l"] = sum_rouge / n;
    }
    return write_report(o, batch, std::move(report));
  }
  throw UsageError("--task must be clone, search or summarization");
}

int cmd_compare(const CompareOptions &c) {
  OutcomeKind kind;
  if (c.kind == "binary")
    kind = OutcomeKind::Binary;
  else if (c.kind == "real")
    kind = OutcomeKind::Real;
  else
    throw UsageError("--kind must be binary or real");
  if (c.values.empty() != c.edges.empty())
    throw UsageError("--values and --edges go together");

  const auto a = read_outcomes(c.run_a);
  const auto b = read_outcomes(c.run_b);
  std::optional<IntervalSpec> spec;
  if (!c.values.empty())
    spec = IntervalSpec{read_outcomes(c.values), c.edges};

  const ComparisonReport r = compare_runs(a, b, kind, spec);
  json report;
  report["kind"] = c.kind;
  report["samples"] = r.samples;
  if (kind == OutcomeKind::Binary) {
    report["both"] = r.venn.both;
    report["only_a"] = r.venn.only_a;
    report["only_b"] = r.venn.only_b;
    report["neither"] = r.venn.neither;
  } else {
    report["a_better"] = r.winners.a_better;
    report["b_better"] = r.winners.b_better;
    report["tie"] = r.winners.tie;
  }
  if (r.intervals) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.intervals->rows.size(); ++i) {
      const IntervalRow &row = r.intervals->rows[i];
      rows.push_back({{"interval", interval_name(row, i == 0)},
                      {"lo", row.lo},
                      {"hi", row.hi},
                      {"count_a", row.count_a},
                      {"count_b", row.count_b},
                      {"mean", row.mean}});
    }
    report["intervals"] = std::move(rows);
    report["underflow"] = r.intervals->underflow;
    report["overflow"] = r.intervals->overflow;
  }
  write_atomic(c.output, report.dump(2) + "\n");
  return 0;
}

} // namespace astkit::cli
