#include "cli.hpp"

#include "astkit/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace astkit::cli {
namespace {

struct Pending {
  std::size_t line;
  std::string id;
  json record;
};

void fail(RecordResult &r, std::string type, std::string message) {
  r.ok = false;
  r.error_type = std::move(type);
  r.error_message = std::move(message);
}

void run_one(const RecordFn &fn, const Pending &p, RecordResult &r) {
  try {
    r.output = fn(p.record);
    r.ok = true;
  } catch (const astkit::ParseError &e) {
    fail(r, "parse_error", e.what());
  } catch (const astkit::InputError &e) {
    fail(r, "input_error", e.what());
  } catch (const astkit::ConfigError &e) {
    fail(r, "config_error", e.what());
  } catch (const json::exception &e) {
    fail(r, "input_error", e.what());
  } catch (const std::exception &e) {
    fail(r, "error", e.what());
  }
}

} // namespace

BatchResult process_records(const std::vector<std::string> &lines, unsigned jobs, const WorkerFactory &factory) {
  std::vector<RecordResult> results;
  std::vector<Pending> pending;
  std::set<std::string> seen;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string &text = lines[i];
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) != 0; }))
      continue;
    RecordResult r;
    r.line = i + 1;
    json record = json::parse(text, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      fail(r, "input_error", "line is not a JSON object");
    } else if (!record.contains("id") || !record["id"].is_string()) {
      fail(r, "input_error", "record has no string \"id\"");
    } else {
      r.id = record["id"].get<std::string>();
      if (!seen.insert(r.id).second)
        fail(r, "input_error", "duplicate id");
      else
        pending.push_back({r.line, r.id, std::move(record)});
    }
    if (!r.error_type.empty())
      results.push_back(std::move(r));
  }

  std::vector<RecordResult> done(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    done[i].id = pending[i].id;
    done[i].line = pending[i].line;
  }

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pending.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr startup_error;
  std::mutex startup_mutex;
  auto work = [&] {
    RecordFn fn;
    try {
      fn = factory();
    } catch (...) {
      std::lock_guard lock(startup_mutex);
      if (!startup_error)
        startup_error = std::current_exception();
      return;
    }
    for (std::size_t i = next++; i < pending.size(); i = next++)
      run_one(fn, pending[i], done[i]);
  };
  if (workers == 1 || pending.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      threads.emplace_back(work);
    for (auto &t : threads)
      t.join();
  }
  if (startup_error)
    std::rethrow_exception(startup_error);

  BatchResult batch;
  for (auto &r : done)
    (r.ok ? batch.ok : batch.failed).push_back(std::move(r));
  for (auto &r : results)
    batch.failed.push_back(std::move(r));
  auto by_id = [](const RecordResult &a, const RecordResult &b) {
    return a.id != b.id ? a.id < b.id : a.line < b.line;
  };
  std::sort(batch.ok.begin(), batch.ok.end(), by_id);
  std::sort(batch.failed.begin(), batch.failed.end(), by_id);
  return batch;
}

std::string error_lines(const std::vector<RecordResult> &failed) {
  std::string out;
  for (const RecordResult &r : failed) {
    json j;
    j["id"] = r.id;
    j["line"] = r.line;
    j["error"] = r.error_type;
    j["message"] = r.error_message;
    out += j.dump();
    out += '\n';
  }
  return out;
}

} // namespace astkit::cli
