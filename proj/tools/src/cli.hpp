#pragma once

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace astkit::cli {

using json = nlohmann::json;

/// Input file missing or unreadable, output not writable. Exit status 1.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid flag combination or value detected after option parsing. Exit 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> read_lines(const std::string &path);

/// Writes via a temporary file and rename; "-" means stdout.
void write_atomic(const std::string &path, const std::string &content);

/// Shortest round-trip decimal form.
std::string format_number(double value);

//===----------------------------------------------------------------------===//
// Per-record processing
//===----------------------------------------------------------------------===//

struct RecordOutput {
  std::string line;             // one output line, without the newline
  std::vector<double> numbers;  // optional payload for aggregation
};

using RecordFn = std::function<RecordOutput(const json &record)>;
/// Called once per worker thread; the returned function owns that worker's
/// parser state.
using WorkerFactory = std::function<RecordFn()>;

struct RecordResult {
  std::string id;
  std::size_t line = 0; // 1-based input line
  RecordOutput output;
  bool ok = false;
  std::string error_type;
  std::string error_message;
};

struct BatchResult {
  std::vector<RecordResult> ok;     // sorted by id
  std::vector<RecordResult> failed; // sorted by id, then line
};

/// Parses each non-blank line as a JSON object with a string "id", rejects
/// duplicate ids, and maps the rest over `jobs` workers.
BatchResult process_records(const std::vector<std::string> &lines, unsigned jobs, const WorkerFactory &factory);

std::string error_lines(const std::vector<RecordResult> &failed);

/// Sidecar path for `output`; empty when writing to stdout.
std::string sidecar_path(const std::string &output);

unsigned default_jobs();

/// Entry point shared by the executable and the tests. Returns the exit
/// status: 0 success, 1 I/O or runtime failure, 2 usage error.
int run(const std::vector<std::string> &args);

} // namespace astkit::cli
