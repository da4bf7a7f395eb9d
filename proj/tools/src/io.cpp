#include "cli.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <thread>
#include <unistd.h>

namespace astkit::cli {

std::vector<std::string> read_lines(const std::string &path) {
  std::ifstream in;
  std::istream *src = &std::cin;
  if (path != "-") {
    in.open(path, std::ios::binary);
    if (!in)
      throw IoError("cannot read '" + path + "': " + std::strerror(errno));
    src = &in;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(*src, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
  }
  if (src->bad())
    throw IoError("read error on '" + path + "'");
  return lines;
}

void write_atomic(const std::string &path, const std::string &content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot write '" + tmp + "': " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string reason = std::strerror(errno);
    std::remove(tmp.c_str());
    throw IoError("cannot move output into place at '" + path + "': " + reason);
  }
}

std::string format_number(double value) { return json(value).dump(); }

std::string sidecar_path(const std::string &output) {
  return output == "-" ? std::string() : output + ".errors.jsonl";
}

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

} // namespace astkit::cli
