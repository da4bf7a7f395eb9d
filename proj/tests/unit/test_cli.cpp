#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace astkit::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("astkit-cli-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] std::string file(const std::string &name) const { return (path_ / name).string(); }

private:
  fs::path path_;
};

void write_file(const std::string &path, const std::string &content) {
  std::ofstream(path, std::ios::binary) << content;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::string record(const std::string &id, const std::string &code) {
  return json{{"id", id}, {"code", code}}.dump() + "\n";
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("sbt on a single record") {
  TempDir dir;
  write_file(dir.file("in.jsonl"), record("m1", "int id(int a){return a;}"));
  REQUIRE(run({"transform", "--method", "sbt", "-i", dir.file("in.jsonl"), "-o", dir.file("out.jsonl")}) == 0);
  const auto out = lines_of(read_file(dir.file("out.jsonl")));
  REQUIRE(out.size() == 1);
  const json j = json::parse(out[0]);
  CHECK(j["id"] == "m1");
  const std::string sbt = j["sbt"].get<std::string>();
  CHECK(sbt.rfind("( method_declaration", 0) == 0);
  CHECK(sbt.size() > 20);
  CHECK(read_file(dir.file("out.jsonl.errors.jsonl")).empty());
}

TEST_CASE("split on a straight-line method") {
  TempDir dir;
  write_file(dir.file("in.jsonl"), record("s", "void f(int a) { int b = a + 1; log(b); }"));
  REQUIRE(run({"transform", "--method", "split", "-i", dir.file("in.jsonl"), "-o", dir.file("out.jsonl")}) == 0);
  const json j = json::parse(read_file(dir.file("out.jsonl")));
  CHECK(j["blocks"].size() == 1);
  CHECK(j["skipped_blocks"] == 0);
}

TEST_CASE("search scoring") {
  TempDir dir;
  write_file(dir.file("ranks.jsonl"), "{\"id\":\"q1\",\"rank\":1}\n{\"id\":\"q2\",\"rank\":2}\n{\"id\":\"q3\",\"rank\":4}\n");
  REQUIRE(run({"score", "--task", "search", "-i", dir.file("ranks.jsonl"), "-o", dir.file("report.json")}) == 0);
  const json r = json::parse(read_file(dir.file("report.json")));
  CHECK(r["mrr"].get<double>() == doctest::Approx(0.583333).epsilon(1e-6));
  CHECK(r["sr@1"].get<double>() == doctest::Approx(0.333333).epsilon(1e-6));
  CHECK(r["sr@5"].get<double>() == 1.0);
}

TEST_CASE("clone and summarization scoring") {
  TempDir dir;
  write_file(dir.file("clone.jsonl"), "{\"id\":\"a\",\"score\":0.9,\"label\":1}\n{\"id\":\"b\",\"score\":0.8,\"label\":1}\n"
                                      "{\"id\":\"c\",\"score\":0.2,\"label\":0}\n{\"id\":\"d\",\"score\":0.1,\"label\":0}\n");
  REQUIRE(run({"score", "--task", "clone", "-i", dir.file("clone.jsonl"), "-o", dir.file("clone.json")}) == 0);
  const json c = json::parse(read_file(dir.file("clone.json")));
  CHECK(c["threshold"].get<double>() == doctest::Approx(0.21));
  CHECK(c["f1"] == 1.0);

  write_file(dir.file("sum.jsonl"), "{\"id\":\"1\",\"candidate\":\"a b c\",\"reference\":\"a b c\"}\n");
  REQUIRE(run({"score", "--task", "summarization", "-i", dir.file("sum.jsonl"), "-o", dir.file("sum.json")}) == 0);
  const json s = json::parse(read_file(dir.file("sum.json")));
  CHECK(s["meteor"].get<double>() == doctest::Approx(0.981481).epsilon(1e-6));
  CHECK(s["rouge_l"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({"bogus"}) == 2);
  CHECK(run({}) == 2);
  CHECK(run({"transform", "-i", dir.file("missing.jsonl")}) == 2);
  CHECK(run({"transform", "--method", "nope", "-i", dir.file("x")}) == 2);
  CHECK(run({"parse", "-i", dir.file("missing.jsonl"), "-o", dir.file("o")}) == 1);
  write_file(dir.file("in.jsonl"), record("a", "int f(){return 1;}"));
  CHECK(run({"relmat", "-i", dir.file("in.jsonl"), "-o", dir.file("o"), "--max-distance", "0"}) == 2);
  CHECK(run({"characterize", "--metric", "overlap", "--tokenizer", "external", "-i", dir.file("in.jsonl"), "-o",
             dir.file("o")}) == 2);
}

TEST_CASE("bad records go to the sidecar and every id is accounted for") {
  TempDir dir;
  std::string in = record("good1", "int f(){return 1;}") + record("blank", "   ") + "not json\n" +
                   record("good2", "void g(){}") + "{\"code\":\"void h(){}\"}\n" + record("good1", "void dup(){}") +
                   "{\"id\":\"nocode\"}\n" + "\n";
  write_file(dir.file("in.jsonl"), in);
  REQUIRE(run({"parse", "-i", dir.file("in.jsonl"), "-o", dir.file("out.jsonl")}) == 0);
  std::multiset<std::string> ids;
  for (const auto &l : lines_of(read_file(dir.file("out.jsonl"))))
    ids.insert(json::parse(l)["id"].get<std::string>());
  const auto errors = lines_of(read_file(dir.file("out.jsonl.errors.jsonl")));
  for (const auto &l : errors) {
    const json e = json::parse(l);
    CHECK(e.contains("line"));
    CHECK(e.contains("error"));
    if (e["id"].is_string())
      ids.insert(e["id"].get<std::string>());
  }
  CHECK(ids.count("good2") == 1);
  CHECK(ids.count("blank") == 1);
  CHECK(ids.count("nocode") == 1);
  CHECK(errors.size() >= 4);
}

TEST_CASE("outputs do not depend on the worker count") {
  TempDir dir;
  std::string in;
  for (int i = 0; i < 40; ++i)
    in += record("m" + std::to_string(39 - i),
                 "int f" + std::to_string(i) + "(int a) { if (a > " + std::to_string(i) + ") return a; return -a; }");
  write_file(dir.file("in.jsonl"), in);
  for (const char *method : {"raw", "bfs", "sbt", "sbt-notok", "path", "binary", "split"}) {
    REQUIRE(run({"transform", "--method", method, "-i", dir.file("in.jsonl"), "-o", dir.file("j1"), "-j", "1"}) == 0);
    REQUIRE(run({"transform", "--method", method, "-i", dir.file("in.jsonl"), "-o", dir.file("j4"), "-j", "4"}) == 0);
    CHECK(read_file(dir.file("j1")) == read_file(dir.file("j4")));
    CHECK(lines_of(read_file(dir.file("j1"))).size() == 40);
  }
  REQUIRE(run({"stats", "-i", dir.file("in.jsonl"), "-o", dir.file("s1"), "-j", "1", "--summary", dir.file("sum1")}) == 0);
  REQUIRE(run({"stats", "-i", dir.file("in.jsonl"), "-o", dir.file("s3"), "-j", "3", "--summary", dir.file("sum3")}) == 0);
  CHECK(read_file(dir.file("s1")) == read_file(dir.file("s3")));
  CHECK(read_file(dir.file("sum1")) == read_file(dir.file("sum3")));
  const auto csv = lines_of(read_file(dir.file("s1")));
  CHECK(csv.front() == "id,size,depth,branching,unique_types,unique_tokens");
  CHECK(csv[1].rfind("m0,", 0) == 0);
}

TEST_CASE("characterize and compare") {
  TempDir dir;
  write_file(dir.file("pairs.jsonl"), "{\"id\":\"p\",\"code1\":\"int getMax(int a)\",\"code2\":\"int getMin(int a)\"}\n");
  REQUIRE(run({"characterize", "--metric", "jaccard", "-i", dir.file("pairs.jsonl"), "-o", dir.file("j.csv")}) == 0);
  CHECK(read_file(dir.file("j.csv")) == "id,metric,value\np,jaccard,0.6\n");

  write_file(dir.file("sum.jsonl"), "{\"id\":\"s\",\"summary\":\"compute sum\",\"code\":\"int sum(int a)\"}\n");
  REQUIRE(run({"characterize", "--metric", "overlap", "--text-field", "summary", "-i", dir.file("sum.jsonl"), "-o",
               dir.file("e.csv")}) == 0);
  CHECK(read_file(dir.file("e.csv")) == "id,metric,value\ns,ease,0.5\n");

  write_file(dir.file("a.jsonl"), "{\"id\":\"1\",\"value\":1}\n{\"id\":\"2\",\"value\":1}\n{\"id\":\"3\",\"value\":0}\n");
  write_file(dir.file("b.jsonl"), "{\"id\":\"3\",\"value\":1}\n{\"id\":\"1\",\"value\":1}\n{\"id\":\"2\",\"value\":0}\n");
  write_file(dir.file("v.jsonl"), "{\"id\":\"1\",\"value\":0.1}\n{\"id\":\"2\",\"value\":0.2}\n{\"id\":\"3\",\"value\":0.1}\n");
  REQUIRE(run({"compare", "--a", dir.file("a.jsonl"), "--b", dir.file("b.jsonl"), "--values", dir.file("v.jsonl"),
               "--edges", "0,0.15,0.3", "-o", dir.file("cmp.json")}) == 0);
  const json r = json::parse(read_file(dir.file("cmp.json")));
  CHECK(r["both"] == 1);
  CHECK(r["only_a"] == 1);
  CHECK(r["only_b"] == 1);
  CHECK(r["neither"] == 0);
  CHECK(r["intervals"][0]["interval"] == "[0.0, 0.15]");
  CHECK(r["intervals"][0]["count_b"] == 1);
  CHECK(r["intervals"][1]["interval"] == "(0.15, 0.3]");
  CHECK(r["intervals"][1]["count_a"] == 1);

  CHECK(run({"compare", "--a", dir.file("a.jsonl"), "--b", dir.file("b.jsonl"), "--values", dir.file("v.jsonl")}) == 2);
}

} // TEST_SUITE
