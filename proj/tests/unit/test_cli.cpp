#include "dbcoh_cli/commands.hpp"
#include "dbcoh_cli/io.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using namespace dbcoh;

namespace {

const std::string kData = DBCOH_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dbcoh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Run run_json(const std::string& command, const std::string& file, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{command, "--input", kData + "/" + file, "--format", "json"};
  args.insert(args.end(), extra.begin(), extra.end());
  return run(args);
}

}  // namespace

TEST_CASE("parsing a minimal object") {
  const auto j = io::parse_text(R"({"m": 2, "terms": {"0": [0], "1": [1]},
    "diffs": {"0": {"entries": [[0, 0, [[1, 1, [1, 0, 0]], [-1, 2, [0, 0, 1]]]]]}}})");
  const io::Input in = io::input_from_json(j);
  REQUIRE(in.collection.size() == 1);
  const DObject& e = in.collection.objects[0];
  CHECK(e.m() == 2);
  CHECK(e.diff(0).at(0, 0).terms().size() == 2);
  CHECK(e.diff(0).at(0, 0).terms().back().second == ratio(-1, 2));
}

TEST_CASE("JSON round trip") {
  dbcoh::testing::Rng rng(61);
  for (int m = 1; m <= 3; ++m)
    for (int i = 0; i < 10; ++i) {
      const DObject e = dbcoh::testing::random_small(m, rng);
      if (e.is_zero()) continue;
      const io::Json j = io::to_json(e);
      CHECK(io::object_from_json(j, "") == e);
      CHECK(io::to_json(io::object_from_json(io::parse_text(j.dump()), "")).dump() == j.dump());
    }
  const Collection c = beilinson(2);
  CHECK(io::collection_from_json(io::to_json(c)).objects == c.objects);
  CHECK(io::rational_from_json(io::rational_to_json(ratio(-7, 3)), "") == ratio(-7, 3));
  const Integer big("123456789012345678901234567890");
  CHECK(io::integer_from_json(io::integer_to_json(big), "") == big);
}

TEST_CASE("parse errors carry a JSON pointer") {
  const auto expect_error = [](const std::string& text, const std::string& path) {
    try {
      io::input_from_json(io::parse_text(text));
      FAIL("no error for " << text);
    } catch (const io::ParseError& e) {
      CHECK(e.path == path);
    }
  };
  expect_error(R"({"m": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": {"entries": [[0, 0, [[1, 1, [2, 0]]]]]}}})",
               "/diffs/0/entries/0/2/0");
  expect_error(R"({"m": 1, "terms": {"0": [0]}, "diffs": {"0": {"entries": [[0, 0, [[1, 1, [1, 0]]]]]}}})", "/diffs/0");
  expect_error(R"({"m": 1, "terms": {"00": [0]}})", "/terms/00");
  expect_error(R"({"m": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": {"entries": [[0, 3, [[1, 1, [1, 0]]]]]}}})",
               "/diffs/0/entries/0/1");
  expect_error(R"({"schema": 1, "m": 1, "objects": [{"m": 2, "terms": {"0": [0]}}]})", "/objects/0/m");
  expect_error(R"({"m": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": {"entries": [[0, 0, [[1, 0, [1, 0]]]]]}}})",
               "/diffs/0/entries/0/2/0/1");
  expect_error(R"({"m": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": {"row_twists": [2], "entries": []}}})",
               "/diffs/0/row_twists");
  expect_error("{not json", "");
}

TEST_CASE("d o d != 0 is rejected at parse time") {
  const std::string text = R"({"m": 1, "terms": {"0": [0], "1": [1], "2": [2]},
    "diffs": {"0": {"entries": [[0, 0, [[1, 1, [1, 0]]]]]}, "1": {"entries": [[0, 0, [[1, 1, [1, 0]]]]]}}})";
  CHECK_THROWS_AS(io::input_from_json(io::parse_text(text)), io::ParseError);
}

TEST_CASE("exit codes") {
  CHECK(run_json("hom", "p2_hom_o_o1.json").code == 0);
  CHECK(run_json("check", "p2_beilinson.json").code == 0);
  CHECK(run_json("check", "p1_nonstrict.json").code == 1);
  const Run bad = run_json("check", "inhomogeneous.json");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("/objects/0/diffs/-1/entries/0/2/1") != std::string::npos);
  CHECK(run({"frobnicate", "--input", kData + "/p1_beilinson.json"}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "--input", kData + "/does_not_exist.json"}).code == 2);
  CHECK(run_json("braid", "p1_beilinson.json").code == 2);
  CHECK(run_json("braid", "p1_beilinson.json", {"--random-word", "3"}).code == 0);
}

TEST_CASE("every command runs on the sample data") {
  for (const auto& name : cli::command_names()) {
    INFO(name);
    const std::string file = name == "hom" || name == "rhom" ? "p2_hom_o_o1.json"
                             : name == "braid"                ? "p2_braided.json"
                             : name == "main-lemma" || name == "corollary" ? "p2_point.json"
                                                                           : "p2_beilinson.json";
    const Run r = run_json(name, file);
    CHECK(r.code == 0);
    const auto j = io::Json::parse(r.out);
    CHECK(j.at("schema") == io::kSchemaVersion);
    CHECK(j.at("command") == name);
    CHECK_FALSE(j.contains("timing"));
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const Run a = run_json("verify-theorem", "p2_braided.json", {"--seed", "17"});
  const Run b = run_json("verify-theorem", "p2_braided.json", {"--seed", "17"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = run_json("braid", "p1_beilinson.json", {"--random-word", "4", "--seed", "3"});
  const Run d = run_json("braid", "p1_beilinson.json", {"--random-word", "4", "--seed", "3"});
  CHECK(c.out == d.out);
  CHECK(run_json("check", "p2_beilinson.json", {"--timing"}).out.find("\"timing\"") != std::string::npos);
}

TEST_CASE("text output names the verdicts") {
  const Run r = run({"check", "--input", kData + "/p1_nonstrict.json"});
  CHECK(r.code == 1);
  CHECK(r.out.find("strict") != std::string::npos);
  CHECK(r.out.find("fail") != std::string::npos);
}

TEST_CASE("the installed executable reports the same exit codes") {
  const std::string exe = DBCOH_CLI_EXE;
  const auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("check --input " + kData + "/p2_beilinson.json") == 0);
  CHECK(status("check --input " + kData + "/p1_nonstrict.json") == 1);
  CHECK(status("check --input " + kData + "/inhomogeneous.json") == 2);
  CHECK(status("hom < /dev/null") == 2);
}
