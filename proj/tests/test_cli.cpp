#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraction_forge/cli/app.hpp"

using namespace ff;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string src(const std::string& rel) { return (fs::path(FF_SOURCE_DIR) / rel).string(); }
std::string cat(const std::string& name) { return src("corpus/categories/" + name + ".json"); }
std::string data(const std::string& name) { return src("tests/data/" + name); }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ff_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("exit codes follow the contract", "[cli]") {
  fs::path tmp = scratch("matrix");
  {
    std::ofstream(tmp / "broken.json") << "{\"objects\": [\"a\",\n";
    std::ofstream(tmp / "dangling.json") << R"({"objects": ["a"], "morphisms": [{"id": "f", "dom": "a", "cod": "b"}]})";
  }
  const std::string broken = (tmp / "broken.json").string(), dangling = (tmp / "dangling.json").string();
  struct Row {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Row> rows{
      {{"fractions", "check", "--input", cat("arrow_marked"), "--mode", "proper", "--side", "L"}, 0},
      {{"fractions", "check", "--input", cat("parallel_one"), "--mode", "proper", "--side", "L"}, 1},
      {{"fractions", "check", "--input", cat("span_one"), "--mode", "classical", "--side", "R"}, 0},
      {{"fractions", "check", "--input", cat("span_one"), "--mode", "infty", "--side", "L"}, 1},
      {{"fractions", "check", "--input", broken}, 2},
      {{"fractions", "check", "--input", dangling}, 2},
      {{"fractions", "check", "--input", cat("arrow_marked"), "--mode", "sideways"}, 2},
      {{"fractions", "check", "--input", cat("arrow_marked"), "--frobnicate"}, 2},
      {{"fractions", "lift", "--input", cat("parallel_one"), "--shape", "2,1"}, 1},
      {{"fractions", "lift", "--input", cat("arrow_marked"), "--shape", "3,1"}, 0},
      {{"fractions", "lift", "--input", cat("arrow_marked"), "--shape", "4,1"}, 2},
      {{"localize", "gz", "--input", cat("square_all")}, 0},
      {{"localize", "gz", "--input", cat("parallel_one")}, 2},
      {{"localize", "ex", "--input", cat("arrow_marked"), "--levels", "2"}, 0},
      {{"localize", "ex", "--input", cat("arrow_marked"), "--levels", "4"}, 2},
      {{"localize", "compare", "--input", cat("iso_marked_chain2")}, 0},
      {{"localize", "compare", "--input", cat("parallel_one")}, 2},
      {{"mapspace", "--input", cat("square_all"), "--from", "bot", "--to", "top"}, 0},
      {{"mapspace", "--input", cat("square_all"), "--from", "bot", "--to", "nowhere"}, 2},
      {{"graph", "a1", "--input", src("corpus/graphs/cycle5.json")}, 0},
      {{"graph", "a1", "--input", cat("point")}, 2},
      {{"graph", "a1", "--input", data("c5.json"), "--oracle-bound", "11"}, 2},
      {{"graph", "nerve-box", "--input", data("c5.json"), "--box", data("box_c5.json"), "--window", "8"}, 0},
      {{"graph", "nerve-box", "--input", data("c5.json"), "--box", data("box_c5_tight.json"), "--window", "2"}, 1},
      {{"graph", "nerve-box", "--input", data("c5.json"), "--box", cat("point")}, 2},
      {{"graph", "pullback-probe", "--f", data("f_edge_c5.json"), "--g", data("g_point_c5.json"), "--vertex",
        data("pullback_vertex.json"), "--radius", "1"},
       0},
      {{"graph", "pullback-probe", "--f", data("f_edge_c5.json"), "--g", data("f_edge_c5.json"), "--vertex",
        data("pullback_vertex.json")},
       2},
      {{"corpus", "run", "--input", src("corpus/graphs")}, 0},
      {{"corpus", "run", "--input", tmp.string()}, 2},
      {{"export", "dot", "--input", cat("walking_iso_marked")}, 0},
      {{"export", "dot", "--input", cat("span_one"), "--side", "L"}, 2},
      {{"nonsense"}, 2},
      {{}, 2},
  };
  for (auto const& row : rows) {
    std::string line;
    for (auto const& a : row.args) line += a + " ";
    INFO(line);
    Run r = run_cli(row.args);
    const std::string head = row.args.empty() ? "" : row.args[0];
    INFO(r.err);
    CHECK(r.code == row.code);
    // a corpus run still reports the files it could read
    if (r.code == 2 && head != "corpus") CHECK(r.out.empty());
    if (r.code != 2 && head != "export") CHECK(json::parse(r.out).at("ok").get<bool>() == (r.code == 0));
  }
}

TEST_CASE("malformed files are reported with a position", "[cli]") {
  fs::path tmp = scratch("pointer");
  std::ofstream(tmp / "broken.json") << "{\"objects\": [\"a\",\n  \"b\"";
  std::ofstream(tmp / "marked.json") << R"({"objects": ["a"], "morphisms": [], "marked": ["g"]})";
  Run a = run_cli({"fractions", "check", "--input", (tmp / "broken.json").string()});
  CHECK(a.err.find("broken.json:2:") != std::string::npos);
  Run b = run_cli({"fractions", "check", "--input", (tmp / "marked.json").string()});
  CHECK(b.err.find("/marked/0") != std::string::npos);
}

TEST_CASE("verdicts carry the command and input digests", "[cli]") {
  Run r = run_cli({"fractions", "check", "--input", cat("parallel_one"), "--mode", "proper"});
  REQUIRE(r.code == 1);
  json v = json::parse(r.out);
  CHECK(v.at("command").size() == 6);
  CHECK(v.at("inputs").at(0).at("sha256") == file_sha256(cat("parallel_one")));
  CHECK(v.at("witnesses").size() == 2);
  CHECK(v.at("shapes_checked").size() >= 1);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Run quiet = run_cli({"--no-json", "fractions", "check", "--input", cat("parallel_one")});
  CHECK(quiet.code == 1);
  CHECK(quiet.out.empty());
  CHECK_FALSE(quiet.err.empty());
}

TEST_CASE("outputs are byte-identical across runs", "[cli]") {
  for (auto const& args : std::vector<std::vector<std::string>>{
           {"localize", "gz", "--input", cat("ladder3_capped")},
           {"localize", "compare", "--input", cat("square_all")},
           {"graph", "a1", "--input", src("corpus/graphs/theta_pentagons.json")},
           {"export", "dot", "--input", cat("two_pairs")},
       }) {
    Run a = run_cli(args), b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  // parallel and serial corpus runs differ only in the echoed command
  Run serial = run_cli({"corpus", "run", "--input", src("corpus"), "--jobs", "1"});
  Run parallel = run_cli({"corpus", "run", "--input", src("corpus"), "--jobs", "4"});
  REQUIRE(serial.code == 0);
  json s = json::parse(serial.out), p = json::parse(parallel.out);
  s.erase("command");
  p.erase("command");
  CHECK(s == p);
  CHECK(s.at("summary").at("files").get<int>() >= 28);
}

TEST_CASE("corpus runs", "[cli]") {
  fs::path empty = scratch("empty");
  Run e = run_cli({"corpus", "run", "--input", empty.string()});
  CHECK(e.code == 0);
  CHECK(e.err.find("warning") != std::string::npos);
  // a recorded expectation that does not hold is a failure
  fs::path wrong = scratch("wrong");
  json j = read_json_file(cat("parallel_one"));
  j["expect"]["proper_clf"] = true;
  std::ofstream(wrong / "parallel_one.json") << j.dump();
  Run w = run_cli({"corpus", "run", "--input", wrong.string()});
  CHECK(w.code == 1);
  CHECK(w.err.find("expect proper_clf failed") != std::string::npos);
  j["expect"]["hyperbolic"] = true;
  std::ofstream(wrong / "parallel_one.json") << j.dump();
  CHECK(run_cli({"corpus", "run", "--input", wrong.string()}).code == 2);
}

TEST_CASE("DOT export", "[cli][dot]") {
  SECTION("walking isomorphism") {
    Run r = run_cli({"export", "dot", "--input", cat("walking_iso_marked")});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    int nodes = 0, edges = 0;
    for (std::string line; std::getline(in, line);) {
      if (line.find(" -> ") != std::string::npos) ++edges;
      else if (line.rfind("  \"", 0) == 0) ++nodes;
    }
    CHECK(nodes == 2);
    CHECK(edges == 2);
  }
  SECTION("golden file") {
    Run r = run_cli({"export", "dot", "--input", cat("square_mixed")});
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(src("tests/golden/square_mixed.dot")));
  }
  SECTION("empty category") {
    fs::path tmp = scratch("dot");
    std::ofstream(tmp / "empty.json") << R"({"objects": [], "morphisms": []})";
    Run r = run_cli({"export", "dot", "--input", (tmp / "empty.json").string(), "--of", "category"});
    CHECK(r.out == "digraph \"empty\" {\n  rankdir=LR;\n}\n");
  }
  SECTION("--emit-dot writes the same text") {
    fs::path tmp = scratch("emit");
    Run r = run_cli({"localize", "gz", "--input", cat("square_mixed"), "--emit-dot", (tmp / "g.dot").string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(tmp / "g.dot") == slurp(src("tests/golden/square_mixed.dot")));
  }
  SECTION("the plain category marks its marked arrows") {
    Run r = run_cli({"export", "dot", "--input", cat("square_mixed"), "--of", "category"});
    CHECK(r.out.find("\"bot\" -> \"a\" [label=\"bot->a\", style=bold]") != std::string::npos);
    CHECK(r.out.find("dashed") == std::string::npos);
  }
}

TEST_CASE("Ex levels and emitted simplicial sets", "[cli]") {
  fs::path tmp = scratch("ex");
  const std::string out = (tmp / "ex.json").string();
  Run r = run_cli({"localize", "ex", "--input", cat("arrow_marked"), "--levels", "2", "--emit-sset", out});
  REQUIRE(r.code == 0);
  json v = json::parse(r.out);
  SSet x = sset_from_json(read_json_file(out));
  for (int m = 0; m <= 2; ++m) CHECK(static_cast<int>(x.size(m)) == v.at("nondegenerate").at(m).get<int>());
  // the emitted file feeds back in as input
  Run again = run_cli({"localize", "ex", "--input", out, "--levels", "1"});
  CHECK(again.code == 0);
}
