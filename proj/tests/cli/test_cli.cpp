#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "dtop/io.hpp"
#include "json.hpp"

using namespace dtop;
using Json = nlohmann::ordered_json;

namespace {

const std::string kData = DTOP_CLI_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run dtop_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  for (auto& a : args)
    if (a.size() > 5 && a.ends_with(".txt") && a.find('/') == std::string::npos) a = kData + "/" + a;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  auto r = dtop_run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dtop_cli_" + name);
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("components under T on [0,1]^2") {
  auto j = json_of({"components", "square.txt", "--adj", "T(c1,c1)"});
  CHECK(j["answer"] == 2);
  CHECK(j["components"] == Json::array({"{(0,0),(1,1)}", "{(0,1),(1,0)}"}));
  CHECK(json_of({"components", "square.txt", "--adj", "NP1(c1,c1)"})["answer"] == 1);
}

TEST_CASE("adjacent takes flat coordinates after --") {
  CHECK(json_of({"adjacent", "--adj", "L(c1,c1)", "--", "0", "0", "1", "2"})["answer"] == true);
  CHECK(json_of({"adjacent", "--adj", "T(c1,c1)", "--", "0", "0", "1", "2"})["answer"] == false);
  CHECK(json_of({"adjacent", "--adj", "c1", "--", "-1", "0"})["answer"] == true);
  CHECK(dtop_run({"adjacent", "--adj", "c1", "--", "0", "1", "2"}).code == 2);
  CHECK(dtop_run({"adjacent", "--", "0", "1"}).code == 2);
  auto bad = dtop_run({"adjacent", "--adj", "Q(c1)", "--", "0", "1"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("--adj") != std::string::npos);
}

TEST_CASE("dominates reports both directions") {
  auto j = json_of({"dominates", "cube6.txt", "--adj", "NP2(c1,c1,c1,c1,c1,c1)", "--other",
                    "T(c1,c1,c1,c1,c1,c1)"});
  CHECK(j["answer"] == false);
  CHECK(j["converse"] == false);
  CHECK_FALSE(j["counterexample"].is_null());
  CHECK_FALSE(j["converse_counterexample"].is_null());
  auto k = json_of({"dominates", "square.txt", "--adj", "c2", "--other", "c1"});
  CHECK(k["answer"] == false);
  CHECK(k["converse"] == true);
}

TEST_CASE("check-afpp on [0,1]^2") {
  auto x = json_of({"check-afpp", "square.txt", "--adj", "X(c1,c1)"});
  CHECK(x["answer"] == false);
  CHECK(x["witness"] == "(0,0)->(1,1); (0,1)->(1,0); (1,0)->(0,1); (1,1)->(0,0)");
  CHECK(json_of({"check-afpp", "interval01.txt"})["answer"] == true);
  auto b = dtop_run({"--budget", "0", "check-afpp", "square.txt", "--adj", "X(c1,c1)"});
  CHECK(b.code == 0);
  CHECK(b.out.find("answer: budget_exceeded") != std::string::npos);
}

TEST_CASE("product output reloads identically") {
  for (const char* kind : {"NP1", "NP2", "T", "X", "L"}) {
    auto path = temp_file(std::string("product_") + kind + ".txt");
    auto j = json_of({"product", "interval01.txt", "pair02.txt", "--kind", kind, "-o", path.string()});
    auto a = io::read_image(kData + "/interval01.txt").graph(), b = io::read_image(kData + "/pair02.txt").graph();
    ProductKind pk = std::string(kind) == "T"   ? ProductKind::tensor()
                     : std::string(kind) == "X" ? ProductKind::cartesian()
                     : std::string(kind) == "L" ? ProductKind::lex()
                                                : ProductKind::np(kind[2] - '0');
    ProductSpace want({a, b}, pk);
    auto back = io::read_image(path).graph();
    CHECK(back == want.graph());
    CHECK(back.edge_count() == want.graph().edge_count());
    CHECK(j["answer"] == 4);
    std::filesystem::remove(path);
  }
  CHECK(dtop_run({"product", "interval01.txt", "pair02.txt", "--kind", "Z"}).code == 2);
}

TEST_CASE("export-dot: one node per point, one edge per adjacent pair") {
  for (const char* adj : {"c1", "c2", "T(c1,c1)", "L(c1,c1)"}) {
    auto g = io::read_image(kData + "/square.txt").graph(parse_adjacency(adj));
    auto r = dtop_run({"export-dot", "square.txt", "--adj", adj});
    REQUIRE(r.code == 0);
    CHECK(count(r.out, "[label=") == g.size());
    CHECK(count(r.out, " -- ") == g.edge_count());
    CHECK(r.out.find("(1,1)") != std::string::npos);
    CHECK(r.out.find("pos=") == std::string::npos);
  }
}

TEST_CASE("map checks") {
  CHECK(json_of({"check-continuity", "flip.txt"})["answer"] == true);
  CHECK(json_of({"check-iso", "flip.txt"})["answer"] == true);
  auto lex = json_of({"check-iso", "lex_ab.txt", "lex_ba.txt"});
  CHECK(lex["answer"] == false);
  CHECK(lex["bijections_tried"] == 24);
  auto shy = json_of({"check-shy", "collapse02.txt"});
  CHECK(shy["answer"] == false);
  CHECK(shy["equivalent_conditions"]["agree"] == true);
  CHECK(json_of({"check-shy", "id01.txt"})["answer"] == true);
  auto h = json_of({"check-homotopic", "id01.txt", "const01.txt", "--pointed", "0"});
  CHECK(h["answer"] == true);
  CHECK(h["length"] == 1);
  CHECK(json_of({"check-retraction", "square.txt", "origin.txt", "--adj", "c1"})["answer"] == true);
}

TEST_CASE("multimap checks") {
  auto w = json_of({"check-multimap", "weak_not_strong.txt", "--r-max", "3"});
  CHECK(w["weak"]["ok"] == true);
  CHECK(w["strong"]["ok"] == false);
  CHECK(w["continuous"]["answer"] == true);
  auto d = json_of({"check-multimap", "disconnected_value.txt"});
  CHECK(d["connectivity_preserving"]["failure"] == "point_image_disconnected");
  CHECK(d["continuous"]["answer"] == "no generator for r <= 2");
}

TEST_CASE("subdivide has r^n |X| points") {
  for (int r = 1; r <= 4; ++r) {
    CHECK(json_of({"subdivide", "interval01.txt", "-r", std::to_string(r)})["answer"] == 2 * r);
    CHECK(json_of({"subdivide", "square.txt", "--adj", "c2", "-r", std::to_string(r)})["answer"] == 4 * r * r);
  }
  CHECK(dtop_run({"subdivide", "interval01.txt", "-r", "0"}).code == 2);
}

TEST_CASE("text and json carry the same fields") {
  const std::vector<std::vector<std::string>> cmds{
      {"components", "square.txt", "--adj", "T(c1,c1)"},
      {"check-afpp", "square.txt", "--adj", "X(c1,c1)"},
      {"check-shy", "collapse02.txt"},
      {"check-multimap", "weak_not_strong.txt"},
      {"dominates", "square.txt", "--adj", "c2", "--other", "c1"}};
  for (const auto& c : cmds) {
    auto j = json_of(c);
    auto text = dtop_run(c).out;
    for (const auto& [key, v] : j.items()) {
      CHECK_MESSAGE(text.find(key + ":") != std::string::npos, key);
      if (v.is_string()) CHECK(text.find(v.get<std::string>()) != std::string::npos);
      if (v.is_boolean() || v.is_number()) CHECK(text.find(key + ": " + v.dump()) != std::string::npos);
      if (v.is_object())
        for (const auto& [k2, v2] : v.items()) CHECK(text.find(k2 + ":") != std::string::npos);
    }
  }
}

TEST_CASE("errors and exit codes") {
  auto parse = dtop_run({"components", "bad.txt", "--adj", "c1"});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("bad.txt:3:") != std::string::npos);
  CHECK(dtop_run({"components", "missing.txt"}).code == 1);
  CHECK(dtop_run({}).code == 2);
  CHECK(dtop_run({"frobnicate"}).code == 2);
  CHECK(dtop_run({"--format", "xml", "components", "square.txt"}).code == 2);
  CHECK(dtop_run({"verify", "Thm-0.0"}).code == 2);
  CHECK(dtop_run({"verify"}).code == 2);
  CHECK(dtop_run({"--help"}).code == 0);
}

TEST_CASE("verify") {
  auto a = dtop_run({"verify", "Thm-5.3", "Ex-4.3", "--seed", "7", "--format", "json"});
  auto b = dtop_run({"verify", "Thm-5.3", "Ex-4.3", "--seed", "7", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count(a.out, "\"outcome\":\"pass\"") == 2);
  auto budget = dtop_run({"--budget", "0", "verify", "Ex-4.3"});
  CHECK(budget.out.find("budget_exceeded") != std::string::npos);
  CHECK(budget.code == 0);
  auto open = json_of({"verify", "--open", "cartesian-AFPP-factor", "--intervals", "--max-points", "3"});
  CHECK(open["outcome"] == "no_counterexample_found");
  CHECK(dtop_run({"verify", "--list"}).out.find("Thm-9.NPv") != std::string::npos);
}
