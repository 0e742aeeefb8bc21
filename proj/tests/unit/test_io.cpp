#include <filesystem>
#include <fstream>
#include <functional>

#include <unistd.h>

#include "doctest.h"
#include "dtop/fixtures.hpp"
#include "dtop/io.hpp"

using namespace dtop;
using fixtures::graph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dtop_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

std::size_t error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const io::FormatError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("image files parse with comments, adjacency and split") {
  auto f = io::parse_image("# square\ndim 2\nadj T(c1,c1)\n\n0 0\n1 1 # diag\n1 0\n0 1\n", "sq.txt");
  CHECK(f.image.size() == 4);
  REQUIRE(f.adj);
  auto g = f.graph();
  CHECK(components(g).size() == 2);
  CHECK(f.graph(parse_adjacency("c2")).edge_count() == 6);

  auto split = io::parse_image("dim 3\nadj X(c1,c1)\nsplit 2 1\n0 0 0\n", "s.txt");
  CHECK(split.graph().adjacency().leaf_dims() == std::vector<std::size_t>{2, 1});
}

TEST_CASE("image format round-trips through the pinned adjacency") {
  auto g = graph(fixtures::corner3(), "NP2(c1@1,c1@1)");
  auto text = io::format_image(g);
  auto back = io::parse_image(text, "rt.txt").graph();
  CHECK(back == g);
  CHECK(io::format_image(back) == text);

  auto bare = io::parse_image(io::format_image(g.image()), "bare.txt");
  CHECK_FALSE(bare.adj);
  CHECK_THROWS_AS(bare.graph(), Error);
}

TEST_CASE("image errors carry the offending line") {
  CHECK(error_line([] { io::parse_image("dim 2\n0 0\n0 x\n", "e"); }) == 3);
  CHECK(error_line([] { io::parse_image("dim 2\n0 0\n\n0 0 1\n", "e"); }) == 4);
  CHECK(error_line([] { io::parse_image("dim 2\n0 0\n# c\n0 0\n", "e"); }) == 4);
  CHECK(error_line([] { io::parse_image("\n\ndimension 2\n", "e"); }) == 3);
  CHECK(error_line([] { io::parse_image("dim 1\nadj L(c1\n0\n", "e"); }) == 2);
  CHECK(error_line([] { io::parse_image("", "e"); }) == 1);
  try {
    io::parse_image("dim 1\n0\nq\n", "bad.txt");
    FAIL("no throw");
  } catch (const io::FormatError& e) {
    CHECK(std::string(e.what()).rfind("bad.txt:3:", 0) == 0);
    CHECK(e.source() == "bad.txt");
  }
}

TEST_CASE("map files resolve images relative to the map and round-trip") {
  TempDir dir;
  dir.write("i.txt", "dim 1\nadj c1\n0\n1\n2\n");
  dir.write("j.txt", "dim 1\n0\n1\n");
  auto p = dir.write("f.map", "map\ndom i.txt\ncod j.txt\ncod_adj c1\n0 -> 0\n1->1\n2 -> 1\n");
  auto f = io::read_map(p);
  CHECK(f.table() == std::vector<Index>{0, 1, 1});
  CHECK(is_continuous(f));

  auto text = io::format_map(f, "i.txt", "j.txt");
  auto p2 = dir.write("g.map", text);
  CHECK(io::read_map(p2) == f);

  CHECK(error_line([&] { io::parse_map("map\ndom i.txt\ncod j.txt\n0 -> 0\n", "m", dir.path); }) == 3);
  CHECK(error_line([&] {
          io::parse_map("map\ndom i.txt\ncod j.txt\ncod_adj c1\n0 -> 0\n0 -> 1\n", "m", dir.path);
        }) == 6);
  CHECK(error_line([&] {
          io::parse_map("map\ndom i.txt\ncod j.txt\ncod_adj c1\n0 -> 5\n", "m", dir.path);
        }) == 5);
  CHECK(error_line([&] {
          io::parse_map("map\ndom i.txt\ncod j.txt\ncod_adj c1\n0 -> 0\n1 -> 0\n", "m", dir.path);
        }) == 6);
  CHECK(error_line([&] { io::parse_map("map\ndom nope.txt\n", "m", dir.path); }) == 2);
}

TEST_CASE("multimap files round-trip") {
  TempDir dir;
  dir.write("x.txt", "dim 1\nadj c1\n0\n1\n");
  dir.write("y.txt", "dim 1\nadj c1\n0\n1\n2\n");
  auto f = io::read_multimap(dir.write("f.mm", "multimap\ndom x.txt\ncod y.txt\n0 -> {0;2}\n1 -> { 1 }\n"));
  CHECK(f[0] == IndexSet{0, 2});
  CHECK(f[1] == IndexSet{1});
  auto back = io::read_multimap(dir.write("g.mm", io::format_multimap(f, "x.txt", "y.txt")));
  CHECK(back == f);
  CHECK(error_line([&] {
          io::parse_multimap("multimap\ndom x.txt\ncod y.txt\n0 -> {0;;2}\n1 -> {1}\n", "m", dir.path);
        }) == 4);
  CHECK(error_line([&] {
          io::parse_multimap("multimap\ndom x.txt\ncod y.txt\n0 -> 0\n", "m", dir.path);
        }) == 4);
}

TEST_CASE("homotopy witnesses round-trip") {
  auto x = fixtures::interval_graph(0, 1);
  auto f = DigitalMap::identity(x);
  auto g = DigitalMap::constant(x, x, Point{0});
  auto w = are_homotopic(f, g, std::nullopt, 1000);
  REQUIRE(w.found());
  auto text = io::format_homotopy(*w.witness);
  auto back = io::parse_homotopy(text, "h", x, x);
  CHECK(back.table() == w.witness->table());
  CHECK(is_homotopy(back));
  CHECK(error_line([&] { io::parse_homotopy("homotopy m=1\n0 0 -> 0\n", "h", x, x); }) == 2);
  CHECK(error_line([&] { io::parse_homotopy("homotopy m=0\n3 0 -> 0\n", "h", x, x); }) == 2);
}
