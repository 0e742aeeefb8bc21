#include <random>

#include "doctest.h"
#include "dtop/graph.hpp"

using namespace dtop;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// neighbours of the origin under c_u in Z^n: choose k moving coordinates, 2 signs each
std::uint64_t cu_count(std::uint64_t n, std::uint64_t u) {
  std::uint64_t s = 0;
  for (std::uint64_t k = 1; k <= u; ++k) s += binom(n, k) << k;
  return s;
}

std::vector<Point> msc8() {
  return {Point{0, 0}, Point{1, 1}, Point{1, 2}, Point{0, 3}, Point{-1, 2}, Point{-1, 1}};
}

}  // namespace

// ---------------------------------------------------------------- points and images

TEST_CASE("points compare coordinatewise") {
  CHECK(Point{1, 2} == Point{1, 2});
  CHECK(Point{1, 2} < Point{1, 3});
  CHECK(Point{1, 2}.str() == "(1,2)");
  CHECK_THROWS_AS(Point(std::vector<Coord>{}), DimensionError);
}

TEST_CASE("images reject empty, duplicate and mixed input") {
  CHECK_THROWS_AS(DigitalImage({}), DomainError);
  CHECK_THROWS_AS(DigitalImage({Point{0}, Point{0}}), DomainError);
  CHECK_THROWS_AS(DigitalImage({Point{0}, Point{0, 1}}), DimensionError);
  DigitalImage img({Point{2}, Point{0}, Point{1}});
  CHECK(img[0] == Point{0});
  CHECK(img.index_of(Point{2}) == 2u);
  CHECK_FALSE(img.contains(Point{5}));
  CHECK(interval(0, 3).size() == 4);
  CHECK(IntegerInterval{-1, 1}.image().size() == 3);
  CHECK_THROWS(interval(2, 1));
  CHECK(cube(3, -1, 1).size() == 27);
}

// ---------------------------------------------------------------- c_u

TEST_CASE("c_u fixtures") {
  CHECK(cu_adjacent(1, Point{0, 0}, Point{0, 1}));
  CHECK_FALSE(cu_adjacent(1, Point{0, 0}, Point{1, 1}));
  CHECK(cu_adjacent(2, Point{0, 0}, Point{1, 1}));
  CHECK_FALSE(cu_adjacent(2, Point{0, 0}, Point{0, 2}));
  CHECK_FALSE(cu_adjacent(1, Point{3}, Point{3}));
  CHECK_THROWS_AS(cu_adjacent(1, Point{0}, Point{0, 0}), DimensionError);
  CHECK_THROWS_AS(cu_adjacent(3, Point{0, 0}, Point{1, 1}), DomainError);
  CHECK_THROWS_AS(cu_adjacent(0, Point{0}, Point{1}), DomainError);
}

TEST_CASE("c_u neighbourhood sizes at the origin") {
  CHECK(cu_count(1, 1) == 2);
  CHECK(cu_count(2, 1) == 4);
  CHECK(cu_count(2, 2) == 8);
  CHECK(cu_count(3, 1) == 6);
  CHECK(cu_count(3, 2) == 18);
  CHECK(cu_count(3, 3) == 26);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto window = cube(n, -1, 1);
    Point origin(std::vector<Coord>(n, 0));
    for (int u = 1; u <= static_cast<int>(n); ++u) {
      auto adj = AdjacencyOracle::cu(u, n);
      CHECK(neighborhood(adj, window, origin, false).size() == cu_count(n, u));
      CHECK(neighborhood(adj, window, origin, true).size() == cu_count(n, u) + 1);
    }
  }
}

TEST_CASE("c_u is symmetric, irreflexive and monotone in u") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 1 + trial % 4;
    std::vector<Coord> a(n), b(n);
    for (auto& x : a) x = c(rng);
    for (auto& x : b) x = c(rng);
    Point p(a), q(b);
    for (int u = 1; u <= static_cast<int>(n); ++u) {
      CHECK(cu_adjacent(u, p, q) == cu_adjacent(u, q, p));
      CHECK_FALSE(cu_adjacent(u, p, p));
      if (u > 1 && cu_adjacent(u - 1, p, q)) CHECK(cu_adjacent(u, p, q));
    }
  }
}

// ---------------------------------------------------------------- neighbourhoods

TEST_CASE("neighbourhood fixtures") {
  auto c1 = AdjacencyOracle::cu(1, 1);
  CHECK(neighborhood(c1, interval(0, 2), Point{1}, false) == std::vector<Point>{Point{0}, Point{2}});
  CHECK_THROWS_AS(neighborhood(c1, interval(0, 2), Point{7}, false), DomainError);
  CHECK(neighborhood(AdjacencyOracle::cu(2, 2), cube(2, -1, 1), Point{0, 0}, true).size() == 9);
}

TEST_CASE("MSC_8 x [0,1] under T(c2,c1): neighbours flip the level") {
  auto pts = msc8();
  std::vector<DigitalImage> f{DigitalImage(pts), interval(0, 1)};
  auto prod = product_image(f);
  CHECK(prod.size() == 12);
  auto adj = AdjacencyOracle::bind(parse_adjacency("T(c2,c1)"), 3);
  for (int i = 0; i < 6; ++i)
    for (Coord t = 0; t <= 1; ++t) {
      Point x{pts[i][0], pts[i][1], t};
      auto a = pts[(i + 5) % 6], b = pts[(i + 1) % 6];
      std::vector<Point> want{Point{a[0], a[1], 1 - t}, Point{b[0], b[1], 1 - t}};
      std::sort(want.begin(), want.end());
      CHECK(neighborhood(adj, prod, x, false) == want);
    }
}

// ---------------------------------------------------------------- components and paths

TEST_CASE("components fixtures") {
  auto sq = cube(2, 0, 1);
  auto t = AdjacencyOracle::bind(parse_adjacency("T(c1,c1)"), 2);
  auto blocks = components(sq, t);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<Point>{Point{0, 0}, Point{1, 1}});
  CHECK(blocks[1] == std::vector<Point>{Point{0, 1}, Point{1, 0}});

  auto l = AdjacencyOracle::bind(parse_adjacency("L(c1,c1)"), 2);
  DigitalImage x({Point{0, 0}, Point{0, 2}, Point{1, 0}, Point{1, 2}});
  DigitalImage y({Point{0, 0}, Point{0, 1}, Point{2, 0}, Point{2, 1}});
  CHECK(components(x, l).size() == 1);
  CHECK(components(y, l).size() > 1);
  CHECK(components(DigitalImage({Point{4}}), AdjacencyOracle::cu(1, 1)).size() == 1);
}

TEST_CASE("sets_adjacent fixtures") {
  auto c1 = AdjacencyOracle::cu(1, 1);
  std::vector<Point> a{Point{0}}, b{Point{0}, Point{5}}, c{Point{2}};
  CHECK(sets_adjacent(a, b, c1));
  CHECK_FALSE(sets_adjacent(a, c, c1));
  std::vector<Point> p{Point{0, 0}}, q{Point{1, 2}};
  CHECK(sets_adjacent(p, q, AdjacencyOracle::bind(parse_adjacency("L(c1,c1)"), 2)));
  CHECK_THROWS(sets_adjacent(std::span<const Point>{}, b, c1));
}

TEST_CASE("find_path fixtures") {
  auto c1 = AdjacencyOracle::cu(1, 1);
  auto p = find_path(interval(0, 3), c1, Point{2}, Point{2});
  REQUIRE(p);
  CHECK(p->size() == 1);
  auto q = find_path(interval(0, 3), c1, Point{0}, Point{3});
  REQUIRE(q);
  CHECK(q->size() == 4);

  auto l = AdjacencyOracle::bind(parse_adjacency("L(c1,c1)"), 2);
  DigitalImage y({Point{0, 0}, Point{0, 1}, Point{2, 0}, Point{2, 1}});
  CHECK_FALSE(find_path(y, l, Point{0, 0}, Point{2, 0}));
  CHECK_THROWS(find_path(y, l, Point{0, 0}, Point{9, 9}));

  // the six-point listing of X x [0,1], X = {(0,0),(1,0),(1,1)} under T(c2,c1)
  DigitalImage x3({Point{0, 0}, Point{1, 0}, Point{1, 1}});
  std::vector<DigitalImage> f{x3, interval(0, 1)};
  ImageGraph g(product_image(f), parse_adjacency("T(c2,c1)"));
  std::vector<Point> listing{Point{0, 0, 0}, Point{1, 0, 1}, Point{1, 1, 0},
                             Point{0, 0, 1}, Point{1, 0, 0}, Point{1, 1, 1}};
  for (std::size_t i = 0; i + 1 < listing.size(); ++i)
    CHECK(g.adjacency().adjacent(listing[i], listing[i + 1]));
  CHECK(is_connected(g));

  // MSC_8 x [0,1] splits into two six-cycles; each is traversed by a path through all its points
  auto pts = msc8();
  std::vector<DigitalImage> m{DigitalImage(pts), interval(0, 1)};
  ImageGraph mg(product_image(m), parse_adjacency("T(c2,c1)"));
  auto blocks = component_indices(mg);
  REQUIRE(blocks.size() == 2);
  for (const auto& b : blocks) {
    CHECK(b.size() == 6);
    for (auto v : b) CHECK(mg.neighbors(v).size() == 2);
  }
}

TEST_CASE("components agree with path existence") {
  std::mt19937 rng(3);
  auto window = cube(2, 0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Point> pts;
    for (const auto& p : window.points())
      if (rng() % 2) pts.push_back(p);
    if (pts.empty()) continue;
    ImageGraph g(DigitalImage(pts), AdjacencyOracle::cu(1 + trial % 2, 2));
    auto blocks = component_indices(g);
    std::vector<int> block_of(g.size());
    std::size_t total = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      total += blocks[b].size();
      for (auto v : blocks[b]) block_of[v] = static_cast<int>(b);
    }
    CHECK(total == g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        CHECK((block_of[i] == block_of[j]) == find_path(g, g.point(i), g.point(j)).has_value());
  }
}

TEST_CASE("union of pairwise adjacent connected sets is connected") {
  std::mt19937 rng(5);
  ImageGraph g(cube(2, 0, 3), AdjacencyOracle::cu(1, 2));
  int tested = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto grow = [&]() {
      IndexSet s{static_cast<Index>(rng() % g.size())};
      std::size_t want = 1 + rng() % 5;
      while (s.size() < want) {
        Index v = s[rng() % s.size()];
        auto nb = g.neighbors(v);
        Index w = nb[rng() % nb.size()];
        if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(w);
      }
      return s;
    };
    IndexSet a = grow(), b = grow();
    REQUIRE(is_connected_subset(g, a));
    if (!sets_adjacent(g, a, b)) continue;
    ++tested;
    IndexSet u = a;
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    CHECK(is_connected_subset(g, u));
  }
  CHECK(tested > 10);
}
