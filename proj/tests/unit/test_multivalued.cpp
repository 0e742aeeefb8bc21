#include <random>

#include "doctest.h"
#include "dtop/fixtures.hpp"
#include "dtop/multivalued.hpp"

using namespace dtop;
using fixtures::graph;

namespace {

constexpr std::uint64_t kBig = 10'000'000;

MultiMap mm(const ImageGraph& d, const ImageGraph& c,
            const std::vector<std::pair<Point, std::vector<Point>>>& v) {
  return MultiMap::from_points(d, c, v);
}

// Random multimap with value sets of size 1..max_size.
MultiMap random_multimap(const ImageGraph& d, const ImageGraph& c, std::mt19937_64& rng,
                         std::size_t max_size) {
  std::vector<IndexSet> t(d.size());
  for (auto& s : t) {
    std::size_t k = 1 + rng() % std::min(max_size, c.size());
    while (s.size() < k) {
      Index v = static_cast<Index>(rng() % c.size());
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
  }
  return MultiMap(d, c, std::move(t));
}

bool has_cut_vertex(const ImageGraph& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    IndexSet rest;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) rest.push_back(static_cast<Index>(j));
    if (!is_connected_subset(g, rest)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("weak and strong continuity fixtures on intervals") {
  auto d = fixtures::interval_graph(0, 1), c = fixtures::interval_graph(0, 2);
  auto f = mm(d, c, {{Point{0}, {Point{0}, Point{2}}}, {Point{1}, {Point{1}}}});
  CHECK(has_weak_continuity(f));
  CHECK(has_strong_continuity(f));
  auto cp = is_connectivity_preserving(f);
  CHECK_FALSE(cp.preserving);
  CHECK(cp.failure == ConnectivityReport::Failure::point_image_disconnected);
  CHECK(*cp.x == Point{0});

  auto g = mm(d, c, {{Point{0}, {Point{0}, Point{1}}}, {Point{1}, {Point{2}}}});
  CHECK(has_weak_continuity(g));
  auto s = has_strong_continuity(g);
  CHECK_FALSE(s.ok);
  CHECK(s.violation->first == Point{0});
  auto r = is_continuous_multimap(g, 3, kBig);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.r == 2);
  CHECK(induced_multimap(*r.generator, *r.subdivision) == g);
  CHECK(is_continuous(*r.generator));
}

TEST_CASE("single-valued maps as multimaps") {
  auto x = graph(cube(2, 0, 1), "c2");
  auto f = DigitalMap::from_function(x, x, [](const Point& p) { return Point{p[1], p[0]}; });
  auto m = MultiMap::from_map(f);
  CHECK(has_weak_continuity(m));
  CHECK(has_strong_continuity(m));
  CHECK(is_connectivity_preserving(m));
  auto r = is_continuous_multimap(m, 2, kBig);
  REQUIRE(r.found());
  CHECK(r.r == 1);
}

TEST_CASE("lexicographic products lose weak and strong continuity") {
  auto i01 = fixtures::interval_graph(0, 1), e02 = fixtures::points_c1({0, 2});
  auto f1 = mm(i01, i01, {{Point{0}, {Point{0}}}, {Point{1}, {Point{0}}}});
  auto f2 = MultiMap::from_map(DigitalMap::identity(e02));
  CHECK(has_weak_continuity(f1));
  CHECK(has_strong_continuity(f2));
  std::vector<MultiMap> fs{f1, f2};
  auto p = product_multimap(fs, ProductKind::lex());
  auto w = has_weak_continuity(p);
  CHECK_FALSE(w.ok);
  CHECK_FALSE(has_strong_continuity(p));

  // and a product can gain continuity its factor lacks
  auto g1 = mm(i01, i01, {{Point{0}, {Point{0}, Point{1}}}, {Point{1}, {Point{0}, Point{1}}}});
  auto g2 = mm(i01, e02, {{Point{0}, {Point{0}}}, {Point{1}, {Point{2}}}});
  CHECK_FALSE(has_weak_continuity(g2));
  CHECK_FALSE(has_strong_continuity(g2));
  std::vector<MultiMap> gs{g1, g2};
  auto q = product_multimap(gs, ProductKind::lex());
  CHECK(has_weak_continuity(q));
  CHECK(has_strong_continuity(q));
  CHECK(q.values(Point{0, 0}) == std::vector<Point>{Point{0, 0}, Point{1, 0}});
}

TEST_CASE("connectivity preservation on singleton domains") {
  auto pt = fixtures::points_c1({0});
  auto i01 = fixtures::interval_graph(0, 1), e02 = fixtures::points_c1({0, 2});
  auto f1 = mm(pt, i01, {{Point{0}, {Point{0}, Point{1}}}});
  auto f2 = mm(pt, e02, {{Point{0}, {Point{0}, Point{2}}}});
  CHECK(is_connectivity_preserving(f1));
  CHECK_FALSE(is_connectivity_preserving(f2));
  std::vector<MultiMap> lex{f1, f2};
  CHECK(is_connectivity_preserving(product_multimap(lex, ProductKind::lex())));
  std::vector<MultiMap> sq{f1, f1};
  CHECK_FALSE(is_connectivity_preserving(product_multimap(sq, ProductKind::tensor())));
  CHECK(is_connectivity_preserving(product_multimap(sq, ProductKind::cartesian())));
}

TEST_CASE("tensor product of strongly continuous factors") {
  auto i01 = fixtures::interval_graph(0, 1);
  auto f1 = mm(i01, i01, {{Point{0}, {Point{0}}}, {Point{1}, {Point{0}}}});
  auto f2 = MultiMap::from_map(DigitalMap::identity(i01));
  std::vector<MultiMap> fs{f1, f2};
  auto p = product_multimap(fs, ProductKind::tensor());
  CHECK_FALSE(has_weak_continuity(p));
  CHECK_FALSE(has_strong_continuity(p));
  CHECK(has_strong_continuity(product_multimap(fs, ProductKind::np(2))));
}

TEST_CASE("subdivisions") {
  auto x = graph(fixtures::corner3(), "c2");
  auto s1 = subdivide(x, 1);
  CHECK(s1.graph().image() == x.image());
  for (std::size_t i = 0; i < s1.graph().size(); ++i) CHECK(s1.project(i) == i);
  CHECK_THROWS_AS(subdivide(x, 0), DomainError);

  auto s = subdivide(x, 3);
  CHECK(s.graph().size() == 27);
  CHECK(s.scaled(0) == "(0/3,0/3)");
  for (std::size_t b = 0; b < x.size(); ++b) CHECK(s.fiber(b).size() == 9);

  auto diag = subdivide(graph(fixtures::diagonal_pair(), "c2"), 2);
  auto axis = subdivide(graph(fixtures::axis_pair(), "c2"), 2);
  CHECK(diag.graph().size() == 8);
  CHECK(axis.graph().size() == 8);
  CHECK(is_connected(diag.graph()));
  CHECK(has_cut_vertex(diag.graph()));
  CHECK_FALSE(has_cut_vertex(axis.graph()));
  CHECK_FALSE(find_isomorphism(diag.graph(), axis.graph()));

  // negative coordinates floor correctly
  auto neg = subdivide(fixtures::points_c1({-2, -1}), 3);
  CHECK(neg.graph().point(0) == Point{-6});
  CHECK(neg.graph().point(neg.project(0)) == Point{-6});
  CHECK(neg.base().point(neg.project(3)) == Point{-1});
}

TEST_CASE("subdivision cardinality") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 3;
    std::vector<Point> pts;
    for (int k = 0; k < 1 + int(rng() % 5); ++k) {
      std::vector<Coord> c(n);
      for (auto& v : c) v = Coord(rng() % 7) - 3;
      pts.emplace_back(c);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    ImageGraph x(DigitalImage(pts), AdjacencyOracle::cu(1 + rng() % n, n));
    for (int r = 1; r <= 4; ++r) {
      auto s = subdivide(x, r);
      std::size_t expect = pts.size();
      for (std::size_t k = 0; k < n; ++k) expect *= r;
      CHECK(s.graph().size() == expect);
      std::vector<char> hit(x.size(), 0);
      for (auto e : s.projection()) hit[e] = 1;
      CHECK(std::count(hit.begin(), hit.end(), 1) == int(x.size()));
    }
  }
}

TEST_CASE("one point onto an interval needs r = 2") {
  auto pt = fixtures::points_c1({0});
  auto i01 = fixtures::interval_graph(0, 1);
  auto f = mm(pt, i01, {{Point{0}, {Point{0}, Point{1}}}});
  auto r = is_continuous_multimap(f, 4, kBig);
  REQUIRE(r.found());
  CHECK(r.r == 2);
}

TEST_CASE("star: connectivity preserving with no generator below r = 5") {
  // K_{1,3} as the c1 plus-shape without its right arm.
  auto star = graph(DigitalImage({Point{0, 1}, Point{1, 0}, Point{1, 1}, Point{1, 2}}), "c1");
  auto x = fixtures::interval_graph(0, 1);
  std::vector<IndexSet> t{{0, 1, 2, 3}, {2}};
  MultiMap f(x, star, t);
  CHECK(is_connectivity_preserving(f));
  auto r = is_continuous_multimap(f, 4, kBig);
  CHECK(r.status == SearchStatus::absent);
  CHECK(r.r == 4);
  r = is_continuous_multimap(f, 6, kBig);
  REQUIRE(r.found());
  CHECK(r.r == 5);
  CHECK(induced_multimap(*r.generator, *r.subdivision) == f);
  CHECK(is_continuous_multimap(f, 6, 10).status == SearchStatus::budget_exceeded);
}

TEST_CASE("continuous multimaps are connectivity preserving") {
  std::mt19937_64 rng(11);
  std::vector<ImageGraph> doms{fixtures::interval_graph(0, 1), fixtures::points_c1({0, 2}),
                               graph(fixtures::corner2(), "c1")};
  std::vector<ImageGraph> cods{fixtures::interval_graph(0, 2), graph(fixtures::corner3(), "c1"),
                               graph(cube(2, 0, 1), "c2")};
  int found = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto& d = doms[rng() % doms.size()];
    const auto& c = cods[rng() % cods.size()];
    auto f = random_multimap(d, c, rng, 3);
    auto r = is_continuous_multimap(f, 3, kBig);
    REQUIRE(r.status != SearchStatus::budget_exceeded);
    if (r.found()) {
      ++found;
      CHECK(is_connectivity_preserving(f));
      CHECK(is_continuous(*r.generator));
    }
    // Prop 2.27 and Prop 2.30
    bool fibers = true;
    for (const auto& s : f.table()) fibers = fibers && is_connected_subset(c, s);
    CHECK(is_connectivity_preserving(f).preserving == (has_weak_continuity(f).ok && fibers));
    if (has_strong_continuity(f) && fibers) CHECK(is_connectivity_preserving(f));
  }
  CHECK(found > 10);
}

TEST_CASE("refined generators induce the same multimap") {
  auto d = graph(fixtures::corner3(), "c2");
  auto c = graph(cube(2, 0, 1), "c2");
  std::mt19937_64 rng(3);
  int tested = 0;
  for (int trial = 0; trial < 80 && tested < 15; ++trial) {
    auto f = random_multimap(d, c, rng, 3);
    auto r = is_continuous_multimap(f, 2, kBig);
    if (!r.found()) continue;
    ++tested;
    for (int s = 2; s <= 3; ++s) {
      auto finer = subdivide(d, r.r * s);
      auto g = refine_generator(*r.generator, *r.subdivision, finer);
      CHECK(is_continuous(g));
      CHECK(induced_multimap(g, finer) == f);
    }
  }
  CHECK(tested > 0);

  // Refinement is not safe for the tensor product.
  auto sq = graph(cube(2, 0, 1), "T(c1,c1)");
  auto s1 = subdivide(sq, 1);
  auto id = DigitalMap(s1.graph(), sq, std::vector<Index>{0, 1, 2, 3});
  REQUIRE(is_continuous(id));
  auto s2 = subdivide(sq, 2);
  CHECK_FALSE(is_continuous(refine_generator(id, s1, s2)));
}

TEST_CASE("subdivision continuity rejects T, L and mixed products") {
  auto i01 = fixtures::interval_graph(0, 1);
  for (auto spec : {"T(c1,c1)", "L(c1,c1)", "X(c1,T(c1,c1))"}) {
    auto x = graph(spec == std::string("X(c1,T(c1,c1))") ? cube(3, 0, 1) : cube(2, 0, 1), spec);
    auto f = MultiMap::from_map(DigitalMap::identity(x));
    CHECK_THROWS_AS(is_continuous_multimap(f, 1, kBig), DomainError);
  }
  auto np = graph(cube(2, 0, 1), "NP2(c1,c1)");
  CHECK(is_continuous_multimap(MultiMap::from_map(DigitalMap::identity(np)), 1, kBig).found());
}

TEST_CASE("multivalued retractions") {
  auto x = fixtures::interval_graph(0, 2);
  auto a = interval(0, 1);
  auto r = mm(x, x, {{Point{0}, {Point{0}}}, {Point{1}, {Point{1}}}, {Point{2}, {Point{1}}}});
  auto rep = is_multivalued_retraction(r, a, 2, kBig);
  CHECK(rep.verdict == Verdict::yes);
  REQUIRE(rep.search);
  CHECK(rep.search->r == 1);

  auto spread = mm(x, x, {{Point{0}, {Point{0}}}, {Point{1}, {Point{0}, Point{1}}},
                          {Point{2}, {Point{1}}}});
  CHECK(is_multivalued_retraction(spread, a, 2, kBig).verdict == Verdict::no);

  auto multi = mm(x, x, {{Point{0}, {Point{0}}}, {Point{1}, {Point{1}}},
                         {Point{2}, {Point{0}, Point{1}}}});
  CHECK(is_multivalued_retraction(multi, a, 3, kBig).verdict == Verdict::yes);
  CHECK_THROWS_AS(is_multivalued_retraction(r, interval(0, 3), 1, kBig), DomainError);

  // products under the Cartesian adjacency
  std::vector<MultiMap> fs{multi, r};
  auto p = product_multimap(fs, ProductKind::cartesian());
  auto pa = product_image(std::vector<DigitalImage>{a, a});
  CHECK(is_multivalued_retraction(p, pa, 3, kBig).verdict == Verdict::yes);
}

TEST_CASE("inverse multimaps and shy maps") {
  auto x = fixtures::interval_graph(0, 3);
  auto id = DigitalMap::identity(x);
  auto e = shy_equivalences(id);
  CHECK(e.shy);
  CHECK(e.agree());

  auto pair = fixtures::points_c1({0, 2});
  auto pt = fixtures::points_c1({0});
  auto f2 = DigitalMap::constant(pair, pt, Point{0});
  e = shy_equivalences(f2);
  CHECK_FALSE(e.shy);
  CHECK_FALSE(e.preimages_of_connected_sets_connected);
  CHECK_FALSE(e.inverse_connectivity_preserving);
  CHECK_FALSE(e.inverse_weak_with_connected_fibers);

  auto inv = inverse_multimap(f2);
  CHECK(inv.values(Point{0}) == std::vector<Point>{Point{0}, Point{2}});
  CHECK_THROWS_AS(inverse_multimap(DigitalMap::constant(x, x, Point{0})), DomainError);

  // every continuous surjection [0,3] -> [0,2]
  auto y = fixtures::interval_graph(0, 2);
  int n = 0;
  for_each_map(x.size(), y.size(), [&](std::span<const Index> t) {
    DigitalMap f(x, y, std::vector<Index>(t.begin(), t.end()));
    if (!is_continuous(f) || !is_surjective(f)) return true;
    ++n;
    CHECK(shy_equivalences(f).agree());
    return true;
  });
  CHECK(n > 0);
}
