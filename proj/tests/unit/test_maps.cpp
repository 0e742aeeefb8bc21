#include <random>

#include "doctest.h"
#include "dtop/fixtures.hpp"
#include "dtop/maps.hpp"

using namespace dtop;
using fixtures::graph;

namespace {

DigitalMap fn(const ImageGraph& d, const ImageGraph& c, std::function<Point(const Point&)> f) {
  return DigitalMap::from_function(d, c, f);
}

}  // namespace

// ---------------------------------------------------------------- continuity

TEST_CASE("identity and constants are continuous") {
  auto sq = graph(cube(2, 0, 2), "L(c1,c1)");
  CHECK(is_continuous(DigitalMap::identity(sq)));
  CHECK(is_continuous(DigitalMap::constant(sq, sq, Point{1, 2})));
}

TEST_CASE("identity x constant under T is discontinuous at (0,0),(1,1)") {
  auto i01 = fixtures::interval_graph(0, 1);
  std::vector<DigitalMap> fs{DigitalMap::identity(i01), DigitalMap::constant(i01, i01, Point{0})};
  auto f = product_map(fs, ProductKind::tensor());
  auto c = is_continuous(f);
  CHECK_FALSE(c.continuous);
  REQUIRE(c.violation);
  CHECK(c.violation->first == Point{0, 0});
  CHECK(c.violation->second == Point{1, 1});
  CHECK(is_continuous(product_map(fs, ProductKind::cartesian())));
}

TEST_CASE("constant x identity under L is discontinuous at (0,0),(1,2)") {
  auto i01 = fixtures::interval_graph(0, 1), i02 = fixtures::interval_graph(0, 2);
  std::vector<DigitalMap> fs{DigitalMap::constant(i01, i02, Point{0}), DigitalMap::identity(i02)};
  auto c = is_continuous(product_map(fs, ProductKind::lex()));
  CHECK_FALSE(c.continuous);
  REQUIRE(c.violation);
  CHECK(c.violation->first == Point{0, 0});
  CHECK(c.violation->second == Point{1, 2});
}

TEST_CASE("local injectivity fixtures") {
  auto i02 = fixtures::interval_graph(0, 2);
  CHECK(is_locally_one_to_one(DigitalMap::identity(i02)));
  auto i01 = fixtures::interval_graph(0, 1);
  CHECK_FALSE(is_locally_one_to_one(DigitalMap::constant(i01, i01, Point{0})));
  auto two = fixtures::points_c1({0, 2});
  auto zero = fixtures::points_c1({0});
  CHECK(is_locally_one_to_one(DigitalMap::constant(two, zero, Point{0})));
  // a folding of [0,2] onto [0,1] is not locally injective at 1
  CHECK_FALSE(is_locally_one_to_one(
      fn(i02, i01, [](const Point& p) { return Point{p[0] == 2 ? 0 : p[0]}; })));
}

TEST_CASE("composition of continuous maps is continuous") {
  std::mt19937 rng(9);
  auto x = graph(cube(2, 0, 1), "c1"), y = fixtures::interval_graph(0, 2),
       z = graph(cube(2, 0, 1), "T(c1,c1)");
  int tested = 0;
  for (int trial = 0; trial < 3000 && tested < 200; ++trial) {
    std::vector<Index> a(x.size()), b(y.size());
    for (auto& v : a) v = rng() % y.size();
    for (auto& v : b) v = rng() % z.size();
    DigitalMap f(x, y, a), g(y, z, b);
    if (!is_continuous(f) || !is_continuous(g)) continue;
    ++tested;
    CHECK(is_continuous(compose(g, f)));
  }
  CHECK(tested >= 50);
  CHECK_THROWS(compose(DigitalMap::identity(x), DigitalMap::identity(y)));
}

// ---------------------------------------------------------------- products

TEST_CASE("projections and injections") {
  auto i02 = fixtures::interval_graph(0, 2);
  ProductSpace lex({i02, i02}, ProductKind::lex());
  CHECK(is_continuous(projection(lex, 0)));
  auto c = is_continuous(projection(lex, 1));
  CHECK_FALSE(c.continuous);
  CHECK(c.violation->first == Point{0, 0});
  CHECK(c.violation->second == Point{1, 2});

  ProductSpace t({i02, fixtures::graph(fixtures::corner3(), "c2")}, ProductKind::tensor());
  CHECK(is_continuous(projection(t, 0)));
  CHECK(is_continuous(projection(t, 1)));

  ProductSpace x({i02, i02}, ProductKind::cartesian());
  std::vector<Point> base{Point{1}, Point{2}};
  CHECK(is_continuous(injection(x, 0, base)));
  CHECK(is_continuous(injection(x, 1, base)));
  CHECK_FALSE(is_continuous(injection(t, 0, std::vector<Point>{Point{0}, Point{1, 0}})));
  CHECK_THROWS_AS(injection(x, 0, std::vector<Point>{Point{0}, Point{7}}), DomainError);
  CHECK_THROWS_AS(projection(x, 2), DomainError);
}

TEST_CASE("product of identities is the identity") {
  auto a = fixtures::interval_graph(0, 2), b = graph(fixtures::corner3(), "c2");
  for (auto k : {ProductKind::np(2), ProductKind::tensor(), ProductKind::cartesian(),
                 ProductKind::lex()}) {
    std::vector<DigitalMap> fs{DigitalMap::identity(a), DigitalMap::identity(b)};
    auto p = product_map(fs, k);
    CHECK(p == DigitalMap::identity(p.domain()));
  }
  CHECK_THROWS(product_map(std::vector<DigitalMap>{}, ProductKind::tensor()));
}

// ---------------------------------------------------------------- isomorphism

TEST_CASE("isomorphism fixtures") {
  auto sq = graph(cube(2, 0, 1), "c2");
  CHECK(is_isomorphism(DigitalMap::identity(sq)));

  auto l = parse_adjacency("L(c1,c1)");
  ImageGraph x(DigitalImage({Point{0, 0}, Point{0, 2}, Point{1, 0}, Point{1, 2}}), l);
  ImageGraph y(DigitalImage({Point{0, 0}, Point{0, 1}, Point{2, 0}, Point{2, 1}}), l);
  std::uint64_t tried = 0;
  CHECK_FALSE(find_isomorphism(x, y, &tried));
  CHECK(tried == 24);

  // factor order swapped in the codomain
  auto a = fixtures::interval_graph(0, 1);
  auto b = graph(fixtures::corner3(), "c2");
  ProductSpace ab({a, b}, ProductKind::tensor()), ba({b, a}, ProductKind::tensor());
  auto swap = fn(ab.graph(), ba.graph(),
                 [](const Point& p) { return Point{p[1], p[2], p[0]}; });
  CHECK(is_isomorphism(swap));
  auto folded = fn(a, a, [](const Point&) { return Point{0}; });
  CHECK(is_isomorphism(folded).reason == "not a bijection");
}

// ---------------------------------------------------------------- retraction

TEST_CASE("retraction fixtures") {
  auto lex = graph(box({{0, 1}, {0, 5}}), "L(c1,c1)");
  auto r = exists_retraction(lex, box({{0, 0}, {1, 4}}), 1u << 24);
  CHECK(r.status == SearchStatus::absent);

  std::vector<DigitalImage> f{fixtures::corner3(), interval(0, 1)};
  auto t = ImageGraph(product_image(f), AdjacencyOracle::bind(parse_adjacency("T(c2,c1)"), 3));
  std::vector<DigitalImage> a{fixtures::corner2(), interval(0, 0)};
  CHECK(exists_retraction(t, product_image(a), 1u << 24).status == SearchStatus::absent);

  auto sq = graph(cube(2, 0, 1), "c1");
  auto id = exists_retraction(sq, sq.image(), 100);
  REQUIRE(id.found());
  CHECK(*id.witness == DigitalMap::identity(sq));
  CHECK(is_retraction(*id.witness, sq.image()));

  auto i03 = fixtures::interval_graph(0, 3);
  auto end = exists_retraction(i03, DigitalImage({Point{0}, Point{1}}), 1000);
  REQUIRE(end.found());
  CHECK(is_retraction(*end.witness, DigitalImage({Point{0}, Point{1}})));
  CHECK(exists_retraction(i03, DigitalImage({Point{0}, Point{3}}), 1000).status ==
        SearchStatus::absent);
  CHECK(exists_retraction(lex, box({{0, 0}, {1, 4}}), 5).status ==
        SearchStatus::budget_exceeded);
  CHECK_THROWS_AS(exists_retraction(i03, DigitalImage({Point{9}}), 10), DomainError);
}

// ---------------------------------------------------------------- shy

TEST_CASE("shy fixtures") {
  auto two = fixtures::points_c1({0, 2});
  auto zero = fixtures::points_c1({0});
  auto i01 = fixtures::interval_graph(0, 1);

  auto f2 = DigitalMap::constant(two, zero, Point{0});
  auto s2 = is_shy(f2);
  CHECK_FALSE(s2.shy);
  CHECK(s2.failure == ShyFailure::fiber_disconnected);

  std::vector<DigitalMap> lexpair{DigitalMap::constant(i01, zero, Point{0}), f2};
  CHECK(is_shy(product_map(lexpair, ProductKind::lex())));

  std::vector<DigitalMap> tpair{DigitalMap::constant(i01, zero, Point{0}),
                                DigitalMap::identity(i01)};
  auto st = is_shy(product_map(tpair, ProductKind::tensor()));
  CHECK_FALSE(st.shy);
  CHECK(st.failure == ShyFailure::discontinuous);

  CHECK(is_shy(DigitalMap::identity(i01)));
  auto i02 = fixtures::interval_graph(0, 2);
  CHECK(is_shy(DigitalMap::constant(i01, i02, Point{0})).failure == ShyFailure::not_surjective);
}

// ---------------------------------------------------------------- AFPP

TEST_CASE("AFPP fixtures") {
  auto t = graph(cube(2, 0, 1), "T(c1,c1)");
  auto flip = fn(t, t, [](const Point& p) { return Point{1 - p[0], p[1]}; });
  CHECK(is_continuous(flip));
  CHECK_FALSE(approximate_fixed_point(flip));
  auto rt = has_afpp(t, 1000);
  CHECK(rt.verdict == Verdict::no);
  REQUIRE(rt.witness);
  CHECK(is_continuous(*rt.witness));
  CHECK_FALSE(approximate_fixed_point(*rt.witness));
  auto all = afpp_counterexamples(t, 1000);
  REQUIRE(all.witness);
  CHECK(std::find(all.witness->begin(), all.witness->end(), flip) != all.witness->end());

  auto x = graph(cube(2, 0, 1), "X(c1,c1)");
  auto anti = fn(x, x, [](const Point& p) { return Point{1 - p[0], 1 - p[1]}; });
  CHECK(is_continuous(anti));
  CHECK_FALSE(approximate_fixed_point(anti));
  auto rx = has_afpp(x, 1000);
  CHECK(rx.verdict == Verdict::no);
  CHECK(*rx.witness == anti);

  auto i01 = fixtures::interval_graph(0, 1);
  CHECK(has_afpp(i01, 1000).verdict == Verdict::yes);
  int maps = 0;
  for_each_map(2, 2, [&](std::span<const Index> tb) {
    ++maps;
    DigitalMap f(i01, i01, std::vector<Index>(tb.begin(), tb.end()));
    if (is_continuous(f)) CHECK(approximate_fixed_point(f));
    return true;
  });
  CHECK(maps == 4);
  CHECK_THROWS(approximate_fixed_point(DigitalMap::constant(i01, t, Point{0, 0})));
  CHECK(has_afpp(graph(cube(2, 0, 2), "c1"), 1).verdict == Verdict::budget_exceeded);
}

// ---------------------------------------------------------------- enumeration

TEST_CASE("pruned enumeration matches brute force") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point> a, b;
    auto window = cube(2, 0, 2);
    for (const auto& p : window.points()) {
      if (rng() % 3 == 0) a.push_back(p);
      if (rng() % 3 == 0) b.push_back(p);
    }
    if (a.empty() || b.empty() || a.size() > 5 || b.size() > 5) continue;
    ImageGraph x(DigitalImage(a), AdjacencyOracle::cu(1 + trial % 2, 2));
    ImageGraph y(DigitalImage(b), AdjacencyOracle::cu(2 - trial % 2, 2));
    std::vector<std::vector<Index>> brute, pruned;
    for_each_map(x.size(), y.size(), [&](std::span<const Index> t) {
      if (is_continuous_table(x, y, t)) brute.emplace_back(t.begin(), t.end());
      return true;
    });
    auto st = enumerate_continuous_maps(x, y, {}, {}, 1u << 30, [&](std::span<const Index> t) {
      pruned.emplace_back(t.begin(), t.end());
      return true;
    });
    CHECK(st == SearchStatus::absent);
    CHECK(brute == pruned);
  }
}
