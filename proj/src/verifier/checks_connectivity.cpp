#include <algorithm>
#include <set>

#include "internal.hpp"

namespace dtop::verify {

namespace {

using Factors = std::vector<ImageGraph>;

void for_factor_lists(const std::function<void(const Factors&)>& fn) {
  auto four = images_upto(4);
  for (const auto& a : four)
    for (const auto& b : four) fn({a, b});
  auto three = images_upto(3);
  for (const auto& a : three)
    for (const auto& b : three)
      for (const auto& c : three) fn({a, b, c});
}

bool all_connected(const Factors& f) {
  return std::all_of(f.begin(), f.end(), [](const ImageGraph& g) { return is_connected(g); });
}

std::string show_factors(const Factors& f) {
  std::vector<std::string> s;
  for (const auto& g : f) s.push_back(show(g));
  return join(s, " x ");
}

void thm_np_connected(Context& ctx) {
  for_factor_lists([&](const Factors& f) {
    ctx.instance();
    ProductSpace p(f, ProductKind::np(static_cast<int>(f.size())));
    ctx.expect(is_connected(p.graph()) == all_connected(f),
               [&] { return "NP_v connectivity iff fails on " + show_factors(f); });
  });
}

void thm_tensor_connected(Context& ctx) {
  for_factor_lists([&](const Factors& f) {
    ctx.instance();
    ProductSpace p(f, ProductKind::tensor());
    ctx.expect(!is_connected(p.graph()) || all_connected(f),
               [&] { return "T-connected product with disconnected factor: " + show_factors(f); });
  });
}

std::set<std::set<Point>> as_sets(const std::vector<std::vector<Point>>& comps) {
  std::set<std::set<Point>> out;
  for (const auto& c : comps) out.emplace(c.begin(), c.end());
  return out;
}

void ex_tensor_components(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto sq = ProductSpace({i01, i01}, ProductKind::tensor()).graph();
  std::set<std::set<Point>> want{{Point{0, 0}, Point{1, 1}}, {Point{1, 0}, Point{0, 1}}};
  ctx.expect(as_sets(components(sq)) == want,
             [&] { return "[0,1]^2 under T should have components {(0,0),(1,1)}, {(1,0),(0,1)}"; });

  auto single = ProductSpace({fixtures::points_c1({0}), i01}, ProductKind::tensor()).graph();
  ctx.expect(!is_connected(single), [] { return "{0} x [0,1] should not be T-connected"; });

  auto msc = fixtures::graph(DigitalImage(fixtures::msc8()), "c2");
  ctx.expect(is_connected(msc), [] { return "MSC_8 should be c2-connected"; });
  for (auto kind : {ProductKind::cartesian(), ProductKind::np(1)}) {
    ProductSpace p({msc, i01}, kind);
    ctx.expect(is_connected(p.graph()),
               [&] { return "MSC_8 x [0,1] should be connected under " + kind.str(); });
  }
  ProductSpace t({msc, i01}, ProductKind::tensor());
  auto comps = components(t.graph());
  ctx.expect(comps.size() == 2, [&] {
    return "MSC_8 x [0,1] should have 2 T components, found " + std::to_string(comps.size());
  });
  const auto cyc = fixtures::msc8();
  const Coord n = static_cast<Coord>(cyc.size());
  for (Coord i = 0; i < n; ++i)
    for (Coord s = 0; s <= 1; ++s) {
      Point p = concat(std::vector<Point>{cyc[i], Point{s}});
      std::set<Point> want_nb{concat(std::vector<Point>{cyc[(i + 1) % n], Point{1 - s}}),
                              concat(std::vector<Point>{cyc[(i + n - 1) % n], Point{1 - s}})};
      std::set<Point> got;
      for (Index j : t.graph().neighbors(t.graph().index_of(p))) got.insert(t.graph().point(j));
      ctx.expect(got == want_nb, [&] { return "neighbor formula fails at " + p.str(); });
    }
  ctx.note = "[0,1]^2 T components {(0,0),(1,1)} {(0,1),(1,0)}; MSC_8 x [0,1] T components: " +
             show(comps[0]) + " " + show(comps[1]);
}

void thm_cartesian_connected(Context& ctx) {
  for_factor_lists([&](const Factors& f) {
    ctx.instance();
    ProductSpace p(f, ProductKind::cartesian());
    ctx.expect(is_connected(p.graph()) == all_connected(f),
               [&] { return "Cartesian connectivity iff fails on " + show_factors(f); });
  });
}

void prop_lex_two_factors(Context& ctx) {
  auto four = images_upto(4);
  for (const auto& x : four)
    for (const auto& y : four) {
      if (x.size() < 2) continue;
      ctx.instance();
      ProductSpace p({x, y}, ProductKind::lex());
      ctx.expect(is_connected(p.graph()) == is_connected(x),
                 [&] { return "L connectivity should follow the first factor: " + show_factors({x, y}); });
    }
}

void thm_lex_connected(Context& ctx) {
  for_factor_lists([&](const Factors& f) {
    ctx.instance();
    ProductSpace p(f, ProductKind::lex());
    auto k = std::find_if(f.begin(), f.end(), [](const ImageGraph& g) { return g.size() > 1; });
    bool want = k == f.end() || is_connected(*k);
    ctx.expect(is_connected(p.graph()) == want,
               [&] { return "L connectivity should follow X_k: " + show_factors(f); });
  });
}

}  // namespace

void add_connectivity_checks(std::vector<TheoremCheck>& r) {
  const std::string fam = "pairs of classes <= 4 points, triples of classes <= 3 points";
  r.push_back({"Thm-4.1", Mode::exhaustive, fam + ", NP_v", thm_np_connected});
  r.push_back({"Thm-4.2", Mode::exhaustive, fam, thm_tensor_connected});
  r.push_back({"Ex-4.3", Mode::fixture, "[0,1]^2, {0} x [0,1], MSC_8 x [0,1]", ex_tensor_components});
  r.push_back({"Thm-4.4", Mode::exhaustive, fam, thm_cartesian_connected});
  r.push_back({"Prop-4.5", Mode::exhaustive, "pairs of classes <= 4 points, |X| > 1",
               prop_lex_two_factors});
  r.push_back({"Thm-4.6", Mode::exhaustive, fam, thm_lex_connected});
}

}  // namespace dtop::verify
