#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

bool brute_retract(const ImageGraph& x, const DigitalImage& a) {
  auto ag = x.induced(a);
  for (const auto& r : all_maps(x, ag)) {
    bool fixes = std::all_of(a.points().begin(), a.points().end(),
                             [&](const Point& p) { return r(p) == p; });
    if (fixes && is_continuous(r)) return true;
  }
  return false;
}

// Runs the search and validates any witness it returns.
bool retract(Context& ctx, const ImageGraph& x, const DigitalImage& a) {
  auto res = exists_retraction(x, a, kSearchBudget);
  ctx.searched(res.status);
  if (res.found())
    ctx.expect(static_cast<bool>(is_retraction(*res.witness, a)),
               [&] { return "search returned an invalid retraction " + show(*res.witness); });
  return res.found();
}

void def_retraction(Context& ctx) {
  std::size_t pairs = 0, yes = 0;
  for (const auto& x : images_upto(4))
    for (const auto& a : nonempty_subsets(x.image())) {
      ctx.instance();
      bool got = retract(ctx, x, a), want = brute_retract(x, a);
      ctx.expect(got == want, [&] {
        return "retraction search disagrees with brute force on " + show(x) + " onto " + show(a);
      });
      ++pairs;
      yes += got;
    }
  ctx.note = std::to_string(yes) + " of " + std::to_string(pairs) + " subsets are retracts";
}

struct Pointed {
  ImageGraph x, a;
  DigitalImage sub;
  bool retract;
};

std::vector<Pointed> subset_pool(Context& ctx, std::size_t max_points) {
  std::vector<Pointed> out;
  for (const auto& x : images_upto(max_points))
    for (const auto& a : nonempty_subsets(x.image()))
      out.push_back({x, x.induced(a), a, retract(ctx, x, a)});
  return out;
}

std::string show_case(const std::vector<const Pointed*>& f) {
  std::vector<std::string> s;
  for (const auto* p : f) s.push_back(show(p->sub) + " in " + show(p->x));
  return join(s, " ; ");
}

// Product retract iff every factor is a retract, for each kind from make(n).
void product_iff(Context& ctx, const std::function<std::vector<ProductKind>(std::size_t)>& make) {
  auto run = [&](const std::vector<const Pointed*>& f) {
    std::vector<ImageGraph> xs, as;
    bool want = true;
    for (const auto* p : f) {
      xs.push_back(p->x);
      as.push_back(p->a);
      want = want && p->retract;
    }
    for (const auto& kind : make(f.size())) {
      ctx.instance();
      ProductSpace px(xs, kind), pa(as, kind);
      bool got = retract(ctx, px.graph(), pa.graph().image());
      ctx.expect(got == want, [&] {
        return kind.str() + " product retract " + (got ? "exists" : "missing") + " for " +
               show_case(f);
      });
    }
  };
  auto two = subset_pool(ctx, 4);
  for (const auto& a : two)
    for (const auto& b : two) run({&a, &b});
  auto three = subset_pool(ctx, 3);
  for (const auto& a : three)
    for (const auto& b : three)
      for (const auto& c : three) run({&a, &b, &c});
}

void thm_np_retract(Context& ctx) {
  product_iff(ctx, [](std::size_t n) {
    std::vector<ProductKind> k;
    for (std::size_t v = 1; v <= n; ++v) k.push_back(ProductKind::np(static_cast<int>(v)));
    return k;
  });
}

void thm_cartesian_retract(Context& ctx) {
  product_iff(ctx, [](std::size_t) { return std::vector{ProductKind::cartesian()}; });
}

// Depth-first Hamiltonian path, for the short fixture listing below.
bool hamilton(const ImageGraph& g, std::vector<Index>& path, std::vector<char>& used) {
  if (path.size() == g.size()) return true;
  for (Index j : g.neighbors(path.back())) {
    if (used[j]) continue;
    used[j] = 1;
    path.push_back(j);
    if (hamilton(g, path, used)) return true;
    path.pop_back();
    used[j] = 0;
  }
  return false;
}

void ex_tensor_retract(Context& ctx) {
  ctx.instance();
  auto x = fixtures::graph(fixtures::corner3(), "c2");
  auto a = x.induced(fixtures::corner2());
  auto i01 = fixtures::interval_graph(0, 1);
  auto zero = fixtures::points_c1({0});
  ctx.expect(retract(ctx, x, a.image()), [] { return "corner2 should be a c2 retract of corner3"; });
  ctx.expect(retract(ctx, i01, zero.image()), [] { return "{0} should be a retract of [0,1]"; });

  ProductSpace px({x, i01}, ProductKind::tensor()), pa({a, zero}, ProductKind::tensor());
  auto res = exists_retraction(px.graph(), pa.graph().image(), kSearchBudget);
  ctx.searched(res.status);
  ctx.expect(!res.found(), [&] { return "unexpected T retraction " + show(*res.witness); });

  ProductSpace cx({x, i01}, ProductKind::cartesian()), ca({a, zero}, ProductKind::cartesian());
  ctx.expect(retract(ctx, cx.graph(), ca.graph().image()),
             [] { return "the Cartesian product retract should exist"; });

  const auto& g = px.graph();
  std::vector<Index> path{0};
  std::vector<char> used(g.size(), 0);
  used[0] = 1;
  ctx.expect(hamilton(g, path, used), [] { return "corner3 x [0,1] under T should have a path"; });
  std::vector<Point> pts;
  for (Index i : path) pts.push_back(g.point(i));
  ctx.note = "T retraction absent after " + std::to_string(res.nodes) + " nodes; T path " + show(pts);
}

void ex_lex_retract(Context& ctx) {
  ctx.instance();
  auto x1 = fixtures::interval_graph(0, 1), x2 = fixtures::interval_graph(0, 5);
  auto a1 = fixtures::points_c1({0}), a2 = fixtures::interval_graph(1, 4);
  ctx.expect(retract(ctx, x1, a1.image()) && retract(ctx, x2, a2.image()),
             [] { return "factor retracts should exist"; });
  ProductSpace px({x1, x2}, ProductKind::lex()), pa({a1, a2}, ProductKind::lex());
  auto res = exists_retraction(px.graph(), pa.graph().image(), kSearchBudget);
  ctx.searched(res.status);
  ctx.expect(!res.found(), [&] { return "unexpected L retraction " + show(*res.witness); });
  ProductSpace cx({x1, x2}, ProductKind::cartesian()), ca({a1, a2}, ProductKind::cartesian());
  ctx.expect(retract(ctx, cx.graph(), ca.graph().image()),
             [] { return "the Cartesian product retract should exist"; });
  ctx.note = "L retraction absent after " + std::to_string(res.nodes) + " nodes";
}

}  // namespace

void add_retraction_checks(std::vector<TheoremCheck>& r) {
  const std::string fam =
      "pairs of classes <= 4 points, triples of classes <= 3 points, every nonempty subset per factor";
  r.push_back({"Def-6.1", Mode::exhaustive, "classes <= 4 points, every nonempty subset",
               def_retraction});
  r.push_back({"Thm-6.2", Mode::exhaustive, fam + ", NP_v for each v", thm_np_retract});
  r.push_back({"Ex-6.3", Mode::fixture, "corner3 x [0,1] onto corner2 x {0}, T(c2,c1)",
               ex_tensor_retract});
  r.push_back({"Thm-6.4", Mode::exhaustive, fam, thm_cartesian_retract});
  r.push_back({"Ex-6.5", Mode::fixture, "[0,1] x [0,5] onto {0} x [1,4], L(c1,c1)", ex_lex_retract});
}

}  // namespace dtop::verify
