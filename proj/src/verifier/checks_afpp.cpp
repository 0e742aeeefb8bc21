#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

bool moves_everything(const ImageGraph& x, std::span<const Index> t) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.adjacent_or_equal(i, t[i])) return false;
  return true;
}

// Brute force over every table, continuity tested directly.
bool brute_afpp(const ImageGraph& x) {
  bool afpp = true;
  for_each_map(x.size(), x.size(), [&](std::span<const Index> t) {
    if (is_continuous_table(x, x, t) && moves_everything(x, t)) afpp = false;
    return afpp;
  });
  return afpp;
}

bool afpp(Context& ctx, const ImageGraph& x) {
  auto res = has_afpp(x, kSearchBudget);
  ctx.searched(res.verdict);
  if (res.verdict == Verdict::no) {
    const auto& w = *res.witness;
    ctx.expect(is_continuous(w) && !approximate_fixed_point(w),
               [&] { return "invalid AFPP witness " + show(w); });
  }
  return res.verdict == Verdict::yes;
}

void def_afpp(Context& ctx) {
  auto i01 = fixtures::interval_graph(0, 1);
  std::size_t maps = 0;
  for_each_map(2, 2, [&](std::span<const Index> t) {
    ctx.instance();
    ++maps;
    DigitalMap f(i01, i01, {t.begin(), t.end()});
    ctx.expect(is_continuous(f) && approximate_fixed_point(f).has_value(),
               [&] { return "self-map of [0,1] without approximate fixed point: " + show(f); });
    return true;
  });
  ctx.expect(afpp(ctx, i01), [] { return "has_afpp([0,1]) should be true"; });

  std::size_t yes = 0, classes = 0;
  for (const auto& x : images_upto(4)) {
    ctx.instance();
    bool got = afpp(ctx, x);
    ctx.expect(got == brute_afpp(x), [&] { return "has_afpp disagrees with brute force on " + show(x); });
    ++classes;
    yes += got;
  }
  ctx.note = std::to_string(maps) + " self-maps of [0,1] checked; " + std::to_string(yes) + " of " +
             std::to_string(classes) + " classes have the AFPP";
}

std::string show_factors(const std::vector<ImageGraph>& f) {
  std::vector<std::string> s;
  for (const auto& g : f) s.push_back(show(g));
  return join(s, " x ");
}

void for_factor_lists(std::size_t pair_max, std::size_t triple_max,
                      const std::function<void(const std::vector<ImageGraph>&)>& fn) {
  auto two = images_upto(pair_max);
  for (const auto& a : two)
    for (const auto& b : two) fn({a, b});
  auto three = images_upto(triple_max);
  for (const auto& a : three)
    for (const auto& b : three)
      for (const auto& c : three) fn({a, b, c});
}

void thm_np_afpp(Context& ctx) {
  std::size_t holds = 0;
  for_factor_lists(4, 3, [&](const std::vector<ImageGraph>& f) {
    for (std::size_t u = 1; u <= f.size(); ++u) {
      ctx.instance();
      ProductSpace p(f, ProductKind::np(static_cast<int>(u)));
      if (!afpp(ctx, p.graph())) continue;
      ++holds;
      for (const auto& g : f)
        ctx.expect(afpp(ctx, g), [&] {
          return "NP_" + std::to_string(u) + " product has the AFPP but factor " + show(g) +
                 " does not: " + show_factors(f);
        });
    }
  });
  ctx.note = std::to_string(holds) + " products with the AFPP";
}

// The map must be continuous, move every point off its closed neighborhood, and be
// among the counterexamples the enumeration reports.
void expect_counterexample(Context& ctx, const ProductKind& kind,
                           const std::function<Point(const Point&)>& fn) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  ProductSpace p({i01, i01}, kind);
  auto f = DigitalMap::from_function(p.graph(), p.graph(), fn);
  ctx.expect(static_cast<bool>(is_continuous(f)), [&] { return show(f) + " should be continuous"; });
  ctx.expect(!approximate_fixed_point(f), [&] { return show(f) + " has an approximate fixed point"; });
  ctx.expect(!afpp(ctx, p.graph()), [&] { return "[0,1]^2 under " + kind.str() + " should lack the AFPP"; });
  auto all = afpp_counterexamples(p.graph(), kSearchBudget);
  ctx.searched(all.status);
  ctx.expect(std::find(all.witness->begin(), all.witness->end(), f) != all.witness->end(),
             [&] { return show(f) + " missing from the counterexample list"; });
  ctx.note = show(f) + " among " + std::to_string(all.witness->size()) + " counterexamples";
}

void ex_tensor_afpp(Context& ctx) {
  expect_counterexample(ctx, ProductKind::tensor(), [](const Point& q) { return Point{1 - q[0], q[1]}; });
}

void ex_cartesian_afpp(Context& ctx) {
  expect_counterexample(ctx, ProductKind::cartesian(),
                        [](const Point& q) { return Point{1 - q[0], 1 - q[1]}; });
}

void thm_lex_afpp(Context& ctx) {
  std::size_t holds = 0, lists = 0;
  for_factor_lists(4, 2, [&](const std::vector<ImageGraph>& f) {
    std::size_t n = 1;
    for (const auto& g : f) n *= g.size();
    if (n > 4) return;
    ctx.instance();
    ++lists;
    auto k = std::find_if(f.begin(), f.end(),
                          [](const ImageGraph& g) { return g.size() > 1 && is_connected(g); });
    if (k == f.end()) return;
    ProductSpace p(f, ProductKind::lex());
    if (!afpp(ctx, p.graph())) return;
    ++holds;
    ctx.expect(afpp(ctx, *k), [&] {
      return "L product has the AFPP but " + show(*k) + " does not: " + show_factors(f);
    });
  });
  ctx.note = std::to_string(lists) + " factor lists with <= 4 points, " + std::to_string(holds) +
             " products with the AFPP";
}

}  // namespace

void add_afpp_checks(std::vector<TheoremCheck>& r) {
  r.push_back({"Def-7.1", Mode::exhaustive, "all self-maps of [0,1]; classes <= 4 points", def_afpp});
  r.push_back({"Thm-7.2", Mode::exhaustive,
               "pairs of classes <= 4 points, triples of classes <= 3 points, NP_u for each u",
               thm_np_afpp});
  r.push_back({"Ex-7.3", Mode::fixture, "[0,1]^2 under T(c1,c1), f(a,b) = (1-a,b)", ex_tensor_afpp});
  r.push_back({"Ex-7.4", Mode::fixture, "[0,1]^2 under c1 x c1, f(a,b) = (1-a,1-b)", ex_cartesian_afpp});
  r.push_back({"Thm-7.5", Mode::exhaustive, "L products of 2 or 3 classes with <= 4 points in total",
               thm_lex_afpp});
}

}  // namespace dtop::verify
