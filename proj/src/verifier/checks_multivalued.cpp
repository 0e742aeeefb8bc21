#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

constexpr int kRmax = 2;

// ---- definitional oracles

bool meet_or_touch(const ImageGraph& y, const IndexSet& a, const IndexSet& b) {
  for (Index p : a)
    for (Index q : b)
      if (y.adjacent_or_equal(p, q)) return true;
  return false;
}

// Every point of a is equal or adjacent to some point of b.
bool covered(const ImageGraph& y, const IndexSet& a, const IndexSet& b) {
  return std::all_of(a.begin(), a.end(), [&](Index p) {
    return std::any_of(b.begin(), b.end(), [&](Index q) { return y.adjacent_or_equal(p, q); });
  });
}

template <class Pred>
bool all_edges(const MultiMap& f, Pred pred) {
  const auto& x = f.domain();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (Index j : x.neighbors(i))
      if (!pred(f[i], f[j])) return false;
  return true;
}

bool brute_weak(const MultiMap& f) {
  return all_edges(f, [&](const IndexSet& a, const IndexSet& b) { return meet_or_touch(f.codomain(), a, b); });
}

bool brute_strong(const MultiMap& f) {
  return all_edges(f, [&](const IndexSet& a, const IndexSet& b) {
    return covered(f.codomain(), a, b) && covered(f.codomain(), b, a);
  });
}

// Straight from the definition: every connected A has connected F(A).
bool brute_cp(const MultiMap& f) {
  const auto& x = f.domain();
  for (std::uint32_t mask = 1; mask < (1u << x.size()); ++mask) {
    IndexSet a;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (mask >> i & 1) a.push_back(static_cast<Index>(i));
    if (brute_connected(x, a) && !brute_connected(f.codomain(), f.image(a))) return false;
  }
  return true;
}

bool points_connected(const MultiMap& f) {
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    if (!brute_connected(f.codomain(), f[i])) return false;
  return true;
}

bool lib_weak(const MultiMap& f) { return has_weak_continuity(f).ok; }
bool lib_strong(const MultiMap& f) { return has_strong_continuity(f).ok; }
bool lib_cp(const MultiMap& f) { return is_connectivity_preserving(f).preserving; }

// Search plus validation of any generator returned.
bool continuous(Context& ctx, const MultiMap& f, int r_max = kRmax) {
  auto res = is_continuous_multimap(f, r_max, kSearchBudget);
  ctx.searched(res.status);
  if (res.found()) {
    const auto& g = *res.generator;
    ctx.expect(is_continuous(g) && induced_multimap(g, *res.subdivision) == f,
               [&] { return "invalid generator " + show(g) + " for " + show(f); });
  }
  return res.found();
}

ImageGraph line(std::vector<Coord> xs) { return fixtures::points_c1(std::move(xs)); }

// 1-d multimap from value lists, e.g. mm(x, y, {{0, {0, 2}}, {1, {1}}}).
MultiMap mm(const ImageGraph& x, const ImageGraph& y,
            const std::vector<std::pair<Coord, std::vector<Coord>>>& values) {
  std::vector<std::pair<Point, std::vector<Point>>> v;
  for (const auto& [p, qs] : values) {
    std::vector<Point> pts;
    for (Coord q : qs) pts.push_back(Point{q});
    v.emplace_back(Point{p}, pts);
  }
  return MultiMap::from_points(x, y, v);
}

// ---- exhaustive families

const std::vector<ImageGraph>& small() {
  static const auto imgs = images_upto(3);
  return imgs;
}

// Every multimap between classes with <= 3 points.
const std::vector<MultiInstance>& multis() {
  static const auto all = multimap_instances(small(), small());
  return all;
}

struct Generated {
  SearchStatus status;
  std::optional<DigitalMap> generator;
  std::optional<Subdivision> sub;
};

const std::vector<Generated>& multis_continuity() {
  static const auto table = [] {
    std::vector<Generated> out;
    for (const auto& m : multis()) {
      auto res = is_continuous_multimap(m.f, kRmax, kSearchBudget);
      out.push_back({res.status, std::move(res.generator), std::move(res.subdivision)});
    }
    return out;
  }();
  return table;
}

struct MultiFactor {
  std::size_t x, y;
  MultiMap f;
  bool weak, strong, cp;
};

// Factors for the product matrix: |X|, |Y| <= 3, not both 3.
const std::vector<MultiFactor>& multi_factors() {
  static const auto out = [] {
    std::vector<MultiFactor> v;
    for (const auto& m : multis())
      if (small()[m.x].size() + small()[m.y].size() <= 5)
        v.push_back({m.x, m.y, m.f, brute_weak(m.f), brute_strong(m.f), brute_cp(m.f)});
    return v;
  }();
  return out;
}

std::string show_pair(const MultiMap& a, const MultiMap& b, const ProductKind& kind) {
  return show(a) + " and " + show(b) + " under " + kind.str();
}

void for_each_multi_product(
    Context& ctx, const ProductKind& kind,
    const std::function<void(const MultiFactor&, const MultiFactor&, const MultiMap&)>& fn) {
  Products prods(small(), kind);
  std::size_t n = 0;
  for (const auto& f1 : multi_factors())
    for (const auto& f2 : multi_factors()) {
      ctx.instance();
      const auto& dom = prods(f1.x, f2.x);
      const auto& cod = prods(f1.y, f2.y);
      auto p = product_multi(dom, cod, f1.f, f2.f);
      if (++n % 4099 == 0) {
        std::vector<MultiMap> fs{f1.f, f2.f};
        ctx.expect(product_multimap(fs, dom, cod) == p,
                   [&] { return "product_multimap differs on " + show_pair(f1.f, f2.f, kind); });
      }
      fn(f1, f2, p);
    }
}

using Flag = bool MultiFactor::*;
using Property = bool (*)(const MultiMap&);

void np_iff(Context& ctx, Flag flag, Property prop, const char* what) {
  for (int u : {1, 2})
    for_each_multi_product(ctx, ProductKind::np(u), [&](const MultiFactor& a, const MultiFactor& b,
                                                        const MultiMap& p) {
      ctx.expect(prop(p) == (a.*flag && b.*flag), [&] {
        return std::string(what) + " iff fails for " + show_pair(a.f, b.f, ProductKind::np(u));
      });
    });
}

void cartesian_iff(Context& ctx, Flag flag, Property prop, const char* what) {
  for_each_multi_product(ctx, ProductKind::cartesian(), [&](const MultiFactor& a,
                                                            const MultiFactor& b, const MultiMap& p) {
    ctx.expect(prop(p) == (a.*flag && b.*flag), [&] {
      return std::string(what) + " iff fails for " + show_pair(a.f, b.f, ProductKind::cartesian());
    });
  });
}

// Product => factors under T, for factor domains that have an edge.
void tensor_factor(Context& ctx, Flag flag, Property prop, const char* what) {
  std::string singleton;
  std::size_t converse = 0;
  for_each_multi_product(ctx, ProductKind::tensor(), [&](const MultiFactor& a, const MultiFactor& b,
                                                         const MultiMap& p) {
    bool prod = prop(p), factors = a.*flag && b.*flag;
    if (!prod && factors) ++converse;
    if (!prod || factors) return;
    if (has_edge(small()[a.x]) && has_edge(small()[b.x]))
      throw CheckFailed{std::string(what) + " product, factor lacks it: " +
                        show_pair(a.f, b.f, ProductKind::tensor())};
    if (singleton.empty()) singleton = show_pair(a.f, b.f, ProductKind::tensor());
  });
  ctx.note = std::to_string(converse) + " converse failures; edgeless-domain counterexample: " + singleton;
}

// ---- connectivity preservation, subdivisions

void thm_cp_bullets(Context& ctx) {
  for (const auto& m : multis()) {
    ctx.instance();
    ctx.expect(lib_cp(m.f) == brute_cp(m.f),
               [&] { return "connectivity preservation disagrees with the definition on " + show(m.f); });
  }
}

// Some vertex whose removal disconnects the rest.
std::optional<Index> cut_point(const ImageGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    IndexSet rest;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (i != v) rest.push_back(static_cast<Index>(i));
    if (!brute_connected(g, rest)) return static_cast<Index>(v);
  }
  return std::nullopt;
}

void def_subdivision(Context& ctx) {
  for (const auto& x : image_classes())
    for (int r = 1; r <= 4; ++r) {
      ctx.instance();
      auto s = subdivide(x, r);
      std::size_t per = 1;
      for (std::size_t k = 0; k < x.image().dim(); ++k) per *= static_cast<std::size_t>(r);
      ctx.expect(s.graph().size() == per * x.size(), [&] {
        return "|S(X," + std::to_string(r) + ")| = " + std::to_string(s.graph().size()) + " on " + show(x);
      });
      for (std::size_t i = 0; i < x.size(); ++i)
        ctx.expect(s.fiber(i).size() == per, [&] { return "uneven fiber over " + x.point(i).str(); });
    }
  ctx.instance();
  auto sx = subdivide(fixtures::graph(fixtures::diagonal_pair(), "c2"), 2);
  auto sy = subdivide(fixtures::graph(fixtures::axis_pair(), "c2"), 2);
  ctx.expect(sx.graph().size() == 8 && sy.graph().size() == 8, [] { return "S(X,2) of each 2-point pair should have 8 points"; });
  auto cx = cut_point(sx.graph());
  ctx.expect(cx.has_value(), [] { return "S(diagonal pair, 2) should have a cut point"; });
  ctx.expect(!cut_point(sy.graph()), [] { return "S(axis pair, 2) should have no cut point"; });
  ctx.note = "diagonal pair: removing " + sx.scaled(*cx) + " disconnects S(X,2); axis pair: no cut point";
}

void thm_continuous_connected(Context& ctx) {
  const auto& gen = multis_continuity();
  std::size_t found = 0;
  for (std::size_t k = 0; k < multis().size(); ++k) {
    ctx.instance();
    ctx.searched(gen[k].status);
    if (gen[k].status != SearchStatus::found) continue;
    ++found;
    const auto& f = multis()[k].f;
    ctx.expect(points_connected(f) && brute_cp(f),
               [&] { return "continuous multimap with a disconnected image: " + show(f); });
  }
  ctx.note = std::to_string(found) + " continuous multimaps (r <= 2)";
}

void thm_continuous_cp(Context& ctx) {
  const auto& gen = multis_continuity();
  std::size_t found = 0, cp_only = 0;
  std::string example;
  for (std::size_t k = 0; k < multis().size(); ++k) {
    ctx.instance();
    ctx.searched(gen[k].status);
    const auto& f = multis()[k].f;
    bool cp = lib_cp(f);
    if (gen[k].status != SearchStatus::found) {
      if (cp && ++cp_only == 1) example = show(f);
      continue;
    }
    ++found;
    const auto& g = *gen[k].generator;
    ctx.expect(is_continuous(g) && induced_multimap(g, *gen[k].sub) == f,
               [&] { return "invalid generator " + show(g); });
    ctx.expect(cp, [&] { return "continuous but not connectivity preserving: " + show(f); });
  }
  ctx.note = std::to_string(found) + " continuous; " + std::to_string(cp_only) +
             " connectivity preserving without a generator for r <= 2, e.g. " + example;
}

void prop_cp_weak(Context& ctx) {
  for (const auto& m : multis()) {
    ctx.instance();
    bool weak = lib_weak(m.f);
    ctx.expect(weak == brute_weak(m.f), [&] { return "weak continuity disagrees with brute force on " + show(m.f); });
    ctx.expect(lib_cp(m.f) == (weak && points_connected(m.f)),
               [&] { return "CP iff weak + connected point images fails on " + show(m.f); });
  }
}

void ex_weak_strong_both(Context& ctx) {
  ctx.instance();
  auto f = mm(fixtures::interval_graph(0, 1), fixtures::interval_graph(0, 2), {{0, {0, 2}}, {1, {1}}});
  ctx.expect(lib_weak(f) && lib_strong(f), [&] { return show(f) + " should be weak and strong"; });
  auto cp = is_connectivity_preserving(f);
  ctx.expect(!cp.preserving && cp.failure == ConnectivityReport::Failure::point_image_disconnected,
             [&] { return show(f) + " should fail on a disconnected point image"; });
  ctx.expect(!continuous(ctx, f, 4), [&] { return show(f) + " should have no generator"; });
  ctx.note = "weak, strong, not connectivity preserving, no generator for r <= 4";
}

void ex_weak_not_strong(Context& ctx) {
  ctx.instance();
  auto f = mm(fixtures::interval_graph(0, 1), fixtures::interval_graph(0, 2), {{0, {0, 1}}, {1, {2}}});
  ctx.expect(lib_weak(f) && !lib_strong(f), [&] { return show(f) + " should be weak, not strong"; });
  auto res = is_continuous_multimap(f, 4, kSearchBudget);
  ctx.searched(res.status);
  ctx.expect(res.found(), [&] { return show(f) + " should be continuous"; });
  ctx.note = "generator at r=" + std::to_string(res.r) + ": " + res.generator->str();
}

void prop_strong_cp(Context& ctx) {
  std::size_t hits = 0;
  for (const auto& m : multis()) {
    ctx.instance();
    bool strong = lib_strong(m.f);
    ctx.expect(strong == brute_strong(m.f),
               [&] { return "strong continuity disagrees with brute force on " + show(m.f); });
    if (!strong || !points_connected(m.f)) continue;
    ++hits;
    ctx.expect(lib_cp(m.f), [&] { return "strong with connected images, not CP: " + show(m.f); });
  }
  ctx.note = std::to_string(hits) + " strong multimaps with connected point images";
}

void ex_constant_all(Context& ctx) {
  for (const auto& x : image_classes())
    for (const auto& y : image_classes()) {
      ctx.instance();
      IndexSet all(y.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
      MultiMap f(x, y, std::vector<IndexSet>(x.size(), all));
      ctx.expect(lib_weak(f) && lib_strong(f), [&] { return show(f) + " should be weak and strong"; });
      ctx.expect(lib_cp(f) == is_connected(y), [&] { return "F(x)=Y: CP should match connectivity of Y"; });
    }
  ctx.instance();
  auto f = mm(line({0}), line({0, 2}), {{0, {0, 2}}});
  ctx.expect(lib_weak(f) && lib_strong(f) && !lib_cp(f),
             [&] { return show(f) + " should be weak and strong but not CP"; });
}

// ---- single-valued maps as multimaps

void prop_single_valued(Context& ctx) {
  for (const auto& x : small())
    for (const auto& y : small())
      for (const auto& f : all_maps(x, y)) {
        ctx.instance();
        auto m = MultiMap::from_map(f);
        bool c = is_continuous(f).continuous;
        ctx.expect(lib_weak(m) == c && lib_strong(m) == c && continuous(ctx, m, 1) == c,
                   [&] { return "continuity, weak and strong disagree on " + show(f); });
      }
}

// ---- product matrix

void thm_np_weak(Context& ctx) { np_iff(ctx, &MultiFactor::weak, lib_weak, "weak"); }
void thm_tensor_weak(Context& ctx) { tensor_factor(ctx, &MultiFactor::weak, lib_weak, "weak"); }
void thm_cartesian_weak(Context& ctx) { cartesian_iff(ctx, &MultiFactor::weak, lib_weak, "weak"); }
void thm_np_strong(Context& ctx) { np_iff(ctx, &MultiFactor::strong, lib_strong, "strong"); }
void thm_tensor_strong(Context& ctx) { tensor_factor(ctx, &MultiFactor::strong, lib_strong, "strong"); }
void thm_cartesian_strong(Context& ctx) { cartesian_iff(ctx, &MultiFactor::strong, lib_strong, "strong"); }
void thm_np_cp(Context& ctx) { np_iff(ctx, &MultiFactor::cp, lib_cp, "CP"); }
void thm_tensor_cp(Context& ctx) { tensor_factor(ctx, &MultiFactor::cp, lib_cp, "CP"); }
void thm_cartesian_cp(Context& ctx) { cartesian_iff(ctx, &MultiFactor::cp, lib_cp, "CP"); }

MultiMap product2(const MultiMap& a, const MultiMap& b, const ProductKind& kind) {
  std::vector<MultiMap> fs{a, b};
  return product_multimap(fs, kind);
}

void ex_tensor_weak(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto f = MultiMap::from_map(DigitalMap::identity(i01));
  auto g = MultiMap::from_map(DigitalMap::constant(i01, i01, Point{0}));
  ctx.expect(lib_weak(f) && lib_weak(g), [] { return "factors should be weak"; });
  auto rep = has_weak_continuity(product2(f, g, ProductKind::tensor()));
  ctx.expect(!rep.ok, [] { return "id x const should lack T weak continuity"; });
  ctx.note = "id x const fails at " + show(*rep.violation);
}

void ex_tensor_strong(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto f1 = mm(i01, i01, {{0, {0}}, {1, {0}}}), f2 = mm(i01, i01, {{0, {0}}, {1, {1}}});
  ctx.expect(lib_strong(f1) && lib_strong(f2), [] { return "factors should be strong"; });
  auto rep = has_strong_continuity(product2(f1, f2, ProductKind::tensor()));
  ctx.expect(!rep.ok, [] { return "product should lack T strong continuity"; });
  ctx.note = "fails at " + show(*rep.violation);
}

// f1 = {0} on [0,1], f2 = id on {0,2}.
std::pair<MultiMap, MultiMap> lex_pair() {
  auto i01 = fixtures::interval_graph(0, 1);
  auto two = line({0, 2});
  return {mm(i01, i01, {{0, {0}}, {1, {0}}}), mm(two, two, {{0, {0}}, {2, {2}}})};
}

void ex_lex_weak_product(Context& ctx) {
  ctx.instance();
  auto [f1, f2] = lex_pair();
  ctx.expect(lib_weak(f1) && lib_strong(f1) && lib_weak(f2) && lib_strong(f2),
             [] { return "factors should be weak and strong"; });
  auto p = product2(f1, f2, ProductKind::lex());
  auto w = has_weak_continuity(p);
  ctx.expect(!w.ok && !lib_strong(p), [&] { return "L product should lack both: " + show(p); });
  ctx.note = "weak continuity fails at " + show(*w.violation);
}

void ex_lex_weak_factor(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto f1 = mm(i01, i01, {{0, {0, 1}}, {1, {0, 1}}});
  auto f2 = mm(i01, line({0, 2}), {{0, {0}}, {1, {2}}});
  ctx.expect(!lib_weak(f2) && !lib_strong(f2), [] { return "f2 should lack both"; });
  auto p = product2(f1, f2, ProductKind::lex());
  ctx.expect(lib_weak(p) && lib_strong(p), [&] { return "L product should have both: " + show(p); });
}

void ex_lex_continuity(Context& ctx) {
  ctx.instance();
  auto [f1, f2] = lex_pair();
  ctx.expect(continuous(ctx, f1, 1) && continuous(ctx, f2, 1),
             [] { return "factors should be continuous at r=1"; });
  auto p = product2(f1, f2, ProductKind::lex());
  ctx.expect(!lib_cp(p), [&] { return "L product should not be connectivity preserving: " + show(p); });
  bool rejected = false;
  try {
    is_continuous_multimap(p, 1, kSearchBudget);
  } catch (const DomainError&) {
    rejected = true;
  }
  ctx.expect(rejected, [] { return "subdivision search should reject an L domain"; });
  ctx.note = "product is not connectivity preserving, hence has no continuous generator at any r";
}

// ---- subdivision continuity of products

struct ContFactor {
  ImageGraph x, y;
  MultiMap f;
  bool cont;
};

const std::vector<ContFactor>& cont_factors() {
  static const auto out = [] {
    std::vector<ContFactor> v;
    auto two = images_upto(2);
    for (const auto& m : multimap_instances(two, two)) {
      auto res = is_continuous_multimap(m.f, kRmax, kSearchBudget);
      if (res.status == SearchStatus::budget_exceeded) return std::vector<ContFactor>{};
      v.push_back({two[m.x], two[m.y], m.f, res.found()});
    }
    return v;
  }();
  if (out.empty()) throw BudgetExhausted{};
  return out;
}

void thm_np_continuity(Context& ctx) {
  const auto& fs = cont_factors();
  for (int u : {1, 2})
    for (const auto& a : fs)
      for (const auto& b : fs) {
        ctx.instance();
        ProductSpace dom({a.x, b.x}, ProductKind::np(u)), cod({a.y, b.y}, ProductKind::np(u));
        auto p = product_multi(dom, cod, a.f, b.f);
        ctx.expect(continuous(ctx, p) == (a.cont && b.cont), [&] {
          return "continuity iff at r <= 2 fails for " + show_pair(a.f, b.f, ProductKind::np(u));
        });
      }
}

void lemma_refinement(Context& ctx) {
  std::size_t gens = 0;
  auto run = [&](const ImageGraph& x, int r) {
    Subdivision sub(x, r);
    for (const auto& y : small())
      for (const auto& g : continuous_maps(sub.graph(), y)) {
        ++gens;
        auto f = induced_multimap(g, sub);
        for (int s : {2, 3}) {
          ctx.instance();
          Subdivision finer(x, r * s);
          auto h = refine_generator(g, sub, finer);
          ctx.expect(is_continuous(h) && induced_multimap(h, finer) == f, [&] {
            return "refinement by " + std::to_string(s) + " fails for generator " + show(g);
          });
        }
      }
  };
  for (const auto& x : small()) run(x, 1);
  for (const auto& x : images_upto(2)) run(x, 2);
  ctx.note = std::to_string(gens) + " generators refined by s = 2, 3";
}

struct LocalGen {
  ImageGraph x, y;
  Subdivision sub;
  DigitalMap g;
  MultiMap f;
};

std::vector<LocalGen> local_generators(int r) {
  std::vector<LocalGen> out;
  for (const auto& x : images_upto(2)) {
    Subdivision sub(x, r);
    for (const auto& y : small())
      for (auto& g : continuous_maps(sub.graph(), y))
        if (is_locally_one_to_one(g)) out.push_back({x, y, sub, g, induced_multimap(g, sub)});
  }
  return out;
}

// Builds prod(g_i) on the product of subdivisions and checks it is continuous
// and generates prod(F_i); under T it must also be locally one-to-one.
void locally_injective_products(Context& ctx, const ProductKind& kind, bool keeps_l11) {
  std::size_t pairs = 0;
  for (int r : {1, 2}) {
    auto gens = local_generators(r);
    for (const auto& a : gens)
      for (const auto& b : gens) {
        ctx.instance();
        ++pairs;
        ProductSpace sdom({a.sub.graph(), b.sub.graph()}, kind), xdom({a.x, b.x}, kind),
            cod({a.y, b.y}, kind);
        DigitalMap g(sdom.graph(), cod.graph(), product_table(sdom, cod, a.g.table(), b.g.table()));
        ctx.expect(static_cast<bool>(is_continuous(g)),
                   [&] { return "product generator not continuous: " + show(g); });
        ctx.expect(!keeps_l11 || is_locally_one_to_one(g),
                   [&] { return "product generator not locally one-to-one: " + show(g); });
        std::vector<IndexSet> induced(xdom.graph().size());
        for (std::size_t p = 0; p < sdom.graph().size(); ++p) {
          Index parts[2] = {a.sub.project(sdom.part(p, 0)), b.sub.project(sdom.part(p, 1))};
          induced[xdom.index(parts)].push_back(g[p]);
        }
        for (auto& s : induced) {
          std::sort(s.begin(), s.end());
          s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        auto want = product_multi(xdom, cod, a.f, b.f);
        ctx.expect(induced == want.table(), [&] {
          return "product generator does not induce " + show(want);
        });
      }
  }
  ctx.note = std::to_string(pairs) + " pairs of locally one-to-one generators, r = 1, 2";
}

void thm_tensor_continuity(Context& ctx) { locally_injective_products(ctx, ProductKind::tensor(), true); }
void thm_lex_continuity(Context& ctx) { locally_injective_products(ctx, ProductKind::lex(), false); }

struct RetractFactor {
  ImageGraph x, a;
  MultiMap f;
  bool cont, retract;
};

std::vector<RetractFactor> retract_factors(Context& ctx) {
  std::vector<RetractFactor> out;
  for (const auto& x : images_upto(2))
    for (const auto& sub : nonempty_subsets(x.image())) {
      auto a = x.induced(sub);
      for (auto& f : all_multimaps(x, a)) {
        auto rep = is_multivalued_retraction(f, sub, kRmax, kSearchBudget);
        ctx.searched(rep.verdict);
        out.push_back({x, a, f, continuous(ctx, f), rep.verdict == Verdict::yes});
      }
    }
  return out;
}

bool product_retraction(Context& ctx, const RetractFactor& a, const RetractFactor& b,
                        const ProductKind& kind) {
  ProductSpace dom({a.x, b.x}, kind), cod({a.a, b.a}, kind);
  auto rep = is_multivalued_retraction(product_multi(dom, cod, a.f, b.f), cod.graph().image(), kRmax,
                                       kSearchBudget);
  ctx.searched(rep.verdict);
  return rep.verdict == Verdict::yes;
}

void thm_np_retraction(Context& ctx) {
  auto fs = retract_factors(ctx);
  for (int u : {1, 2})
    for (const auto& a : fs)
      for (const auto& b : fs) {
        if (!a.cont || !b.cont) continue;
        ctx.instance();
        ctx.expect(product_retraction(ctx, a, b, ProductKind::np(u)) == (a.retract && b.retract), [&] {
          return "multivalued retraction iff fails for " + show_pair(a.f, b.f, ProductKind::np(u));
        });
      }
}

void thm_cartesian_continuity(Context& ctx) {
  const auto& fs = cont_factors();
  std::size_t both = 0;
  for (const auto& a : fs)
    for (const auto& b : fs) {
      if (!a.cont || !b.cont) continue;
      ctx.instance();
      ++both;
      ProductSpace dom({a.x, b.x}, ProductKind::cartesian()), cod({a.y, b.y}, ProductKind::cartesian());
      auto p = product_multi(dom, cod, a.f, b.f);
      ctx.expect(continuous(ctx, p), [&] {
        return "continuous factors, product without generator: " +
               show_pair(a.f, b.f, ProductKind::cartesian());
      });
    }
  std::size_t rets = 0;
  auto rs = retract_factors(ctx);
  for (const auto& a : rs)
    for (const auto& b : rs) {
      if (!a.retract || !b.retract) continue;
      ctx.instance();
      ++rets;
      ctx.expect(product_retraction(ctx, a, b, ProductKind::cartesian()), [&] {
        return "product of retractions is not a retraction: " +
               show_pair(a.f, b.f, ProductKind::cartesian());
      });
    }
  ctx.note = std::to_string(both) + " continuous pairs, " + std::to_string(rets) + " retraction pairs";
}

// ---- connectivity preservation fixtures

void ex_tensor_cp(Context& ctx) {
  ctx.instance();
  auto f = mm(line({0}), fixtures::interval_graph(0, 1), {{0, {0, 1}}});
  ctx.expect(lib_cp(f), [] { return "f(0) = [0,1] should be connectivity preserving"; });
  auto rep = is_connectivity_preserving(product2(f, f, ProductKind::tensor()));
  ctx.expect(!rep.preserving && rep.failure == ConnectivityReport::Failure::point_image_disconnected,
             [] { return "f x f should fail on the disconnected image of (0,0)"; });
}

void ex_lex_cp(Context& ctx) {
  ctx.instance();
  auto f1 = mm(line({0}), fixtures::interval_graph(0, 1), {{0, {0, 1}}});
  auto f2 = mm(line({0}), line({0, 2}), {{0, {0, 2}}});
  ctx.expect(!lib_cp(f2), [] { return "f2(0) = {0,2} should not be connectivity preserving"; });
  auto p = product2(f1, f2, ProductKind::lex());
  ctx.expect(lib_cp(p), [&] { return "L product should be connectivity preserving: " + show(p); });
  auto [g1, g2] = lex_pair();
  ctx.expect(lib_cp(g1) && lib_cp(g2) && !lib_cp(product2(g1, g2, ProductKind::lex())),
             [] { return "CP factors should give a non-CP L product"; });
  ctx.note = "factor direction fails via {0} -o [0,1] x {0,2}; product direction via const x id";
}

}  // namespace

void add_multivalued_checks(std::vector<TheoremCheck>& r) {
  const std::string all3 = "every multimap between classes <= 3 points";
  const std::string matrix = "pairs of multimaps with |X|,|Y| <= 3, not both 3";
  const std::string sub2 = "pairs of multimaps between classes <= 2 points, r <= 2";
  r.push_back({"Thm-2.19", Mode::exhaustive, all3 + ", against the definition", thm_cp_bullets});
  r.push_back({"Def-2.20", Mode::exhaustive, "classes <= 4 points, r <= 4; diagonal and axis pairs in Z^2",
               def_subdivision});
  r.push_back({"Thm-2.23", Mode::exhaustive, all3 + ", generators r <= 2", thm_continuous_connected});
  r.push_back({"Thm-2.24", Mode::exhaustive, all3 + ", generators r <= 2", thm_continuous_cp});
  r.push_back({"Prop-2.27", Mode::exhaustive, all3, prop_cp_weak});
  r.push_back({"Ex-2.28", Mode::fixture, "F(0)={0,2}, F(1)={1}", ex_weak_strong_both});
  r.push_back({"Ex-2.29", Mode::fixture, "F(0)={0,1}, F(1)={2}", ex_weak_not_strong});
  r.push_back({"Prop-2.30", Mode::exhaustive, all3, prop_strong_cp});
  r.push_back({"Ex-2.31", Mode::exhaustive, "F(x)=Y on pairs of classes <= 4 points; {0} -o {0,2}",
               ex_constant_all});
  r.push_back({"Prop-8.1", Mode::exhaustive, "every map between classes <= 3 points", prop_single_valued});
  r.push_back({"Thm-8.2", Mode::exhaustive, matrix + ", NP_1 and NP_2", thm_np_weak});
  r.push_back({"Thm-8.3", Mode::exhaustive, matrix + ", T", thm_tensor_weak});
  r.push_back({"Ex-8.4", Mode::fixture, "id x const on [0,1]^2, T", ex_tensor_weak});
  r.push_back({"Thm-8.5", Mode::exhaustive, matrix + ", Cartesian", thm_cartesian_weak});
  r.push_back({"Thm-8.6", Mode::exhaustive, matrix + ", NP_1 and NP_2", thm_np_strong});
  r.push_back({"Thm-8.7", Mode::exhaustive, matrix + ", T", thm_tensor_strong});
  r.push_back({"Ex-8.8", Mode::fixture, "{0} x id on [0,1]^2, T", ex_tensor_strong});
  r.push_back({"Thm-8.9", Mode::exhaustive, matrix + ", Cartesian", thm_cartesian_strong});
  r.push_back({"Ex-8.10", Mode::fixture, "{0} on [0,1] x id on {0,2}, L", ex_lex_weak_product});
  r.push_back({"Ex-8.11", Mode::fixture, "[0,1] x 2x on [0,1], L", ex_lex_weak_factor});
  r.push_back({"Ex-8.12", Mode::fixture, "{0} on [0,1] x id on {0,2}, L", ex_lex_continuity});
  r.push_back({"Thm-8.13", Mode::exhaustive,
               "continuous multimaps X -o A, X a class <= 2 points, every A, r <= 2, NP_1 and NP_2",
               thm_np_retraction});
  r.push_back({"Lem-8.14", Mode::exhaustive,
               "continuous generators on S(X,1), X <= 3 points, and S(X,2), X <= 2 points, s = 2, 3",
               lemma_refinement});
  r.push_back({"Thm-8.15", Mode::exhaustive, sub2 + ", NP_1 and NP_2", thm_np_continuity});
  r.push_back({"Thm-8.16", Mode::exhaustive,
               "locally one-to-one generators on S(X,r), X <= 2 points, r = 1, 2, T", thm_tensor_continuity});
  r.push_back({"Thm-8.17", Mode::exhaustive, sub2 + ", Cartesian; products of multivalued retractions",
               thm_cartesian_continuity});
  r.push_back({"Thm-8.18", Mode::exhaustive, matrix + ", NP_1 and NP_2", thm_np_cp});
  r.push_back({"Ex-8.19", Mode::fixture, "f(0) = [0,1], f x f under T", ex_tensor_cp});
  r.push_back({"Thm-8.20", Mode::exhaustive, matrix + ", T", thm_tensor_cp});
  r.push_back({"Thm-8.21", Mode::exhaustive, matrix + ", Cartesian", thm_cartesian_cp});
  r.push_back({"Ex-8.22", Mode::fixture, "{0} -o [0,1] x {0,2} and const x id, L", ex_lex_cp});
  r.push_back({"Thm-8.23", Mode::exhaustive,
               "locally one-to-one generators on S(X,r), X <= 2 points, r = 1, 2, L", thm_lex_continuity});
}

}  // namespace dtop::verify
