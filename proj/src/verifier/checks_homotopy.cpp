#include <algorithm>
#include <map>
#include <numeric>

#include "internal.hpp"

namespace dtop::verify {

namespace {

// ---- brute-force map graph: one-step homotopies between continuous maps

struct MapGraph {
  std::vector<std::vector<Index>> maps;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> comp;

  std::size_t find(std::size_t i) {
    while (comp[i] != i) i = comp[i] = comp[comp[i]];
    return i;
  }

  // Shortest one-step chain lengths from src by repeated edge relaxation.
  std::vector<int> distances(std::size_t src) const {
    std::vector<int> d(maps.size(), -1);
    d[src] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < maps.size(); ++a) {
        if (d[a] < 0) continue;
        for (auto b : adj[a])
          if (d[b] < 0 || d[a] + 1 < d[b]) {
            d[b] = d[a] + 1;
            changed = true;
          }
      }
    }
    return d;
  }
};

MapGraph brute_map_graph(const ImageGraph& x, const ImageGraph& y, std::optional<Index> fixed) {
  MapGraph g;
  for_each_map(x.size(), y.size(), [&](std::span<const Index> t) {
    if (is_continuous_table(x, y, t)) g.maps.emplace_back(t.begin(), t.end());
    return true;
  });
  const std::size_t n = g.maps.size();
  g.adj.resize(n);
  g.comp.resize(n);
  std::iota(g.comp.begin(), g.comp.end(), 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto &fa = g.maps[a], &fb = g.maps[b];
      if (fixed && fa[*fixed] != fb[*fixed]) continue;
      bool step = true;
      for (std::size_t p = 0; p < x.size() && step; ++p) step = y.adjacent_or_equal(fa[p], fb[p]);
      if (!step) continue;
      g.adj[a].push_back(b);
      g.adj[b].push_back(a);
      g.comp[g.find(a)] = g.find(b);
    }
  return g;
}

void criterion_homotopy_oracle(Context& ctx) {
  auto imgs = images_upto(4);
  std::size_t compared = 0, searched = 0;
  for (const auto& x : imgs)
    for (const auto& y : imgs)
      for (bool pointed : {false, true}) {
        std::optional<Index> fixed;
        if (pointed) fixed = 0;
        auto g = brute_map_graph(x, y, fixed);
        std::optional<Point> base;
        if (pointed) base = x.point(0);
        std::vector<char> rooted(g.maps.size(), 0);
        for (std::size_t r = 0; r < g.maps.size(); ++r) {
          if (rooted[g.find(r)]) continue;
          rooted[g.find(r)] = 1;
          DigitalMap f(x, y, g.maps[r]);
          HomotopyClass cls(f, base, kSearchBudget);
          ctx.searched(cls.status());
          auto dist = g.distances(r);
          std::size_t members = 0;
          for (std::size_t m = 0; m < g.maps.size(); ++m) {
            ctx.instance();
            ++compared;
            auto d = cls.distance(g.maps[m]);
            bool same = g.find(m) == g.find(r);
            members += same;
            ctx.expect(d.has_value() == same && (!same || *d == dist[m]), [&] {
              return "class of " + show(f) + " disagrees on " + show(DigitalMap(x, y, g.maps[m])) +
                     (pointed ? " (pointed)" : "");
            });
          }
          ctx.expect(members == cls.size(), [&] { return "class size mismatch for " + show(f); });
        }
        // Direct pairwise searches on a seeded sample.
        for (int s = 0; s < 4 && !g.maps.empty(); ++s) {
          std::size_t a = ctx.pick(g.maps.size()), b = ctx.pick(g.maps.size());
          DigitalMap fa(x, y, g.maps[a]), fb(x, y, g.maps[b]);
          auto res = are_homotopic(fa, fb, base, kSearchBudget);
          ctx.searched(res.status);
          ctx.instance();
          ++searched;
          bool same = g.find(a) == g.find(b);
          ctx.expect(res.found() == same, [&] {
            return "are_homotopic disagrees on " + show(fa) + " vs " + show(fb);
          });
          if (!same) continue;
          int d = g.distances(a)[b];
          ctx.expect((d == 0 || res.witness->length() == d) && is_homotopy(*res.witness, base).ok,
                     [&] { return "bad witness for " + show(fa) + " vs " + show(fb); });
        }
      }
  ctx.note = std::to_string(compared) + " class memberships and " + std::to_string(searched) +
             " pairwise searches matched the brute-force map graph";
}

// ---- equivalence relation

void prop_equivalence_relation(Context& ctx) {
  auto imgs = images_upto(3);
  for (const auto& x : imgs)
    for (const auto& y : imgs) {
      auto maps = continuous_maps(x, y);
      std::map<std::vector<Index>, std::vector<std::vector<Index>>> classes;
      for (const auto& f : maps) {
        ctx.instance();
        HomotopyClass cls(f, std::nullopt, kSearchBudget);
        ctx.searched(cls.status());
        ctx.expect(cls.distance(f.table()) == 0, [&] { return "f not homotopic to itself: " + show(f); });
        auto members = cls.maps();
        std::sort(members.begin(), members.end());
        classes[f.table()] = members;
      }
      for (const auto& f : maps)
        for (const auto& g : classes[f.table()]) {
          ctx.instance();
          ctx.expect(classes[g] == classes[f.table()], [&] {
            return "classes of " + show(f) + " and a member differ (symmetry or transitivity)";
          });
          HomotopyClass cls(f, std::nullopt, kSearchBudget);
          auto w = cls.witness_to(g);
          ctx.expect(w && is_homotopy(reverse(*w)).ok,
                     [&] { return "reversed witness invalid from " + show(f); });
        }
    }
}

// ---- tensor counterexamples

void ex_tensor_homotopy(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto id = DigitalMap::identity(i01);
  auto c = DigitalMap::constant(i01, i01, Point{0});
  auto fac = are_homotopic(id, c, std::nullopt, kSearchBudget);
  ctx.searched(fac.status);
  ctx.expect(fac.found(), [] { return "id and const on [0,1] should be homotopic"; });
  std::vector<DigitalMap> fs{id, id}, gs{c, c};
  auto t = are_homotopic(product_map(fs, ProductKind::tensor()), product_map(gs, ProductKind::tensor()),
                         std::nullopt, kSearchBudget);
  ctx.searched(t.status);
  ctx.expect(!t.found(), [] { return "id x id and const x const should not be T-homotopic"; });
  auto x = are_homotopic(product_map(fs, ProductKind::cartesian()),
                         product_map(gs, ProductKind::cartesian()), std::nullopt, kSearchBudget);
  ctx.searched(x.status);
  ctx.expect(x.found(), [] { return "the Cartesian products should be homotopic"; });
  ctx.note = "factor homotopy of length " + std::to_string(fac.witness->length()) +
             "; none between the T products";
}

void ex_tensor_homotopy_type(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1), pt = fixtures::points_c1({0});
  auto fac = homotopy_equivalent(i01, pt, std::nullopt, kSearchBudget);
  ctx.searched(fac.status);
  ctx.expect(fac.found(), [] { return "[0,1] and a point should have the same homotopy type"; });
  auto sq = ProductSpace({i01, i01}, ProductKind::tensor()).graph();
  auto p2 = ProductSpace({pt, pt}, ProductKind::tensor()).graph();
  auto prod = homotopy_equivalent(sq, p2, std::nullopt, kSearchBudget);
  ctx.searched(prod.status);
  ctx.expect(!prod.found(), [] { return "[0,1]^2 under T should not be equivalent to a point"; });
  ctx.note = "[0,1] ~ {0} but ([0,1]^2, T) has " + std::to_string(components(sq).size()) +
             " components";
}

// ---- Cartesian products

void thm_cartesian_homotopy(Context& ctx) {
  // Domain factors <= 2 points and codomains <= 6 points keep every class below 6^4 maps.
  auto imgs = images_upto(3);
  const std::size_t small_doms = images_upto(2).size();
  Products prods(imgs, ProductKind::cartesian());
  std::map<std::pair<std::size_t, std::size_t>, std::vector<DigitalMap>> cache;
  auto maps = [&](std::size_t a, std::size_t b) -> const std::vector<DigitalMap>& {
    auto it = cache.find({a, b});
    if (it == cache.end()) it = cache.emplace(std::pair{a, b}, continuous_maps(imgs[a], imgs[b])).first;
    return it->second;
  };
  int staged = 0;
  for (int trial = 0; trial < 300; ++trial) {
    ctx.instance();
    std::size_t xs[2], ys[2];
    std::vector<DigitalMap> f, g;
    do {
      for (int i = 0; i < 2; ++i) ys[i] = ctx.pick(imgs.size());
    } while (imgs[ys[0]].size() * imgs[ys[1]].size() > 6);
    for (int i = 0; i < 2; ++i) {
      xs[i] = ctx.pick(small_doms);
      const auto& m = maps(xs[i], ys[i]);
      f.push_back(m[ctx.pick(m.size())]);
      g.push_back(m[ctx.pick(m.size())]);
    }
    const auto& dom = prods(xs[0], xs[1]);
    const auto& cod = prods(ys[0], ys[1]);
    auto pf = product_map(f, dom, cod), pg = product_map(g, dom, cod);
    std::size_t b = ctx.pick(dom.graph().size());
    for (bool pointed : {false, true}) {
      std::optional<Point> base;
      std::vector<std::optional<Point>> fb(2);
      if (pointed) {
        base = dom.graph().point(b);
        for (int i = 0; i < 2; ++i) fb[i] = imgs[xs[i]].point(dom.part(b, i));
      }
      std::vector<HomotopyWitness> ws;
      bool all = true;
      for (int i = 0; i < 2; ++i) {
        auto r = are_homotopic(f[i], g[i], fb[i], kSearchBudget);
        ctx.searched(r.status);
        all = all && r.found();
        if (r.found()) ws.push_back(*r.witness);
      }
      auto pr = are_homotopic(pf, pg, base, kSearchBudget);
      ctx.searched(pr.status);
      ctx.expect(pr.found() == all, [&] {
        return "product " + show(pf) + " vs " + show(pg) + (pointed ? " (pointed)" : "") +
               ": product homotopic " + (pr.found() ? "yes" : "no") + ", factors " +
               (all ? "yes" : "no");
      });
      if (!all) continue;
      auto h = staged_product_homotopy(dom, cod, ws);
      ctx.expect(h.f() == pf && h.g() == pg && is_homotopy(h, base).ok,
                 [&] { return "staged homotopy invalid for " + show(pf); });
      ++staged;
    }
  }
  ctx.note = "300 random factor pairs; " + std::to_string(staged) + " staged product homotopies validated";
}

bool equivalent(Context& ctx, const ImageGraph& x, const ImageGraph& y,
                const std::optional<PointPair>& pointed = std::nullopt) {
  auto r = homotopy_equivalent(x, y, pointed, kSearchBudget);
  ctx.searched(r.status);
  return r.found();
}

void cor_cartesian_equivalence(Context& ctx) {
  auto imgs = images_upto(2);
  std::vector<std::vector<char>> eq(imgs.size(), std::vector<char>(imgs.size()));
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = 0; j < imgs.size(); ++j) eq[i][j] = equivalent(ctx, imgs[i], imgs[j]);
  Products prods(imgs, ProductKind::cartesian());
  std::string swap;
  const std::size_t n = imgs.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          ctx.instance();
          const auto &x = prods(a, b).graph(), &y = prods(c, d).graph();
          bool factors = eq[a][c] && eq[b][d];
          bool prod = equivalent(ctx, x, y);
          ctx.expect(!factors || prod, [&] { return "equivalent factors, products not: " + show(x) + " vs " + show(y); });
          if (factors) {
            PointPair base{x.point(0), y.point(0)};
            PointPair fb0{imgs[a].point(0), imgs[c].point(0)}, fb1{imgs[b].point(0), imgs[d].point(0)};
            if (equivalent(ctx, imgs[a], imgs[c], fb0) && equivalent(ctx, imgs[b], imgs[d], fb1))
              ctx.expect(equivalent(ctx, x, y, base),
                         [&] { return "pointed equivalent factors, products not: " + show(x); });
          }
          if (!prod || factors) continue;
          ctx.expect(eq[a][d] && eq[b][c],
                     [&] { return "equivalent products, factors not even after reordering: " + show(x) + " vs " + show(y); });
          if (swap.empty()) swap = show(x) + " ~ " + show(y);
        }
  ctx.note = "product-to-factor direction holds only up to factor order, e.g. " + swap;
}

// ---- lexicographic products

struct LexCase {
  ProductSpace prod;
  std::size_t k;
};

// Lexicographic products whose first nontrivial factor is connected.
std::vector<LexCase> lex_cases(std::size_t max_points) {
  std::vector<LexCase> out;
  auto add = [&](std::vector<ImageGraph> f) {
    auto k = std::find_if(f.begin(), f.end(), [](const ImageGraph& g) { return g.size() > 1; });
    if (k == f.end() || !is_connected(*k)) return;
    std::size_t n = 1;
    for (const auto& g : f) n *= g.size();
    if (n > max_points) return;
    std::size_t ki = static_cast<std::size_t>(k - f.begin());
    out.push_back({ProductSpace(std::move(f), ProductKind::lex()), ki});
  };
  auto three = images_upto(3), two = images_upto(2);
  for (const auto& a : three)
    for (const auto& b : three) add({a, b});
  for (const auto& a : two)
    for (const auto& b : two)
      for (const auto& c : two) add({a, b, c});
  return out;
}

std::vector<Point> base_of(const ProductSpace& p) {
  std::vector<Point> b;
  for (const auto& f : p.factors()) b.push_back(f.point(0));
  return b;
}

void thm_lex_collapse(Context& ctx) {
  int explicit_ok = 0, explicit_bad = 0;
  std::string bad_example;
  for (const auto& [prod, k] : lex_cases(6)) {
    ctx.instance();
    const auto& x = prod.graph();
    auto base = base_of(prod);
    Point x0 = concat(base);
    auto inj = injection(prod, k, base);
    auto proj = projection(prod, k);
    ctx.expect(is_continuous(inj) && is_continuous(proj),
               [&] { return "I_k or p_k discontinuous on " + show(x); });
    ctx.expect(compose(proj, inj) == DigitalMap::identity(prod.factors()[k]),
               [&] { return "p_k I_k is not the identity on " + show(x); });
    auto target = compose(inj, proj);
    auto r = are_homotopic(DigitalMap::identity(x), target, x0, kSearchBudget);
    ctx.searched(r.status);
    ctx.expect(r.found() && is_homotopy(*r.witness, x0).ok,
               [&] { return "no pointed homotopy 1_X ~ I_k p_k on " + show(x); });
    if (is_homotopy(lex_collapse_homotopy(prod, x0), x0).ok) {
      ++explicit_ok;
    } else {
      ++explicit_bad;
      if (bad_example.empty()) bad_example = show(x);
    }
  }
  ctx.note = "pointed 1_X ~ I_k p_k found by search in every case; the two-step formula is a homotopy in " +
             std::to_string(explicit_ok) + " cases and fails in " + std::to_string(explicit_bad) +
             (bad_example.empty() ? "" : ", first on " + bad_example);
}

void thm_lex_pointed_equivalence(Context& ctx) {
  std::string fixture;
  for (const auto& [prod, k] : lex_cases(6)) {
    ctx.instance();
    const auto& x = prod.graph();
    const auto& xk = prod.factors()[k];
    Point x0 = concat(base_of(prod));
    PointPair base{x0, xk.point(0)};
    auto r = homotopy_equivalent(x, xk, base, kSearchBudget);
    ctx.searched(r.status);
    ctx.expect(r.found(), [&] { return "no pointed equivalence between " + show(x) + " and " + show(xk); });
    const auto& cert = *r.witness;
    ctx.expect(cert.f(x0) == xk.point(0) && cert.g(xk.point(0)) == x0 &&
                   is_homotopy(cert.gf_to_identity, x0).ok &&
                   is_homotopy(cert.fg_to_identity, xk.point(0)).ok,
               [&] { return "certificate fails validation on " + show(x); });
    if (prod.factors().size() == 2 && x.size() == 4 && k == 0 && prod.factors()[1].edge_count() == 0)
      fixture = show(x) + " ~ " + show(xk) + " via f = " + cert.f.str() + ", g = " + cert.g.str();
  }
  ctx.note = "certificates validated; " + fixture;
}

// Pointed 1_P ~ I_k p_k certifies P ~ X_k for a lexicographic product P.
bool collapse_certified(Context& ctx, const ProductSpace& prod, std::size_t k) {
  auto base = base_of(prod);
  Point x0 = concat(base);
  auto target = compose(injection(prod, k, base), projection(prod, k));
  auto r = are_homotopic(DigitalMap::identity(prod.graph()), target, x0, kSearchBudget);
  ctx.searched(r.status);
  return r.found() && is_homotopy(*r.witness, x0).ok;
}

void cor_lex_swap_types(Context& ctx) {
  // Literal form: two discrete images of different types whose products coincide.
  ctx.instance();
  auto d2 = fixtures::points_c1({0, 2}), d3 = fixtures::points_c1({0, 2, 4});
  auto d23 = ProductSpace({d2, d3}, ProductKind::lex()).graph();
  auto d32 = ProductSpace({d3, d2}, ProductKind::lex()).graph();
  ctx.expect(!equivalent(ctx, d2, d3) && equivalent(ctx, d23, d32),
             [] { return "expected {0,2} x {0,2,4} ~ {0,2,4} x {0,2} under L"; });

  // Connected factors, where the collapse applies.
  std::vector<ImageGraph> imgs;
  for (const auto& g : images_upto(3))
    if (g.size() > 1 && is_connected(g)) imgs.push_back(g);
  imgs.push_back(fixtures::graph(DigitalImage(fixtures::msc8()), "c2"));
  int pairs = 0;
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = 0; j < imgs.size(); ++j) {
      ctx.instance();
      // Products with MSC_8 are searched only against the two-point edge.
      if (imgs[i].size() * imgs[j].size() > 12) continue;
      if (equivalent(ctx, imgs[i], imgs[j])) continue;
      ++pairs;
      ProductSpace xy({imgs[i], imgs[j]}, ProductKind::lex()), yx({imgs[j], imgs[i]}, ProductKind::lex());
      if (xy.graph().size() <= 6) {
        ctx.expect(!equivalent(ctx, xy.graph(), yx.graph()),
                   [&] { return "L products equivalent: " + show(imgs[i]) + ", " + show(imgs[j]); });
        continue;
      }
      // X x Y ~ X and Y x X ~ Y with X, Y inequivalent rules out X x Y ~ Y x X.
      ctx.expect(collapse_certified(ctx, xy, 0) && collapse_certified(ctx, yx, 0), [&] {
        return "no collapse certificate for " + show(imgs[i]) + " and " + show(imgs[j]);
      });
    }
  ctx.note = "literal form fails on discrete {0,2}, {0,2,4} (both products are 6 isolated points); "
             "connected form holds on " + std::to_string(pairs) + " inequivalent pairs including MSC_8";
}

void cor_lex_equivalence(Context& ctx) {
  auto cases = lex_cases(4);
  for (const auto& [p, j] : cases)
    for (const auto& [q, k] : cases) {
      ctx.instance();
      const auto &xj = p.factors()[j], &yk = q.factors()[k];
      PointPair fb{xj.point(0), yk.point(0)};
      PointPair pb{concat(base_of(p)), concat(base_of(q))};
      if (equivalent(ctx, xj, yk))
        ctx.expect(equivalent(ctx, p.graph(), q.graph()),
                   [&] { return "equivalent X_j, Y_k but products not: " + show(p.graph()) + " vs " + show(q.graph()); });
      if (equivalent(ctx, xj, yk, fb))
        ctx.expect(equivalent(ctx, p.graph(), q.graph(), pb),
                   [&] { return "pointed equivalent X_j, Y_k but products not: " + show(p.graph()); });
    }
}

}  // namespace

void add_homotopy_checks(std::vector<TheoremCheck>& r) {
  r.push_back({"Def-2.15", Mode::exhaustive,
               "all pairs of classes <= 4 points, free and pointed, against a brute-force map graph",
               criterion_homotopy_oracle});
  r.push_back({"Prop-2.16", Mode::exhaustive, "continuous maps between classes <= 3 points",
               prop_equivalence_relation});
  r.push_back({"Ex-5.1", Mode::fixture, "[0,1] and [0,1]^2", ex_tensor_homotopy});
  r.push_back({"Ex-5.2", Mode::fixture, "[0,1]^2 under T against a point", ex_tensor_homotopy_type});
  r.push_back({"Thm-5.3", Mode::randomized, "300 random pairs of continuous factor maps, domains <= 2 points, codomain products <= 6 points",
               thm_cartesian_homotopy});
  r.push_back({"Cor-5.4", Mode::exhaustive, "Cartesian products of two classes <= 2 points",
               cor_cartesian_equivalence});
  r.push_back({"Thm-5.5", Mode::exhaustive, "L products <= 6 points with connected first nontrivial factor",
               thm_lex_collapse});
  r.push_back({"Thm-5.6", Mode::exhaustive, "L products <= 6 points with connected first nontrivial factor",
               thm_lex_pointed_equivalence});
  r.push_back({"Cor-5.7", Mode::exhaustive, "connected classes with 2..3 points, and MSC_8 against [0,1]", cor_lex_swap_types});
  r.push_back({"Cor-5.8", Mode::exhaustive, "pairs of L products <= 4 points with connected first nontrivial factor",
               cor_lex_equivalence});
}

}  // namespace dtop::verify
