#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

struct FactorMap {
  std::size_t x, y;
  std::vector<Index> t;
  bool cont, l11, iso;
};

bool table_locally_one_to_one(const ImageGraph& d, std::span<const Index> t) {
  for (std::size_t p = 0; p < d.size(); ++p) {
    auto n = d.closed_neighbors(p);
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = i + 1; j < n.size(); ++j)
        if (t[n[i]] == t[n[j]]) return false;
  }
  return true;
}

// Bijective and adjacency-preserving in both directions.
bool table_iso(const ImageGraph& d, const ImageGraph& c, std::span<const Index> t) {
  if (d.size() != c.size()) return false;
  std::vector<char> hit(c.size(), 0);
  for (Index v : t) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d.adjacent(i, j) != c.adjacent(t[i], t[j])) return false;
  return true;
}

const std::vector<ImageGraph>& small_images() {
  static const auto imgs = images_upto(3);
  return imgs;
}

// Every map between classes with <= 3 points, with its factor-level properties.
const std::vector<FactorMap>& factor_maps() {
  static const std::vector<FactorMap> maps = [] {
    const auto& imgs = small_images();
    std::vector<FactorMap> out;
    for (std::size_t i = 0; i < imgs.size(); ++i)
      for (std::size_t j = 0; j < imgs.size(); ++j)
        for_each_map(imgs[i].size(), imgs[j].size(), [&](std::span<const Index> t) {
          out.push_back({i, j, {t.begin(), t.end()}, is_continuous_table(imgs[i], imgs[j], t),
                         table_locally_one_to_one(imgs[i], t), table_iso(imgs[i], imgs[j], t)});
          return true;
        });
    return out;
  }();
  return maps;
}

struct ProductCase {
  const FactorMap& f1;
  const FactorMap& f2;
  const ProductSpace& dom;
  const ProductSpace& cod;
  const std::vector<Index>& t;
  bool cont() const { return is_continuous_table(dom.graph(), cod.graph(), t); }
  bool iso() const { return table_iso(dom.graph(), cod.graph(), t); }
  bool l11() const { return table_locally_one_to_one(dom.graph(), t); }
  std::string show() const {
    return verify::show(DigitalMap(dom.graph(), cod.graph(), t)) + " [" + dom.kind().str() + "]";
  }
};

// Visits f1 x f2 for every ordered pair of factor maps.
void for_each_product(Context& ctx, ProductKind kind, const std::function<void(const ProductCase&)>& fn) {
  const auto& maps = factor_maps();
  Products prods(small_images(), kind);
  for (const auto& f1 : maps)
    for (const auto& f2 : maps) {
      ctx.instance();
      const auto& dom = prods(f1.x, f2.x);
      const auto& cod = prods(f1.y, f2.y);
      auto t = product_table(dom, cod, f1.t, f2.t);
      fn(ProductCase{f1, f2, dom, cod, t});
    }
}

bool edges(std::size_t cls) { return has_edge(small_images()[cls]); }

// ---- normal products

void thm_np_continuity(Context& ctx) {
  for (int u : {1, 2})
    for_each_product(ctx, ProductKind::np(u), [&](const ProductCase& c) {
      ctx.expect(c.cont() == (c.f1.cont && c.f2.cont),
                 [&] { return "continuity iff fails for " + c.show(); });
    });
}

void thm_np_iso(Context& ctx) {
  for (int u : {1, 2})
    for_each_product(ctx, ProductKind::np(u), [&](const ProductCase& c) {
      bool iso = c.iso();
      ctx.expect(!iso || (c.f1.iso && c.f2.iso),
                 [&] { return "product iso with a non-iso factor: " + c.show(); });
      if (u == 2)
        ctx.expect(iso || !(c.f1.iso && c.f2.iso),
                   [&] { return "iso factors, product not iso: " + c.show(); });
    });
}

void projections_continuous(Context& ctx, const std::vector<ImageGraph>& factors, ProductKind kind,
                            std::size_t first, std::size_t last) {
  ProductSpace p(factors, kind);
  for (std::size_t i = first; i < last; ++i) {
    ctx.instance();
    auto f = projection(p, i);
    auto rep = is_continuous(f);
    ctx.expect(rep.continuous, [&] {
      return "p" + std::to_string(i + 1) + " discontinuous at " + show(*rep.violation) + " on " +
             show(p.graph());
    });
  }
}

void for_pairs_and_triples(const std::function<void(const std::vector<ImageGraph>&)>& fn) {
  const auto& imgs = small_images();
  for (const auto& a : imgs)
    for (const auto& b : imgs) fn({a, b});
  auto tiny = images_upto(2);
  for (const auto& a : tiny)
    for (const auto& b : tiny)
      for (const auto& c : tiny) fn({a, b, c});
}

void thm_np_projections(Context& ctx) {
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    for (int u = 1; u <= static_cast<int>(f.size()); ++u)
      projections_continuous(ctx, f, ProductKind::np(u), 0, f.size());
  });
}

// ---- tensor products

void prop_tensor_edges(Context& ctx) {
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    ctx.instance();
    ProductSpace p(f, ProductKind::tensor());
    if (!has_edge(p.graph())) return;
    for (const auto& g : f)
      ctx.expect(has_edge(g), [&] { return "T-edge in product but edgeless factor " + show(g); });
  });
  // Continuous maps into a tensor product that move along some component.
  auto tiny = images_upto(2);
  std::vector<ProductSpace> prods;
  for (const auto& a : tiny)
    for (const auto& b : tiny) prods.emplace_back(std::vector<ImageGraph>{a, b}, ProductKind::tensor());
  for (const auto& x : prods) {
    if (!has_edge(x.graph())) continue;
    auto comps = component_indices(x.graph());
    for (const auto& y : prods)
      for (const auto& f : continuous_maps(x.graph(), y.graph())) {
        ctx.instance();
        bool moves = std::any_of(comps.begin(), comps.end(), [&](const IndexSet& c) {
          return std::any_of(c.begin(), c.end(), [&](Index i) { return f[i] != f[c[0]]; });
        });
        if (!moves) continue;
        for (const auto& g : y.factors())
          ctx.expect(has_edge(g), [&] { return "non-constant " + show(f) + " into edgeless factor"; });
      }
  }
}

void ex_tensor_id_const(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto f = DigitalMap::identity(i01);
  auto g = DigitalMap::constant(i01, i01, Point{0});
  std::vector<DigitalMap> fs{f, g};
  auto p = product_map(fs, ProductKind::tensor());
  ctx.expect(is_continuous(f) && is_continuous(g), [] { return "factors should be continuous"; });
  auto rep = is_continuous(p);
  ctx.expect(!rep.continuous, [&] { return "id x const should be T-discontinuous: " + show(p); });
  ctx.note = "id x const discontinuous at " + show(*rep.violation);
}

void thm_tensor_factor_continuity(Context& ctx) {
  std::string singleton;
  for_each_product(ctx, ProductKind::tensor(), [&](const ProductCase& c) {
    if (!c.cont() || (c.f1.cont && c.f2.cont)) return;
    if (edges(c.f1.x) && edges(c.f2.x)) throw CheckFailed{"product continuous, factor not: " + c.show()};
    if (singleton.empty()) singleton = c.show();
  });
  ctx.note = "edgeless-factor counterexample to the unrestricted form: " + singleton;
}

void thm_tensor_local_injective(Context& ctx) {
  for_each_product(ctx, ProductKind::tensor(), [&](const ProductCase& c) {
    if (!(c.f1.cont && c.f1.l11 && c.f2.cont && c.f2.l11)) return;
    ctx.expect(c.cont() && c.l11(), [&] { return "locally 1-1 factors, bad product " + c.show(); });
  });
}

void thm_tensor_iso(Context& ctx) {
  std::string edgeless;
  for_each_product(ctx, ProductKind::tensor(), [&](const ProductCase& c) {
    bool iso = c.iso(), factors = c.f1.iso && c.f2.iso;
    ctx.expect(iso || !factors, [&] { return "iso factors, product not iso: " + c.show(); });
    if (!iso || factors) return;
    if (edges(c.f1.x) && edges(c.f2.x) && edges(c.f1.y) && edges(c.f2.y))
      throw CheckFailed{"product iso with a non-iso factor: " + c.show()};
    if (edgeless.empty()) edgeless = c.show();
  });
  ctx.note = "edgeless-factor counterexample to the unrestricted form: " + edgeless;
}

void thm_tensor_projections(Context& ctx) {
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    projections_continuous(ctx, f, ProductKind::tensor(), 0, f.size());
  });
  // Contrast: with c3 on the concatenated coordinates the second projection breaks.
  ctx.instance();
  auto x = fixtures::interval_graph(0, 1);
  auto y = img({{0, 0}, {1, 1}}, "c1");
  auto xy = fixtures::graph(ProductSpace({x, y}, ProductKind::tensor()).graph().image(), "c3");
  auto p2 = DigitalMap::from_function(xy, y, [](const Point& p) { return Point{p[1], p[2]}; });
  auto rep = is_continuous(p2);
  ctx.expect(!rep.continuous, [] { return "p2 on ([0,1] x {(0,0),(1,1)}, c3) should be discontinuous"; });
  ctx.note = "under c3 instead of T, p2 breaks at " + show(*rep.violation);
}

void prop_tensor_injection(Context& ctx) {
  const auto& imgs = small_images();
  for (const auto& a : imgs)
    for (const auto& b : imgs) {
      ProductSpace p({a, b}, ProductKind::tensor());
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& moving = i == 0 ? a : b;
        const auto& fixed = i == 0 ? b : a;
        if (!has_edge(moving)) continue;
        for (const auto& y : fixed.image().points()) {
          ctx.instance();
          std::vector<Point> base{y, y};
          auto f = injection(p, i, base);
          ctx.expect(!is_continuous(f).continuous, [&] { return "T injection continuous: " + show(f); });
        }
      }
    }
}

// ---- cartesian products

void thm_cartesian_continuity(Context& ctx) {
  for_each_product(ctx, ProductKind::cartesian(), [&](const ProductCase& c) {
    ctx.expect(c.cont() == (c.f1.cont && c.f2.cont),
               [&] { return "continuity iff fails for " + c.show(); });
  });
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    projections_continuous(ctx, f, ProductKind::cartesian(), 0, f.size());
  });
}

void prop_cartesian_injection(Context& ctx) {
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    ProductSpace p(f, ProductKind::cartesian());
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t b = 0; b < p.graph().size(); ++b) {
        ctx.instance();
        std::vector<Point> base;
        for (std::size_t k = 0; k < f.size(); ++k) base.push_back(f[k].point(p.part(b, k)));
        auto inj = injection(p, i, base);
        auto rep = is_continuous(inj);
        ctx.expect(rep.continuous, [&] { return "injection discontinuous: " + show(inj); });
      }
  });
}

void thm_cartesian_iso(Context& ctx) {
  for_each_product(ctx, ProductKind::cartesian(), [&](const ProductCase& c) {
    ctx.expect(c.iso() == (c.f1.iso && c.f2.iso), [&] { return "iso iff fails for " + c.show(); });
  });
}

// ---- lexicographic products

void ex_lex_const_id(Context& ctx) {
  ctx.instance();
  auto x1 = fixtures::interval_graph(0, 1), x2 = fixtures::interval_graph(0, 2);
  std::vector<DigitalMap> fs{DigitalMap::constant(x1, x2, Point{0}), DigitalMap::identity(x2)};
  auto p = product_map(fs, ProductKind::lex());
  auto rep = is_continuous(p);
  ctx.expect(!rep.continuous, [&] { return "const x id should be L-discontinuous: " + show(p); });
  ctx.note = "const x id discontinuous at " + show(*rep.violation);
}

void thm_lex_continuity(Context& ctx) {
  for_each_product(ctx, ProductKind::lex(), [&](const ProductCase& c) {
    bool cont = c.cont();
    ctx.expect(!cont || (c.f1.cont && c.f2.cont),
               [&] { return "L-continuous product with discontinuous factor: " + c.show(); });
    ctx.expect(!(cont && c.l11()) || (c.f1.l11 && c.f2.l11),
               [&] { return "locally 1-1 product with non-locally-1-1 factor: " + c.show(); });
    ctx.expect(!(c.f1.cont && c.f1.l11 && c.f2.cont && c.f2.l11) || cont,
               [&] { return "locally 1-1 continuous factors, discontinuous product: " + c.show(); });
  });
}

void thm_lex_iso(Context& ctx) {
  for_each_product(ctx, ProductKind::lex(), [&](const ProductCase& c) {
    ctx.expect(c.iso() == (c.f1.iso && c.f2.iso), [&] { return "iso iff fails for " + c.show(); });
  });
}

void ex_lex_projection(Context& ctx) {
  for (std::size_t v : {2, 3}) {
    std::vector<ImageGraph> f(v, fixtures::interval_graph(0, 2));
    ProductSpace p(f, ProductKind::lex());
    for (std::size_t i = 1; i < v; ++i) {
      ctx.instance();
      auto rep = is_continuous(projection(p, i));
      ctx.expect(!rep.continuous, [&] {
        return "p" + std::to_string(i + 1) + " continuous on [0,2]^" + std::to_string(v);
      });
      if (v == 2) {
        PointPair want{Point{0, 0}, Point{1, 2}};
        ctx.expect(*rep.violation == want,
                   [&] { return "p2 violation " + show(*rep.violation) + ", expected (0,0)~(1,2)"; });
      }
    }
  }
  ctx.note = "p2 on [0,2]^2 breaks at (0,0)~(1,2)";
}

void prop_lex_first_projection(Context& ctx) {
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    projections_continuous(ctx, f, ProductKind::lex(), 0, 1);
  });
}

void ex_lex_asymmetry(Context& ctx) {
  ctx.instance();
  auto a = fixtures::points_c1({0, 1}), b = fixtures::points_c1({0, 2});
  ProductSpace ab({a, b}, ProductKind::lex()), ba({b, a}, ProductKind::lex());
  ctx.expect(is_connected(ab.graph()), [] { return "{0,1} x {0,2} should be L-connected"; });
  ctx.expect(!is_connected(ba.graph()), [] { return "{0,2} x {0,1} should be L-disconnected"; });
  std::uint64_t tried = 0;
  auto iso = find_isomorphism(ab.graph(), ba.graph(), &tried);
  ctx.expect(!iso, [&] { return "unexpected isomorphism " + show(*iso); });
  ctx.expect(tried == 24, [&] { return "expected 24 bijections, tried " + std::to_string(tried); });
  ctx.note = "not isomorphic; 24 bijections checked";
}

// ---- permutations

void thm_permutation_iso(Context& ctx) {
  const std::vector<ProductKind> kinds{ProductKind::np(1), ProductKind::np(2), ProductKind::tensor(),
                                       ProductKind::cartesian()};
  auto check = [&](const std::vector<ImageGraph>& f, ProductKind kind) {
    std::vector<std::size_t> perm(f.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = (i + 1) % perm.size();
    std::vector<ImageGraph> g;
    for (auto i : perm) g.push_back(f[i]);
    ProductSpace p(f, kind), q(g, kind);
    std::vector<Index> t(p.graph().size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      std::vector<Index> parts;
      for (auto i : perm) parts.push_back(p.part(x, i));
      t[x] = static_cast<Index>(q.index(parts));
    }
    ctx.instance();
    ctx.expect(table_iso(p.graph(), q.graph(), t), [&] {
      return "coordinate permutation is not an iso on " + show(p.graph());
    });
  };
  for_pairs_and_triples([&](const std::vector<ImageGraph>& f) {
    for (auto kind : kinds)
      if (kind.kind != AdjKind::NP || kind.u <= static_cast<int>(f.size())) check(f, kind);
  });
}

}  // namespace

void add_product_map_checks(std::vector<TheoremCheck>& r) {
  const std::string maps = "all maps between image classes <= 3 points, both factors";
  const std::string spaces = "products of two classes <= 3 points and three classes <= 2 points";
  r.push_back({"Thm-3.7", Mode::exhaustive, maps + ", NP1 and NP2", thm_np_continuity});
  r.push_back({"Thm-3.8", Mode::exhaustive, maps + ", NP1 and NP2", thm_np_iso});
  r.push_back({"Thm-3.9", Mode::exhaustive, spaces + ", NP_u for u <= factors", thm_np_projections});
  r.push_back({"Prop-3.10", Mode::exhaustive, spaces + "; continuous maps between T products of classes <= 2 points",
               prop_tensor_edges});
  r.push_back({"Ex-3.12", Mode::fixture, "[0,1] with c1", ex_tensor_id_const});
  r.push_back({"Thm-3.13", Mode::exhaustive, maps + ", domain factors with an edge",
               thm_tensor_factor_continuity});
  r.push_back({"Thm-3.14", Mode::exhaustive, maps, thm_tensor_local_injective});
  r.push_back({"Thm-3.15", Mode::exhaustive, maps + ", all factors with an edge", thm_tensor_iso});
  r.push_back({"Thm-3.16", Mode::exhaustive, spaces, thm_tensor_projections});
  r.push_back({"Prop-3.17", Mode::exhaustive, "pairs of classes <= 3 points, all base points",
               prop_tensor_injection});
  r.push_back({"Thm-3.17", Mode::exhaustive, maps + "; projections on " + spaces,
               thm_cartesian_continuity});
  r.push_back({"Prop-3.18", Mode::exhaustive, spaces + ", all base points", prop_cartesian_injection});
  r.push_back({"Thm-3.19", Mode::exhaustive, maps, thm_cartesian_iso});
  r.push_back({"Ex-3.20", Mode::fixture, "[0,1] x [0,2] -> [0,2]^2", ex_lex_const_id});
  r.push_back({"Thm-3.21", Mode::exhaustive, maps, thm_lex_continuity});
  r.push_back({"Thm-3.22", Mode::exhaustive, maps, thm_lex_iso});
  r.push_back({"Ex-3.23", Mode::fixture, "[0,2]^2 and [0,2]^3 with L", ex_lex_projection});
  r.push_back({"Thm-3.24", Mode::exhaustive, spaces + ", NP1, NP2, T, X", thm_permutation_iso});
  r.push_back({"Prop-3.25", Mode::exhaustive, spaces, prop_lex_first_projection});
  r.push_back({"Ex-3.26", Mode::fixture, "{0,1} x {0,2} and {0,2} x {0,1} with L", ex_lex_asymmetry});
}

}  // namespace dtop::verify
