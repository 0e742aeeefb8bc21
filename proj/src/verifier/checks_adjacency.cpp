#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

// First pair adjacent in a but not in b; both graphs share one point set.
std::optional<PointPair> not_dominated(const ImageGraph& a, const ImageGraph& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (Index j : a.neighbors(i))
      if (!b.adjacent(i, j)) return PointPair{a.point(i), a.point(j)};
  return std::nullopt;
}

bool same_edges(const ImageGraph& a, const ImageGraph& b) {
  return !not_dominated(a, b) && !not_dominated(b, a);
}

IndexSet image_of(const DigitalMap& f, std::span<const Index> a) {
  IndexSet out;
  for (Index x : a) out.push_back(f[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IndexSet members(std::uint32_t mask, std::size_t n) {
  IndexSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) s.push_back(static_cast<Index>(i));
  return s;
}

// Every adjacency in the pool is bound on the same product point set.
std::vector<ImageGraph> adjacency_pool(const ImageGraph& a, const ImageGraph& b) {
  std::vector<ImageGraph> pool;
  for (auto kind : {ProductKind::np(1), ProductKind::np(2), ProductKind::tensor(),
                    ProductKind::cartesian(), ProductKind::lex()})
    pool.push_back(ProductSpace({a, b}, kind).graph());
  const auto& pts = pool[0].image();
  for (int u = 1; u <= static_cast<int>(pts.dim()); ++u)
    pool.emplace_back(pts, AdjacencyOracle::cu(u, pts.dim()));
  return pool;
}

void prop_cartesian_is_np1(Context& ctx) {
  auto imgs = images_upto(4);
  for (const auto& a : imgs)
    for (const auto& b : imgs) {
      ctx.instance();
      ProductSpace x({a, b}, ProductKind::cartesian()), n({a, b}, ProductKind::np(1));
      ctx.expect(same_edges(x.graph(), n.graph()),
                 [&] { return "edge sets differ on " + show(a) + " x " + show(b); });
    }
  auto small = images_upto(2);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        ctx.instance();
        ProductSpace x({a, b, c}, ProductKind::cartesian()), n({a, b, c}, ProductKind::np(1));
        ctx.expect(same_edges(x.graph(), n.graph()), [&] {
          return "edge sets differ on " + show(a) + " x " + show(b) + " x " + show(c);
        });
      }
}

void thm_continuity_by_adjacency(Context& ctx) {
  for (const auto& inst : map_instances(images_upto(3), false)) {
    ctx.instance();
    const auto& f = inst.f;
    const auto& x = f.domain();
    bool by_sets = true;
    for (std::uint32_t m = 1; m < (1u << x.size()) && by_sets; ++m) {
      auto a = members(m, x.size());
      if (brute_connected(x, a) && !brute_connected(f.codomain(), image_of(f, a))) by_sets = false;
    }
    ctx.expect(by_sets == is_continuous(f).continuous,
               [&] { return "set and adjacency forms disagree on " + show(f); });
  }
}

void thm_composition(Context& ctx) {
  auto imgs = images_upto(3);
  for (const auto& a : imgs)
    for (const auto& b : imgs) {
      auto fs = continuous_maps(a, b);
      for (const auto& c : imgs) {
        auto gs = continuous_maps(b, c);
        for (const auto& f : fs)
          for (const auto& g : gs) {
            ctx.instance();
            auto h = compose(g, f);
            ctx.expect(is_continuous(h).continuous,
                       [&] { return "g o f discontinuous: f = " + show(f) + ", g = " + show(g); });
          }
      }
    }
}

void ex_constant(Context& ctx) {
  auto imgs = images_upto(4);
  for (const auto& x : imgs)
    for (const auto& y : imgs)
      for (const auto& p : y.image().points()) {
        ctx.instance();
        auto f = DigitalMap::constant(x, y, p);
        ctx.expect(is_continuous(f).continuous, [&] { return "constant discontinuous: " + show(f); });
      }
}

void ex_identity(Context& ctx) {
  for (const auto& x : images_upto(4)) {
    ctx.instance();
    auto f = DigitalMap::identity(x);
    ctx.expect(is_continuous(f).continuous, [&] { return "identity discontinuous: " + show(f); });
  }
}

void ex_domination_list(Context& ctx) {
  auto dominated = [&](const ImageGraph& a, const ImageGraph& b, const std::string& what) {
    ctx.instance();
    auto bad = not_dominated(a, b);
    ctx.expect(!bad, [&] { return what + " fails at " + show(*bad) + " in " + show(a.image()); });
  };
  for (std::size_t n = 1; n <= 3; ++n) {
    auto w = cube(n, -1, 1);
    for (int u = 1; u <= static_cast<int>(n); ++u)
      for (int v = u; v <= static_cast<int>(n); ++v)
        dominated(ImageGraph(w, AdjacencyOracle::cu(u, n)), ImageGraph(w, AdjacencyOracle::cu(v, n)),
                  "c" + std::to_string(u) + " >= c" + std::to_string(v));
  }
  auto imgs = images_upto(3);
  for (const auto& a : imgs)
    for (const auto& b : imgs) {
      std::vector<ImageGraph> f{a, b};
      auto np1 = ProductSpace(f, ProductKind::np(1)).graph();
      auto np2 = ProductSpace(f, ProductKind::np(2)).graph();
      auto t = ProductSpace(f, ProductKind::tensor()).graph();
      auto x = ProductSpace(f, ProductKind::cartesian()).graph();
      auto l = ProductSpace(f, ProductKind::lex()).graph();
      dominated(np1, np2, "NP1 >= NP2");
      dominated(t, np2, "T >= NP2");
      dominated(np1, l, "NP1 >= L");
      dominated(np2, l, "NP2 >= L");
      dominated(t, l, "T >= L");
      dominated(x, l, "X >= L");
    }
  auto small = images_upto(2);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        std::vector<ImageGraph> f{a, b, c};
        std::vector<ImageGraph> np;
        for (int u = 1; u <= 3; ++u) np.push_back(ProductSpace(f, ProductKind::np(u)).graph());
        auto t = ProductSpace(f, ProductKind::tensor()).graph();
        auto l = ProductSpace(f, ProductKind::lex()).graph();
        dominated(np[0], np[1], "NP1 >= NP2");
        dominated(np[1], np[2], "NP2 >= NP3");
        dominated(t, np[2], "T >= NP3");
        for (const auto& g : np) dominated(g, l, "NP_u >= L");
        dominated(t, l, "T >= L");
      }
}

void ex_neither_dominates(Context& ctx) {
  ctx.instance();
  auto a = AdjacencyOracle::bind(parse_adjacency("T(c2@3,c2@3)"), 6);
  auto b = AdjacencyOracle::bind(parse_adjacency("T(c1@3,c3@3)"), 6);
  Point p{0, 0, 0, 0, 0, 0}, q{1, 1, 0, 1, 1, 0}, r{1, 0, 0, 1, 1, 1};
  ctx.expect(a.adjacent(p, q) && !b.adjacent(p, q),
             [] { return "p,q should be T(c2,c2)-adjacent and not T(c1,c3)-adjacent"; });
  ctx.expect(b.adjacent(p, r) && !a.adjacent(p, r),
             [] { return "p,r should be T(c1,c3)-adjacent and not T(c2,c2)-adjacent"; });
  auto w = cube(6, 0, 1);
  ctx.expect(!dominates(a, b, w) && !dominates(b, a, w),
             [] { return "dominates() should be false both ways on [0,1]^6"; });
  auto ab = domination_counterexample(a, b, w), ba = domination_counterexample(b, a, w);
  ctx.note = "T(c2,c2) !>= T(c1,c3) at " + show(*ab) + "; T(c1,c3) !>= T(c2,c2) at " + show(*ba);
}

void prop_domination_transitive(Context& ctx) {
  auto imgs = images_upto(3);
  for (const auto& a : imgs)
    for (const auto& b : imgs) {
      auto pool = adjacency_pool(a, b);
      const std::size_t n = pool.size();
      std::vector<std::vector<char>> dom(n, std::vector<char>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dom[i][j] = !not_dominated(pool[i], pool[j]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            ctx.instance();
            ctx.expect(!(dom[i][j] && dom[j][k]) || dom[i][k], [&] {
              return pool[i].adjacency().str() + " >= " + pool[j].adjacency().str() + " >= " +
                     pool[k].adjacency().str() + " but not transitive on " + show(pool[i].image());
            });
          }
    }
}

std::vector<ImageGraph> window_pool(const DigitalImage& w) {
  std::vector<ImageGraph> pool;
  for (auto spec : {"c1", "c2", "NP1(c1,c1)", "NP2(c1,c1)", "T(c1,c1)", "L(c1,c1)"})
    pool.push_back(fixtures::graph(w, spec));
  return pool;
}

// Continuity only improves when the domain adjacency shrinks or the codomain one grows.
void prop_domination_monotone(Context& ctx) {
  const std::vector<std::pair<DigitalImage, DigitalImage>> windows = {
      {cube(2, 0, 1), cube(2, 0, 1)}, {box({{0, 2}, {0, 1}}), cube(2, 0, 1)}};
  for (const auto& [wx, wy] : windows) {
    auto px = window_pool(wx), py = window_pool(wy);
    const std::size_t k = px.size();
    std::vector<std::vector<char>> dx(k, std::vector<char>(k)), dy = dx;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        dx[i][j] = !not_dominated(px[i], px[j]);
        dy[i][j] = !not_dominated(py[i], py[j]);
      }
    for_each_map(wx.size(), wy.size(), [&](std::span<const Index> t) {
      std::vector<std::vector<char>> cont(k, std::vector<char>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) cont[a][b] = is_continuous_table(px[a], py[b], t);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          if (!cont[a][b]) continue;
          for (std::size_t c = 0; c < k; ++c) {
            ctx.instance();
            auto f = [&] { return show(DigitalMap(px[a], py[b], {t.begin(), t.end()})); };
            ctx.expect(!dy[b][c] || cont[a][c], [&] {
              return "codomain weakening to " + py[c].adjacency().str() + " breaks " + f();
            });
            ctx.expect(!dx[c][a] || cont[c][b], [&] {
              return "domain weakening to " + px[c].adjacency().str() + " breaks " + f();
            });
          }
        }
      return true;
    });
  }
}

bool brute_locally_one_to_one(const DigitalMap& f) {
  const auto& x = f.domain();
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto n = x.closed_neighbors(p);
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = i + 1; j < n.size(); ++j)
        if (f[n[i]] == f[n[j]]) return false;
  }
  return true;
}

void def_locally_one_to_one(Context& ctx) {
  for (const auto& inst : map_instances(images_upto(3), false)) {
    ctx.instance();
    bool l = is_locally_one_to_one(inst.f);
    ctx.expect(l == brute_locally_one_to_one(inst.f),
               [&] { return "locally 1-1 test disagrees with brute force on " + show(inst.f); });
    ctx.expect(!is_injective(inst.f) || l,
               [&] { return "injective but not locally 1-1: " + show(inst.f); });
  }
}

}  // namespace

void add_adjacency_checks(std::vector<TheoremCheck>& r) {
  r.push_back({"Prop-2.6", Mode::exhaustive, "pairs of image classes <= 4 points, triples <= 2",
               prop_cartesian_is_np1});
  r.push_back({"Thm-2.10", Mode::exhaustive, "all maps between image classes <= 3 points",
               thm_continuity_by_adjacency});
  r.push_back({"Thm-2.11", Mode::exhaustive, "continuous f, g over image classes <= 3 points",
               thm_composition});
  r.push_back({"Ex-2.12", Mode::exhaustive, "constant maps, image classes <= 4 points", ex_constant});
  r.push_back({"Ex-2.13", Mode::exhaustive, "identity maps, image classes <= 4 points", ex_identity});
  r.push_back({"Ex-3.2", Mode::exhaustive, "c_u windows in Z^1..Z^3, products of classes",
               ex_domination_list});
  r.push_back({"Ex-3.3", Mode::fixture, "Z^6, window [0,1]^6", ex_neither_dominates});
  r.push_back({"Prop-3.4", Mode::exhaustive, "adjacency pools on products of classes <= 3 points",
               prop_domination_transitive});
  r.push_back({"Prop-3.5", Mode::exhaustive, "all maps between [0,1]^2 and [0,2]x[0,1] windows, pooled adjacencies",
               prop_domination_monotone});
  r.push_back({"Def-3.11", Mode::exhaustive, "all maps between image classes <= 3 points",
               def_locally_one_to_one});
}

}  // namespace dtop::verify
