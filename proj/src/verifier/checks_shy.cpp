#include <algorithm>

#include "internal.hpp"

namespace dtop::verify {

namespace {

bool surjective(std::span<const Index> t, std::size_t m) {
  std::vector<char> hit(m, 0);
  for (Index v : t) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

IndexSet preimage(std::span<const Index> t, std::initializer_list<Index> ys) {
  IndexSet out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (std::find(ys.begin(), ys.end(), t[i]) != ys.end()) out.push_back(static_cast<Index>(i));
  return out;
}

// Straight from the definition.
bool brute_shy(const ImageGraph& x, const ImageGraph& y, std::span<const Index> t) {
  if (!surjective(t, y.size()) || !is_continuous_table(x, y, t)) return false;
  for (std::size_t a = 0; a < y.size(); ++a) {
    if (!brute_connected(x, preimage(t, {static_cast<Index>(a)}))) return false;
    for (Index b : y.neighbors(a))
      if (!brute_connected(x, preimage(t, {static_cast<Index>(a), b}))) return false;
  }
  return true;
}

bool lib_shy(const DigitalMap& f) { return static_cast<bool>(is_shy(f)); }

struct Surjection {
  std::size_t x, y;
  std::vector<Index> t;
  bool shy;
};

// Surjections between classes with <= max points; continuous ones only if asked.
std::vector<Surjection> surjections(const std::vector<ImageGraph>& imgs, bool continuous_only) {
  std::vector<Surjection> out;
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = 0; j < imgs.size(); ++j) {
      if (imgs[j].size() > imgs[i].size()) continue;
      for_each_map(imgs[i].size(), imgs[j].size(), [&](std::span<const Index> t) {
        if (surjective(t, imgs[j].size()) &&
            (!continuous_only || is_continuous_table(imgs[i], imgs[j], t)))
          out.push_back({i, j, {t.begin(), t.end()}, brute_shy(imgs[i], imgs[j], t)});
        return true;
      });
    }
  return out;
}

const std::vector<ImageGraph>& four() {
  static const auto imgs = images_upto(4);
  return imgs;
}

const std::vector<ImageGraph>& three() {
  static const auto imgs = images_upto(3);
  return imgs;
}

void thm_shy_equivalences(Context& ctx) {
  std::size_t shy = 0, total = 0;
  for (const auto& s : surjections(four(), true)) {
    ctx.instance();
    ++total;
    DigitalMap f(four()[s.x], four()[s.y], s.t);
    auto eq = shy_equivalences(f);
    ctx.expect(eq.shy == s.shy, [&] { return "is_shy disagrees with the definition on " + show(f); });
    ctx.expect(eq.agree(), [&] {
      return "shy conditions disagree on " + show(f) + ": shy=" + std::to_string(eq.shy) +
             " preimages=" + std::to_string(eq.preimages_of_connected_sets_connected) +
             " cp=" + std::to_string(eq.inverse_connectivity_preserving) +
             " weak=" + std::to_string(eq.inverse_weak_with_connected_fibers);
    });
    shy += s.shy;
  }
  ctx.note = std::to_string(shy) + " shy of " + std::to_string(total) + " continuous surjections";
}

void thm_shy_iso(Context& ctx) {
  std::size_t shy = 0, iso = 0;
  for (const auto& s : surjections(four(), true)) {
    if (!s.shy) continue;
    ctx.instance();
    ++shy;
    DigitalMap f(four()[s.x], four()[s.y], s.t);
    bool l11 = is_locally_one_to_one(f), is = static_cast<bool>(is_isomorphism(f));
    ctx.expect(l11 == is, [&] {
      return "shy map with locally one-to-one=" + std::to_string(l11) + " and iso=" +
             std::to_string(is) + ": " + show(f);
    });
    iso += is;
  }
  ctx.note = std::to_string(iso) + " isomorphisms among " + std::to_string(shy) + " shy maps";
}

struct ShyCase {
  const Surjection& a;
  const Surjection& b;
  DigitalMap f;
  std::string show() const { return verify::show(f) + " [" + f.domain().adjacency().str() + "]"; }
};

void for_each_shy_product(Context& ctx, const std::vector<Surjection>& fs, const ProductKind& kind,
                          const std::function<void(const ShyCase&)>& fn) {
  Products prods(three(), kind);
  for (const auto& a : fs)
    for (const auto& b : fs) {
      ctx.instance();
      const auto& dom = prods(a.x, b.x);
      const auto& cod = prods(a.y, b.y);
      fn(ShyCase{a, b, DigitalMap(dom.graph(), cod.graph(), product_table(dom, cod, a.t, b.t))});
    }
}

void thm_np_shy(Context& ctx) {
  auto fs = surjections(three(), true);
  for (int u : {1, 2})
    for_each_shy_product(ctx, fs, ProductKind::np(u), [&](const ShyCase& c) {
      ctx.expect(lib_shy(c.f) == (c.a.shy && c.b.shy), [&] { return "NP shy iff fails for " + c.show(); });
    });
}

void thm_tensor_shy(Context& ctx) {
  auto fs = surjections(three(), false);
  std::string singleton;
  std::size_t converse = 0;
  for_each_shy_product(ctx, fs, ProductKind::tensor(), [&](const ShyCase& c) {
    bool prod = lib_shy(c.f), factors = c.a.shy && c.b.shy;
    if (!prod && factors) ++converse;
    if (!prod || factors) return;
    if (has_edge(three()[c.a.x]) && has_edge(three()[c.b.x]))
      throw CheckFailed{"T product shy, factor not: " + c.show()};
    if (singleton.empty()) singleton = c.show();
  });
  ctx.note = std::to_string(converse) + " converse failures; edgeless-domain counterexample: " + singleton;
}

void ex_tensor_shy(Context& ctx) {
  ctx.instance();
  auto i01 = fixtures::interval_graph(0, 1);
  auto zero = fixtures::points_c1({0});
  auto f1 = DigitalMap::constant(i01, zero, Point{0});
  auto f2 = DigitalMap::identity(i01);
  ctx.expect(lib_shy(f1) && lib_shy(f2), [] { return "factors should be shy"; });
  std::vector<DigitalMap> fs{f1, f2};
  auto p = product_map(fs, ProductKind::tensor());
  auto c = is_continuous(p);
  ctx.expect(!c.continuous && !lib_shy(p), [&] { return "T product should not be shy: " + show(p); });
  ctx.note = "product discontinuous at " + show(*c.violation);
}

void thm_cartesian_shy(Context& ctx) {
  auto fs = surjections(three(), false);
  for_each_shy_product(ctx, fs, ProductKind::cartesian(), [&](const ShyCase& c) {
    ctx.expect(lib_shy(c.f) == (c.a.shy && c.b.shy), [&] { return "Cartesian shy iff fails for " + c.show(); });
  });
}

void thm_lex_shy(Context& ctx) {
  auto fs = surjections(three(), true);
  std::size_t discontinuous = 0;
  std::string example;
  for_each_shy_product(ctx, fs, ProductKind::lex(), [&](const ShyCase& c) {
    if (!c.a.shy || !c.b.shy) return;
    if (!is_continuous(c.f)) {
      if (++discontinuous == 1) example = c.show();
      return;
    }
    ctx.expect(lib_shy(c.f), [&] { return "shy factors, continuous L product not shy: " + c.show(); });
  });
  // The unrestricted statement fails: both factors shy, product discontinuous.
  ctx.instance();
  auto f1 = DigitalMap::constant(fixtures::interval_graph(0, 1), fixtures::points_c1({0}), Point{0});
  auto f2 = DigitalMap::identity(fixtures::interval_graph(0, 2));
  std::vector<DigitalMap> pair{f1, f2};
  auto p = product_map(pair, ProductKind::lex());
  auto c = is_continuous(p);
  ctx.expect(lib_shy(f1) && lib_shy(f2) && !c.continuous,
             [] { return "const x id on [0,1] x [0,2] should be a discontinuous L product"; });
  ctx.note = std::to_string(discontinuous) + " pairs of shy factors with discontinuous L product, e.g. " +
             example + "; const x id fails at " + show(*c.violation);
}

void ex_lex_shy(Context& ctx) {
  ctx.instance();
  auto zero = fixtures::points_c1({0});
  auto f1 = DigitalMap::constant(fixtures::interval_graph(0, 1), zero, Point{0});
  auto f2 = DigitalMap::constant(fixtures::points_c1({0, 2}), zero, Point{0});
  ctx.expect(!lib_shy(f2), [] { return "f2 should not be shy"; });
  std::vector<DigitalMap> fs{f1, f2};
  auto p = product_map(fs, ProductKind::lex());
  ctx.expect(lib_shy(p), [&] { return "L product should be shy: " + show(p); });
  auto eq = shy_equivalences(f2);
  ctx.expect(eq.agree() && !eq.shy, [] { return "all four conditions should fail for f2"; });
}

}  // namespace

void add_shy_checks(std::vector<TheoremCheck>& r) {
  const std::string fam = "pairs of surjections between classes <= 3 points";
  r.push_back({"Thm-2.32", Mode::exhaustive, "every continuous surjection between classes <= 4 points",
               thm_shy_equivalences});
  r.push_back({"Thm-9.1", Mode::exhaustive, "every shy map between classes <= 4 points", thm_shy_iso});
  r.push_back({"Thm-9.NPv", Mode::exhaustive, "pairs of continuous surjections between classes <= 3 points, NP_1 and NP_2",
               thm_np_shy});
  r.push_back({"Thm-9.2", Mode::exhaustive, fam + ", T", thm_tensor_shy});
  r.push_back({"Ex-9.3", Mode::fixture, "const x id on [0,1]^2, T", ex_tensor_shy});
  r.push_back({"Thm-9.4", Mode::exhaustive, fam + ", Cartesian", thm_cartesian_shy});
  r.push_back({"Thm-9.5", Mode::exhaustive,
               "pairs of continuous surjections between classes <= 3 points, L; const x id fixture",
               thm_lex_shy});
  r.push_back({"Ex-9.6", Mode::fixture, "[0,1] x {0,2} -> {(0,0)}, L", ex_lex_shy});
}

}  // namespace dtop::verify
