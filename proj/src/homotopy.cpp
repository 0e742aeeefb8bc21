#include "dtop/homotopy.hpp"

#include <algorithm>
#include <functional>

namespace dtop {

namespace {

std::u32string key(std::span<const Index> t) { return std::u32string(t.begin(), t.end()); }

void require_same_spaces(const DigitalMap& f, const DigitalMap& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
    throw DomainError("maps do not share domain and codomain");
}

}  // namespace

// ---------------------------------------------------------------- witness

HomotopyWitness::HomotopyWitness(DigitalMap f, DigitalMap g, std::vector<std::vector<Index>> table)
    : f_(std::move(f)), g_(std::move(g)), table_(std::move(table)) {
  require_same_spaces(f_, g_);
  if (table_.empty()) throw DomainError("homotopy needs at least one time slice");
  for (const auto& s : table_) {
    if (s.size() != f_.domain().size()) throw DomainError("homotopy table is not total");
    for (auto v : s)
      if (v >= f_.codomain().size()) throw DomainError("homotopy value outside codomain");
  }
}

HomotopyWitness HomotopyWitness::from_slices(const std::vector<DigitalMap>& slices) {
  if (slices.empty()) throw DomainError("homotopy needs at least one time slice");
  std::vector<std::vector<Index>> t;
  for (const auto& s : slices) {
    require_same_spaces(s, slices.front());
    t.push_back(s.table());
  }
  return HomotopyWitness(slices.front(), slices.back(), std::move(t));
}

HomotopyWitness HomotopyWitness::constant(const DigitalMap& f) {
  return HomotopyWitness(f, f, {f.table()});
}

DigitalMap HomotopyWitness::slice(int t) const {
  return DigitalMap(f_.domain(), f_.codomain(), table_.at(static_cast<std::size_t>(t)));
}

std::string HomotopyReport::describe() const {
  auto pt = [](const std::optional<Point>& p) { return p ? p->str() : std::string("-"); };
  switch (violation) {
    case Violation::none: return "ok";
    case Violation::endpoint:
      return "slice " + std::to_string(t) + " differs from its endpoint map at " + pt(x);
    case Violation::slice_discontinuous:
      return "slice " + std::to_string(t) + " discontinuous at " + pt(x) + "," + pt(x2);
    case Violation::track_broken:
      return "track of " + pt(x) + " jumps between t=" + std::to_string(t) + " and t=" +
             std::to_string(t + 1);
    case Violation::basepoint_moved:
      return "basepoint " + pt(x) + " moves at t=" + std::to_string(t);
  }
  return "?";
}

HomotopyReport is_homotopy(const HomotopyWitness& w, const std::optional<Point>& pointed_at) {
  const auto& dom = w.f().domain();
  const auto& cod = w.f().codomain();
  const auto& tab = w.table();
  const int m = w.length();
  HomotopyReport rep;
  auto fail = [&](HomotopyReport::Violation v, std::size_t x, int t,
                  std::optional<std::size_t> x2 = std::nullopt) {
    rep.ok = false;
    rep.violation = v;
    rep.x = dom.point(x);
    if (x2) rep.x2 = dom.point(*x2);
    rep.t = t;
    return rep;
  };
  for (std::size_t x = 0; x < dom.size(); ++x) {
    if (tab[0][x] != w.f()[x]) return fail(HomotopyReport::Violation::endpoint, x, 0);
    if (tab[m][x] != w.g()[x]) return fail(HomotopyReport::Violation::endpoint, x, m);
  }
  for (int t = 0; t <= m; ++t)
    for (std::size_t x = 0; x < dom.size(); ++x)
      for (auto y : dom.neighbors(x))
        if (y > x && !cod.adjacent_or_equal(tab[t][x], tab[t][y]))
          return fail(HomotopyReport::Violation::slice_discontinuous, x, t, y);
  for (int t = 0; t < m; ++t)
    for (std::size_t x = 0; x < dom.size(); ++x)
      if (!cod.adjacent_or_equal(tab[t][x], tab[t + 1][x]))
        return fail(HomotopyReport::Violation::track_broken, x, t);
  if (pointed_at) {
    auto x0 = dom.index_of(*pointed_at);
    for (int t = 1; t <= m; ++t)
      if (tab[t][x0] != tab[0][x0]) return fail(HomotopyReport::Violation::basepoint_moved, x0, t);
  }
  return rep;
}

// ---------------------------------------------------------------- map-graph search

namespace {

struct MapGraph {
  std::vector<std::vector<Index>> maps;
  std::vector<int> dist, parent;
  std::unordered_map<std::u32string, int> id;
  SearchStatus status = SearchStatus::absent;
  int target = -1;
};

// Breadth-first search from f over continuous maps; consecutive vertices are
// pointwise equal-or-adjacent, so a path of length m is a homotopy of length m.
using TargetFn = std::function<bool(std::span<const Index>)>;

MapGraph explore(const DigitalMap& f, const std::optional<Point>& pointed_at,
                 std::uint64_t budget, const TargetFn* target) {
  const auto& dom = f.domain();
  const auto& cod = f.codomain();
  MapGraph mg;
  if (!is_continuous(f)) return mg;
  std::optional<std::size_t> x0;
  if (pointed_at) x0 = dom.index_of(*pointed_at);
  auto add = [&](std::span<const Index> t, int from) {
    auto [it, fresh] = mg.id.emplace(key(t), static_cast<int>(mg.maps.size()));
    if (!fresh) return false;
    mg.maps.emplace_back(t.begin(), t.end());
    mg.dist.push_back(from < 0 ? 0 : mg.dist[from] + 1);
    mg.parent.push_back(from);
    if (target && (*target)(t)) mg.target = it->second;
    return true;
  };
  if (budget == 0) {
    mg.status = SearchStatus::budget_exceeded;
    return mg;
  }
  add(f.table(), -1);
  if (mg.target >= 0) {
    mg.status = SearchStatus::found;
    return mg;
  }
  for (std::size_t cur = 0; cur < mg.maps.size(); ++cur) {
    std::vector<IndexSet> cand(dom.size());
    for (std::size_t x = 0; x < dom.size(); ++x) {
      auto nb = cod.closed_neighbors(mg.maps[cur][x]);
      cand[x].assign(nb.begin(), nb.end());
    }
    if (x0) cand[*x0] = {f[*x0]};
    bool stop = false;
    enumerate_continuous_maps(dom, cod, std::move(cand), {}, UINT64_MAX,
                              [&](std::span<const Index> t) {
                                if (mg.id.count(key(t))) return true;
                                if (mg.maps.size() >= budget) {
                                  mg.status = SearchStatus::budget_exceeded;
                                  stop = true;
                                  return false;
                                }
                                add(t, static_cast<int>(cur));
                                if (mg.target >= 0) {
                                  mg.status = SearchStatus::found;
                                  stop = true;
                                  return false;
                                }
                                return true;
                              });
    if (stop) break;
  }
  return mg;
}

std::vector<std::vector<Index>> path_to(const MapGraph& mg, int v) {
  std::vector<std::vector<Index>> path;
  for (; v >= 0; v = mg.parent[v]) path.push_back(mg.maps[v]);
  return {path.rbegin(), path.rend()};
}

}  // namespace

SearchResult<HomotopyWitness> are_homotopic(const DigitalMap& f, const DigitalMap& g,
                                            const std::optional<Point>& pointed_at,
                                            std::uint64_t budget) {
  require_same_spaces(f, g);
  SearchResult<HomotopyWitness> res;
  if (!is_continuous(f) || !is_continuous(g)) return res;
  if (pointed_at) {
    auto x0 = f.domain().index_of(*pointed_at);
    if (f[x0] != g[x0]) return res;  // a pointed homotopy cannot move the basepoint
  }
  TargetFn is_g = [&](std::span<const Index> t) { return std::ranges::equal(t, g.table()); };
  auto mg = explore(f, pointed_at, budget, &is_g);
  res.nodes = mg.maps.size();
  res.status = mg.status;
  if (mg.status == SearchStatus::found)
    res.witness.emplace(f, g, path_to(mg, mg.target));
  return res;
}

HomotopyClass::HomotopyClass(const DigitalMap& f, const std::optional<Point>& pointed_at,
                             std::uint64_t budget)
    : root_(f) {
  auto mg = explore(f, pointed_at, budget, nullptr);
  status_ = mg.status;
  maps_ = std::move(mg.maps);
  dist_ = std::move(mg.dist);
  parent_ = std::move(mg.parent);
  id_ = std::move(mg.id);
}

std::optional<int> HomotopyClass::distance(std::span<const Index> table) const {
  auto it = id_.find(key(table));
  if (it == id_.end()) return std::nullopt;
  return dist_[it->second];
}

std::optional<HomotopyWitness> HomotopyClass::witness_to(std::span<const Index> table) const {
  auto it = id_.find(key(table));
  if (it == id_.end()) return std::nullopt;
  std::vector<std::vector<Index>> path;
  for (int v = it->second; v >= 0; v = parent_[v]) path.push_back(maps_[v]);
  std::reverse(path.begin(), path.end());
  DigitalMap g(root_.domain(), root_.codomain(), path.back());
  return HomotopyWitness(root_, g, std::move(path));
}

// ---------------------------------------------------------------- equivalence

SearchResult<HomotopyEquivalence> homotopy_equivalent(
    const ImageGraph& x, const ImageGraph& y,
    const std::optional<std::pair<Point, Point>>& pointed, std::uint64_t budget) {
  SearchResult<HomotopyEquivalence> res;
  std::optional<Point> px, py;
  std::vector<IndexSet> cand_f(x.size()), cand_g(y.size());
  if (pointed) {
    px = pointed->first;
    py = pointed->second;
    cand_f[x.index_of(*px)] = {static_cast<Index>(y.index_of(*py))};
    cand_g[y.index_of(*py)] = {static_cast<Index>(x.index_of(*px))};
  }
  auto exceeded = [&]() {
    res.status = SearchStatus::budget_exceeded;
    return res;
  };
  // Equivalent images have matching components, so differing counts settle it.
  if (component_indices(x).size() != component_indices(y).size()) {
    res.status = SearchStatus::absent;
    return res;
  }
  // An isomorphism respecting the basepoints is its own certificate.
  if (x.size() == y.size() && x.size() <= 8) {
    std::uint64_t tried = 0;
    if (auto iso = find_isomorphism(x, y, &tried); iso && (!pointed || (*iso)(*px) == *py)) {
      res.nodes += tried;
      auto inv = *inverse(*iso);
      res.status = SearchStatus::found;
      res.witness.emplace(HomotopyEquivalence{*iso, inv, HomotopyWitness::constant(compose(inv, *iso)),
                                              HomotopyWitness::constant(compose(*iso, inv))});
      return res;
    }
  }
  std::vector<std::vector<Index>> fs, gs;
  std::uint64_t used = 0;
  auto collect = [](std::vector<std::vector<Index>>& out) {
    return [&out](std::span<const Index> t) {
      out.emplace_back(t.begin(), t.end());
      return true;
    };
  };
  if (enumerate_continuous_maps(x, y, cand_f, {}, budget, collect(fs), &used) ==
      SearchStatus::budget_exceeded)
    return exceeded();
  res.nodes += used;
  if (res.nodes >= budget ||
      enumerate_continuous_maps(y, x, cand_g, {}, budget - res.nodes, collect(gs), &used) ==
          SearchStatus::budget_exceeded)
    return exceeded();
  res.nodes += used;

  // The identity class of the smaller side is built in full; on the larger
  // side the search from the identity stops at the first composite that
  // completes a valid pair.
  const bool x_full = x.size() <= y.size();
  const auto& small = x_full ? x : y;
  const auto& large = x_full ? y : x;
  const auto& small_base = x_full ? px : py;
  const auto& large_base = x_full ? py : px;
  if (res.nodes >= budget) return exceeded();
  HomotopyClass cs(DigitalMap::identity(small), small_base, budget - res.nodes);
  res.nodes += cs.size();
  if (cs.status() == SearchStatus::budget_exceeded || res.nodes >= budget) return exceeded();

  // Composites on the large side whose partner composite is homotopic to the identity.
  std::unordered_map<std::u32string, std::pair<std::size_t, std::size_t>> wanted;
  std::vector<Index> on_small(small.size()), on_large(large.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (++res.nodes > budget) return exceeded();
      const auto& f = fs[i];
      const auto& g = gs[j];
      for (std::size_t p = 0; p < on_small.size(); ++p) on_small[p] = x_full ? g[f[p]] : f[g[p]];
      if (!cs.distance(on_small)) continue;
      for (std::size_t p = 0; p < on_large.size(); ++p) on_large[p] = x_full ? f[g[p]] : g[f[p]];
      wanted.emplace(key(on_large), std::pair{i, j});
    }
  if (wanted.empty()) {
    res.status = SearchStatus::absent;
    return res;
  }
  TargetFn hit = [&](std::span<const Index> t) { return wanted.count(key(t)) > 0; };
  auto id_large = DigitalMap::identity(large);
  auto mg = explore(id_large, large_base, budget - res.nodes, &hit);
  res.nodes += mg.maps.size();
  res.status = mg.status;
  if (mg.status != SearchStatus::found) return res;

  auto path = path_to(mg, mg.target);
  auto [i, j] = wanted.at(key(path.back()));
  DigitalMap f(x, y, fs[i]), g(y, x, gs[j]);
  HomotopyWitness to_large = reverse(HomotopyWitness(id_large, DigitalMap(large, large, path.back()), path));
  std::vector<Index> comp(small.size());
  for (std::size_t p = 0; p < comp.size(); ++p) comp[p] = x_full ? g[f[p]] : f[g[p]];
  HomotopyWitness to_small = reverse(*cs.witness_to(comp));
  if (x_full)
    res.witness.emplace(HomotopyEquivalence{f, g, to_small, to_large});
  else
    res.witness.emplace(HomotopyEquivalence{f, g, to_large, to_small});
  return res;
}

// ---------------------------------------------------------------- constructions

HomotopyWitness compose(const DigitalMap& post, const HomotopyWitness& h, const DigitalMap& pre) {
  std::vector<std::vector<Index>> t;
  for (const auto& s : h.table()) {
    std::vector<Index> row(pre.domain().size());
    for (std::size_t x = 0; x < row.size(); ++x) row[x] = post[s[pre[x]]];
    t.push_back(std::move(row));
  }
  return HomotopyWitness(compose(post, compose(h.f(), pre)), compose(post, compose(h.g(), pre)),
                         std::move(t));
}

HomotopyWitness reverse(const HomotopyWitness& h) {
  auto t = h.table();
  std::reverse(t.begin(), t.end());
  return HomotopyWitness(h.g(), h.f(), std::move(t));
}

HomotopyWitness staged_product_homotopy(const ProductSpace& dom, const ProductSpace& cod,
                                        const std::vector<HomotopyWitness>& factors) {
  const std::size_t v = factors.size();
  if (v != dom.factors().size() || v != cod.factors().size())
    throw DomainError("staged homotopy: factor count mismatch");
  std::vector<DigitalMap> fs, gs;
  for (const auto& h : factors) {
    fs.push_back(h.f());
    gs.push_back(h.g());
  }
  std::vector<std::vector<Index>> table;
  std::vector<Index> parts(v);
  for (std::size_t j = 0; j < v; ++j) {
    const auto& hj = factors[j].table();
    // stage j starts where stage j-1 ended, so its first slice is skipped after stage 0
    for (std::size_t t = (j == 0 ? 0 : 1); t < hj.size(); ++t) {
      std::vector<Index> row(dom.graph().size());
      for (std::size_t p = 0; p < row.size(); ++p) {
        for (std::size_t i = 0; i < v; ++i) {
          Index xi = dom.part(p, i);
          parts[i] = i < j ? gs[i][xi] : i > j ? fs[i][xi] : hj[t][xi];
        }
        row[p] = static_cast<Index>(cod.index(parts));
      }
      table.push_back(std::move(row));
    }
  }
  return HomotopyWitness(product_map(fs, dom, cod), product_map(gs, dom, cod), std::move(table));
}

std::optional<std::size_t> first_nontrivial_factor(const ProductSpace& prod) {
  for (std::size_t k = 0; k < prod.factors().size(); ++k)
    if (prod.factors()[k].size() > 1) return k;
  return std::nullopt;
}

HomotopyWitness lex_collapse_homotopy(const ProductSpace& prod, const Point& basepoint) {
  const auto& g = prod.graph();
  const std::size_t b = g.index_of(basepoint);
  auto id = DigitalMap::identity(g);
  auto k = first_nontrivial_factor(prod);
  std::vector<Index> collapsed(g.size());
  std::vector<Index> parts(prod.factors().size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      parts[i] = (k && i == *k) ? prod.part(p, i) : prod.part(b, i);
    collapsed[p] = static_cast<Index>(prod.index(parts));
  }
  DigitalMap end(g, g, collapsed);
  return HomotopyWitness(id, end, {id.table(), collapsed});
}

}  // namespace dtop
