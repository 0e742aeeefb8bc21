#include "dtop/maps.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dtop {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::absent: return "absent";
    case SearchStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

std::string to_string(ShyFailure f) {
  switch (f) {
    case ShyFailure::none: return "none";
    case ShyFailure::discontinuous: return "discontinuous";
    case ShyFailure::not_surjective: return "not_surjective";
    case ShyFailure::fiber_disconnected: return "fiber_disconnected";
    case ShyFailure::pair_disconnected: return "pair_preimage_disconnected";
  }
  return "?";
}

// ---------------------------------------------------------------- DigitalMap

DigitalMap::DigitalMap(ImageGraph domain, ImageGraph codomain, std::vector<Index> table)
    : dom_(std::move(domain)), cod_(std::move(codomain)), table_(std::move(table)) {
  if (table_.size() != dom_.size())
    throw DomainError("map table has " + std::to_string(table_.size()) + " entries for " +
                      std::to_string(dom_.size()) + " domain points");
  for (auto v : table_)
    if (v >= cod_.size()) throw DomainError("map value outside codomain");
}

DigitalMap DigitalMap::from_points(ImageGraph domain, ImageGraph codomain,
                                   const std::vector<PointPair>& pairs) {
  std::vector<Index> table(domain.size(), 0);
  std::vector<char> set(domain.size(), 0);
  for (const auto& [x, y] : pairs) {
    auto i = domain.index_of(x);
    if (set[i]) throw DomainError("point " + x.str() + " assigned twice");
    set[i] = 1;
    table[i] = static_cast<Index>(codomain.index_of(y));
  }
  for (std::size_t i = 0; i < set.size(); ++i)
    if (!set[i]) throw DomainError("map undefined at " + domain.point(i).str());
  return DigitalMap(std::move(domain), std::move(codomain), std::move(table));
}

DigitalMap DigitalMap::from_function(ImageGraph domain, ImageGraph codomain,
                                     const std::function<Point(const Point&)>& fn) {
  std::vector<Index> table;
  for (const auto& x : domain.image().points())
    table.push_back(static_cast<Index>(codomain.index_of(fn(x))));
  return DigitalMap(std::move(domain), std::move(codomain), std::move(table));
}

DigitalMap DigitalMap::identity(const ImageGraph& x) {
  std::vector<Index> t(x.size());
  std::iota(t.begin(), t.end(), Index{0});
  return DigitalMap(x, x, std::move(t));
}

DigitalMap DigitalMap::constant(ImageGraph domain, ImageGraph codomain, const Point& value) {
  auto v = static_cast<Index>(codomain.index_of(value));
  std::vector<Index> t(domain.size(), v);
  return DigitalMap(std::move(domain), std::move(codomain), std::move(t));
}

std::string DigitalMap::str() const {
  std::string s;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += "; ";
    s += dom_.point(i).str() + "->" + cod_.point(table_[i]).str();
  }
  return s;
}

DigitalMap compose(const DigitalMap& g, const DigitalMap& f) {
  if (!(f.codomain() == g.domain())) throw DomainError("compose: codomain/domain mismatch");
  std::vector<Index> t(f.table().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g[f[i]];
  return DigitalMap(f.domain(), g.codomain(), std::move(t));
}

// ---------------------------------------------------------------- properties

bool is_continuous_table(const ImageGraph& dom, const ImageGraph& cod,
                         std::span<const Index> table) {
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (auto j : dom.neighbors(i))
      if (j > i && !cod.adjacent_or_equal(table[i], table[j])) return false;
  return true;
}

ContinuityReport is_continuous(const DigitalMap& f) {
  const auto& d = f.domain();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (auto j : d.neighbors(i))
      if (j > i && !f.codomain().adjacent_or_equal(f[i], f[j]))
        return {false, PointPair{d.point(i), d.point(j)}};
  return {};
}

bool is_locally_one_to_one(const DigitalMap& f) {
  const auto& d = f.domain();
  std::vector<Index> vals;
  for (std::size_t i = 0; i < d.size(); ++i) {
    vals.clear();
    for (auto j : d.closed_neighbors(i)) vals.push_back(f[j]);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return false;
  }
  return true;
}

bool is_injective(const DigitalMap& f) {
  std::vector<char> hit(f.codomain().size(), 0);
  for (auto v : f.table()) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool is_surjective(const DigitalMap& f) {
  std::vector<char> hit(f.codomain().size(), 0);
  std::size_t count = 0;
  for (auto v : f.table())
    if (!hit[v]) {
      hit[v] = 1;
      ++count;
    }
  return count == f.codomain().size();
}

std::optional<DigitalMap> inverse(const DigitalMap& f) {
  if (f.domain().size() != f.codomain().size() || !is_injective(f)) return std::nullopt;
  std::vector<Index> t(f.codomain().size());
  for (std::size_t i = 0; i < f.table().size(); ++i) t[f[i]] = static_cast<Index>(i);
  return DigitalMap(f.codomain(), f.domain(), std::move(t));
}

IsoReport is_isomorphism(const DigitalMap& f) {
  auto inv = inverse(f);
  if (!inv) return {false, "not a bijection", std::nullopt};
  if (auto c = is_continuous(f); !c) return {false, "map discontinuous", c.violation};
  if (auto c = is_continuous(*inv); !c) return {false, "inverse discontinuous", c.violation};
  return {true, "", std::nullopt};
}

std::optional<DigitalMap> find_isomorphism(const ImageGraph& x, const ImageGraph& y,
                                           std::uint64_t* checked) {
  if (checked) *checked = 0;
  if (x.size() != y.size()) return std::nullopt;
  std::vector<Index> t(x.size());
  std::iota(t.begin(), t.end(), Index{0});
  do {
    if (checked) ++*checked;
    DigitalMap f(x, y, t);
    if (is_isomorphism(f)) return f;
  } while (std::next_permutation(t.begin(), t.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------- products

namespace {

ImageGraph product_graph(const std::vector<ImageGraph>& factors, ProductKind kind) {
  std::vector<DigitalImage> imgs;
  std::vector<AdjacencyOracle> adjs;
  for (const auto& f : factors) {
    imgs.push_back(f.image());
    adjs.push_back(f.adjacency());
  }
  return ImageGraph(product_image(imgs), AdjacencyOracle::product(kind, std::move(adjs)));
}

}  // namespace

ProductSpace::ProductSpace(std::vector<ImageGraph> factors, ProductKind kind)
    : factors_(std::move(factors)),
      kind_(kind),
      stride_(factors_.size(), 1),
      graph_(product_graph(factors_, kind)) {
  for (std::size_t k = factors_.size() - 1; k-- > 0;)
    stride_[k] = stride_[k + 1] * factors_[k + 1].size();
}

std::size_t ProductSpace::index(std::span<const Index> parts) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) idx += parts[k] * stride_[k];
  return idx;
}

DigitalMap product_map(std::span<const DigitalMap> fs, const ProductSpace& dom,
                       const ProductSpace& cod) {
  if (fs.size() != dom.factors().size() || fs.size() != cod.factors().size())
    throw DomainError("product_map: factor count mismatch");
  std::vector<Index> t(dom.graph().size());
  std::vector<Index> parts(fs.size());
  for (std::size_t p = 0; p < t.size(); ++p) {
    for (std::size_t k = 0; k < fs.size(); ++k) parts[k] = fs[k][dom.part(p, k)];
    t[p] = static_cast<Index>(cod.index(parts));
  }
  return DigitalMap(dom.graph(), cod.graph(), std::move(t));
}

DigitalMap product_map(std::span<const DigitalMap> fs, ProductKind kind) {
  if (fs.size() < 2) throw DomainError("product_map needs at least 2 maps");
  std::vector<ImageGraph> d, c;
  for (const auto& f : fs) {
    d.push_back(f.domain());
    c.push_back(f.codomain());
  }
  return product_map(fs, ProductSpace(std::move(d), kind), ProductSpace(std::move(c), kind));
}

DigitalMap projection(const ProductSpace& prod, std::size_t i) {
  if (i >= prod.factors().size()) throw DomainError("projection index out of range");
  std::vector<Index> t(prod.graph().size());
  for (std::size_t p = 0; p < t.size(); ++p) t[p] = prod.part(p, i);
  return DigitalMap(prod.graph(), prod.factors()[i], std::move(t));
}

DigitalMap injection(const ProductSpace& prod, std::size_t i, std::span<const Point> basepoints) {
  const auto& fs = prod.factors();
  if (i >= fs.size()) throw DomainError("injection index out of range");
  if (basepoints.size() != fs.size())
    throw DomainError("injection needs one basepoint per factor");
  std::vector<Index> parts(fs.size(), 0);
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (k != i) {
      auto idx = fs[k].image().index_of(basepoints[k]);
      if (!idx) throw DomainError("basepoint " + basepoints[k].str() + " outside its factor");
      parts[k] = static_cast<Index>(*idx);
    }
  std::vector<Index> t(fs[i].size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    parts[i] = static_cast<Index>(x);
    t[x] = static_cast<Index>(prod.index(parts));
  }
  return DigitalMap(fs[i], prod.graph(), std::move(t));
}

// ---------------------------------------------------------------- search

SearchStatus enumerate_continuous_maps(const ImageGraph& dom, const ImageGraph& cod,
                                       std::vector<IndexSet> candidates, IndexSet order,
                                       std::uint64_t budget,
                                       const std::function<bool(std::span<const Index>)>& visit,
                                       std::uint64_t* nodes_out) {
  const std::size_t n = dom.size();
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), Index{0});
  }
  if (order.size() != n) throw DomainError("search order must list every domain point");
  candidates.resize(n);
  IndexSet all(cod.size());
  std::iota(all.begin(), all.end(), Index{0});
  for (auto& c : candidates)
    if (c.empty()) c = all;

  // for each depth, the neighbors assigned earlier
  std::vector<int> pos(n, -1);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = static_cast<int>(k);
  std::vector<IndexSet> earlier(n);
  for (std::size_t k = 0; k < n; ++k)
    for (auto w : dom.neighbors(order[k]))
      if (pos[w] < static_cast<int>(k)) earlier[k].push_back(w);

  std::vector<Index> table(n, 0);
  std::vector<std::size_t> choice(n, 0);
  std::uint64_t nodes = 0;
  SearchStatus result = SearchStatus::absent;
  std::size_t k = 0;
  if (n == 0) return result;
  // iterative depth-first search; choice[k] is the next candidate to try at depth k
  while (true) {
    Index x = order[k];
    const auto& cand = candidates[x];
    bool advanced = false;
    while (choice[k] < cand.size()) {
      Index v = cand[choice[k]++];
      if (++nodes > budget) {
        if (nodes_out) *nodes_out = nodes;
        return SearchStatus::budget_exceeded;
      }
      bool ok = true;
      for (auto w : earlier[k])
        if (!cod.adjacent_or_equal(v, table[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      table[x] = v;
      if (k + 1 == n) {
        if (!visit(table)) {
          if (nodes_out) *nodes_out = nodes;
          return SearchStatus::found;
        }
        continue;
      }
      ++k;
      choice[k] = 0;
      advanced = true;
      break;
    }
    if (advanced) continue;
    if (k == 0) break;
    --k;
  }
  if (nodes_out) *nodes_out = nodes;
  return result;
}

void for_each_map(std::size_t dom_size, std::size_t cod_size,
                  const std::function<bool(std::span<const Index>)>& visit) {
  std::vector<Index> t(dom_size, 0);
  while (true) {
    if (!visit(t)) return;
    std::size_t k = dom_size;
    while (k > 0) {
      --k;
      if (++t[k] < cod_size) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (dom_size == 0) return;
  }
}

IndexSet bfs_order(const ImageGraph& g, std::span<const Index> seeds) {
  IndexSet order;
  std::vector<char> seen(g.size(), 0);
  std::deque<Index> q;
  auto sweep = [&]() {
    while (!q.empty()) {
      Index v = q.front();
      q.pop_front();
      order.push_back(v);
      for (auto w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
  };
  for (auto s : seeds)
    if (!seen[s]) {
      seen[s] = 1;
      q.push_back(s);
    }
  sweep();
  for (Index v = 0; v < g.size(); ++v)
    if (!seen[v]) {
      seen[v] = 1;
      q.push_back(v);
      sweep();
    }
  return order;
}

// ---------------------------------------------------------------- retraction

RetractionReport is_retraction(const DigitalMap& r, const DigitalImage& subset) {
  if (!r.domain().image().contains_all(subset))
    throw DomainError("retraction subset not contained in the domain");
  if (!(r.codomain().image() == subset))
    return {false, "codomain differs from the subset", std::nullopt, std::nullopt};
  for (const auto& a : subset.points())
    if (r(a) != a) return {false, "subset point moved", a, std::nullopt};
  if (auto c = is_continuous(r); !c) return {false, "discontinuous", std::nullopt, c.violation};
  return {true, "", std::nullopt, std::nullopt};
}

SearchResult<DigitalMap> exists_retraction(const ImageGraph& x, const DigitalImage& a,
                                           std::uint64_t budget) {
  if (!x.image().contains_all(a)) throw DomainError("retraction subset not contained in X");
  ImageGraph ag = x.induced(a);
  IndexSet seeds;
  std::vector<IndexSet> cand(x.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto i = static_cast<Index>(x.index_of(a[k]));
    seeds.push_back(i);
    cand[i] = {static_cast<Index>(k)};
  }
  SearchResult<DigitalMap> res;
  std::optional<DigitalMap> found;
  res.status = enumerate_continuous_maps(
      x, ag, std::move(cand), bfs_order(x, seeds), budget,
      [&](std::span<const Index> t) {
        found.emplace(x, ag, std::vector<Index>(t.begin(), t.end()));
        return false;
      },
      &res.nodes);
  res.witness = std::move(found);
  return res;
}

// ---------------------------------------------------------------- shy

ShyReport is_shy(const DigitalMap& f) {
  ShyReport rep;
  if (auto c = is_continuous(f); !c) {
    rep.failure = ShyFailure::discontinuous;
    rep.pair = c.violation;
    return rep;
  }
  const auto& cod = f.codomain();
  std::vector<IndexSet> fiber(cod.size());
  for (std::size_t i = 0; i < f.table().size(); ++i) fiber[f[i]].push_back(static_cast<Index>(i));
  for (std::size_t y = 0; y < cod.size(); ++y)
    if (fiber[y].empty()) {
      rep.failure = ShyFailure::not_surjective;
      rep.point = cod.point(y);
      return rep;
    }
  for (std::size_t y = 0; y < cod.size(); ++y)
    if (!is_connected_subset(f.domain(), fiber[y])) {
      rep.failure = ShyFailure::fiber_disconnected;
      rep.point = cod.point(y);
      return rep;
    }
  for (std::size_t y = 0; y < cod.size(); ++y)
    for (auto z : cod.neighbors(y)) {
      if (z < y) continue;
      IndexSet both = fiber[y];
      both.insert(both.end(), fiber[z].begin(), fiber[z].end());
      if (!is_connected_subset(f.domain(), both)) {
        rep.failure = ShyFailure::pair_disconnected;
        rep.pair = PointPair{cod.point(y), cod.point(z)};
        return rep;
      }
    }
  rep.shy = true;
  return rep;
}

// ---------------------------------------------------------------- AFPP

std::optional<Point> approximate_fixed_point(const DigitalMap& f) {
  if (!(f.domain() == f.codomain()))
    throw DomainError("approximate fixed points need a self-map");
  for (std::size_t i = 0; i < f.table().size(); ++i)
    if (f.domain().adjacent_or_equal(i, f[i])) return f.domain().point(i);
  return std::nullopt;
}

namespace {

// Continuous self-maps sending every x outside N*(x): exactly the maps
// without an approximate fixed point.
SearchStatus search_afpp_free(const ImageGraph& x, std::uint64_t budget, std::uint64_t* nodes,
                              const std::function<bool(std::span<const Index>)>& visit) {
  std::vector<IndexSet> cand(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (Index v = 0; v < x.size(); ++v)
      if (!x.adjacent_or_equal(i, v)) cand[i].push_back(v);
    if (cand[i].empty()) {
      *nodes = 0;
      return SearchStatus::absent;
    }
  }
  const Index first = 0;
  return enumerate_continuous_maps(x, x, std::move(cand), bfs_order(x, {&first, 1}), budget,
                                   visit, nodes);
}

}  // namespace

AfppResult has_afpp(const ImageGraph& x, std::uint64_t budget) {
  AfppResult res;
  std::optional<DigitalMap> w;
  auto st = search_afpp_free(x, budget, &res.nodes, [&](std::span<const Index> t) {
    w.emplace(x, x, std::vector<Index>(t.begin(), t.end()));
    return false;
  });
  if (st == SearchStatus::budget_exceeded) {
    res.verdict = Verdict::budget_exceeded;
  } else if (st == SearchStatus::found) {
    res.verdict = Verdict::no;
    res.witness = std::move(w);
  }
  return res;
}

SearchResult<std::vector<DigitalMap>> afpp_counterexamples(const ImageGraph& x,
                                                           std::uint64_t budget) {
  SearchResult<std::vector<DigitalMap>> res;
  std::vector<DigitalMap> all;
  auto st = search_afpp_free(x, budget, &res.nodes, [&](std::span<const Index> t) {
    all.emplace_back(x, x, std::vector<Index>(t.begin(), t.end()));
    return true;
  });
  res.status = st == SearchStatus::budget_exceeded ? st
               : all.empty()                      ? SearchStatus::absent
                                                  : SearchStatus::found;
  res.witness = std::move(all);
  return res;
}

}  // namespace dtop
