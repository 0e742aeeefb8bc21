#include "dtop/multivalued.hpp"

#include <algorithm>

namespace dtop {

namespace {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Every subset of y (as index lists) that is connected; bounded by the caller.
template <class Visit>
void for_each_connected_subset(const ImageGraph& y, Visit visit) {
  const std::size_t n = y.size();
  IndexSet s;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    s.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(static_cast<Index>(i));
    if (is_connected_subset(y, s) && !visit(s)) return;
  }
}

}  // namespace

// ---------------------------------------------------------------- MultiMap

MultiMap::MultiMap(ImageGraph domain, ImageGraph codomain, std::vector<IndexSet> table)
    : dom_(std::move(domain)), cod_(std::move(codomain)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) throw DomainError("multimap table is not total");
  for (std::size_t i = 0; i < table_.size(); ++i) {
    auto& s = table_[i];
    if (s.empty()) throw DomainError("empty value set at " + dom_.point(i).str());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.back() >= cod_.size()) throw DomainError("multimap value outside codomain");
  }
}

MultiMap MultiMap::from_points(ImageGraph domain, ImageGraph codomain,
                               const std::vector<std::pair<Point, std::vector<Point>>>& values) {
  std::vector<IndexSet> t(domain.size());
  std::vector<char> set(domain.size(), 0);
  for (const auto& [x, ys] : values) {
    auto i = domain.index_of(x);
    if (set[i]) throw DomainError("point " + x.str() + " assigned twice");
    set[i] = 1;
    for (const auto& y : ys) t[i].push_back(static_cast<Index>(codomain.index_of(y)));
  }
  for (std::size_t i = 0; i < set.size(); ++i)
    if (!set[i]) throw DomainError("multimap undefined at " + domain.point(i).str());
  return MultiMap(std::move(domain), std::move(codomain), std::move(t));
}

MultiMap MultiMap::from_map(const DigitalMap& f) {
  std::vector<IndexSet> t;
  for (auto v : f.table()) t.push_back({v});
  return MultiMap(f.domain(), f.codomain(), std::move(t));
}

std::vector<Point> MultiMap::values(const Point& x) const {
  std::vector<Point> out;
  for (auto v : table_[dom_.index_of(x)]) out.push_back(cod_.point(v));
  return out;
}

IndexSet MultiMap::image(std::span<const Index> a) const {
  IndexSet out;
  for (auto i : a) out.insert(out.end(), table_[i].begin(), table_[i].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string MultiMap::str() const {
  std::string s;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += "; ";
    s += dom_.point(i).str() + "->{";
    for (std::size_t k = 0; k < table_[i].size(); ++k) {
      if (k) s += ";";
      s += cod_.point(table_[i][k]).str();
    }
    s += "}";
  }
  return s;
}

// ---------------------------------------------------------------- continuity notions

MultiContinuityReport has_weak_continuity(const MultiMap& f) {
  const auto& d = f.domain();
  for (std::size_t x = 0; x < d.size(); ++x)
    for (auto y : d.neighbors(x))
      if (y > x && !sets_adjacent(f.codomain(), f[x], f[y]))
        return {false, PointPair{d.point(x), d.point(y)}};
  return {};
}

namespace {

// every point of a is equal or adjacent to some point of b
bool dominated(const ImageGraph& g, const IndexSet& a, const IndexSet& b) {
  for (auto p : a) {
    bool hit = false;
    for (auto q : b)
      if (g.adjacent_or_equal(p, q)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

MultiContinuityReport has_strong_continuity(const MultiMap& f) {
  const auto& d = f.domain();
  const auto& c = f.codomain();
  for (std::size_t x = 0; x < d.size(); ++x)
    for (auto y : d.neighbors(x))
      if (y > x && !(dominated(c, f[x], f[y]) && dominated(c, f[y], f[x])))
        return {false, PointPair{d.point(x), d.point(y)}};
  return {};
}

ConnectivityReport is_connectivity_preserving(const MultiMap& f) {
  const auto& d = f.domain();
  ConnectivityReport rep;
  for (std::size_t x = 0; x < d.size(); ++x)
    if (!is_connected_subset(f.codomain(), f[x])) {
      rep.preserving = false;
      rep.failure = ConnectivityReport::Failure::point_image_disconnected;
      rep.x = d.point(x);
      return rep;
    }
  auto weak = has_weak_continuity(f);
  if (!weak) {
    rep.preserving = false;
    rep.failure = ConnectivityReport::Failure::images_not_adjacent;
    rep.x = weak.violation->first;
    rep.x2 = weak.violation->second;
  }
  return rep;
}

// ---------------------------------------------------------------- subdivisions

namespace {

DigitalImage subdivision_points(const DigitalImage& base, int r) {
  std::vector<Point> pts;
  const std::size_t n = base.dim();
  std::vector<Coord> z(n);
  for (const auto& x : base.points()) {
    std::vector<Coord> off(n, 0);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * r + off[i];
      pts.emplace_back(z);
      std::size_t k = n;
      while (k > 0 && off[k - 1] == r - 1) off[--k] = 0;
      if (k == 0) break;
      ++off[k - 1];
    }
  }
  return DigitalImage(std::move(pts));
}

}  // namespace

Subdivision::Subdivision(ImageGraph base, int r)
    : base_(std::move(base)),
      r_(r >= 1 ? r : throw DomainError("subdivision needs r >= 1, got " + std::to_string(r))),
      graph_(subdivision_points(base_.image(), r), base_.adjacency()) {
  e_.resize(graph_.size());
  fibers_.assign(base_.size(), {});
  std::vector<Coord> c(base_.dim());
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    const auto& z = graph_.point(i);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = floor_div(z[k], r);
    e_[i] = static_cast<Index>(base_.index_of(Point(c)));
    fibers_[e_[i]].push_back(static_cast<Index>(i));
  }
}

std::string Subdivision::scaled(std::size_t i) const {
  const auto& z = graph_.point(i);
  std::string s = "(";
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (k) s += ",";
    s += std::to_string(z[k]) + "/" + std::to_string(r_);
  }
  return s + ")";
}

Subdivision subdivide(const ImageGraph& x, int r) { return Subdivision(x, r); }

MultiMap induced_multimap(const DigitalMap& f, const Subdivision& sub) {
  if (!(f.domain() == sub.graph())) throw DomainError("generator is not defined on S(X,r)");
  std::vector<IndexSet> t(sub.base().size());
  for (std::size_t i = 0; i < f.table().size(); ++i) t[sub.project(i)].push_back(f[i]);
  return MultiMap(sub.base(), f.codomain(), std::move(t));
}

DigitalMap refine_generator(const DigitalMap& f, const Subdivision& sub, const Subdivision& finer) {
  if (!(f.domain() == sub.graph())) throw DomainError("generator is not defined on S(X,r)");
  if (!(finer.base() == sub.base()) || finer.r() % sub.r() != 0)
    throw DomainError("refinement must subdivide the same image by a multiple of r");
  const Coord s = finer.r() / sub.r();
  std::vector<Index> t(finer.graph().size());
  std::vector<Coord> c(sub.base().dim());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& z = finer.graph().point(i);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = floor_div(z[k], s);
    t[i] = f[sub.graph().index_of(Point(c))];
  }
  return DigitalMap(finer.graph(), f.codomain(), std::move(t));
}

// ---------------------------------------------------------------- continuity search

bool subdivision_compatible(const AdjacencyOracle& adj) {
  if (adj.kind() == AdjKind::Cu) return true;
  if (adj.kind() != AdjKind::NP && adj.kind() != AdjKind::Cartesian) return false;
  for (std::size_t i = 0; i < adj.factor_count(); ++i)
    if (adj.factor(i).kind() != AdjKind::Cu) return false;
  return true;
}

namespace {

// Backtracking over S(X,r) in numerator order: each point takes a value of
// F at its floor point, adjacent values stay equal-or-adjacent, and a fiber
// is abandoned once its unassigned points cannot cover F's missing values.
SearchStatus search_generator(const MultiMap& f, const Subdivision& sub, std::uint64_t budget,
                              std::uint64_t& nodes, std::vector<Index>& out) {
  const auto& s = sub.graph();
  const auto& cod = f.codomain();
  const std::size_t n = s.size();
  std::vector<IndexSet> earlier(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : s.neighbors(i))
      if (j < i) earlier[i].push_back(j);
  const std::size_t nx = sub.base().size();
  std::vector<std::size_t> remaining(nx), missing(nx);
  std::vector<std::vector<int>> hits(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    remaining[x] = sub.fiber(x).size();
    missing[x] = f[x].size();
    hits[x].assign(f[x].size(), 0);
    if (missing[x] > remaining[x]) return SearchStatus::absent;
  }
  std::vector<Index> val(n);
  std::vector<std::size_t> choice(n, 0);  // position in F(E(i)) to try next
  std::size_t depth = 0;
  auto undo = [&](std::size_t i) {
    std::size_t x = sub.project(i);
    ++remaining[x];
    if (--hits[x][choice[i] - 1] == 0) ++missing[x];
  };
  while (true) {
    if (depth == n) {
      out = val;
      return SearchStatus::found;
    }
    const std::size_t x = sub.project(depth);
    const auto& cand = f[x];
    bool placed = false;
    while (choice[depth] < cand.size()) {
      std::size_t k = choice[depth]++;
      Index v = cand[k];
      if (++nodes > budget) return SearchStatus::budget_exceeded;
      bool ok = true;
      for (auto j : earlier[depth])
        if (!cod.adjacent_or_equal(val[j], v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      --remaining[x];
      if (hits[x][k]++ == 0) --missing[x];
      if (missing[x] > remaining[x]) {
        ++remaining[x];
        if (--hits[x][k] == 0) ++missing[x];
        continue;
      }
      val[depth] = v;
      placed = true;
      break;
    }
    if (placed) {
      ++depth;
      continue;
    }
    choice[depth] = 0;
    if (depth == 0) return SearchStatus::absent;
    undo(--depth);
  }
}

}  // namespace

MultiSearchResult is_continuous_multimap(const MultiMap& f, int r_max, std::uint64_t budget) {
  if (r_max < 1) throw DomainError("r_max must be >= 1");
  if (!subdivision_compatible(f.domain().adjacency()))
    throw DomainError("subdivision continuity is defined here only for c_u domains or normal "
                      "products of c_u factors, not " + f.domain().adjacency().str());
  MultiSearchResult res;
  for (int r = 1; r <= r_max; ++r) {
    Subdivision sub(f.domain(), r);
    std::vector<Index> t;
    auto st = search_generator(f, sub, budget, res.nodes, t);
    if (st == SearchStatus::budget_exceeded) {
      res.status = st;
      res.r = r;
      return res;
    }
    if (st == SearchStatus::found) {
      res.status = st;
      res.r = r;
      res.generator.emplace(sub.graph(), f.codomain(), std::move(t));
      res.subdivision.emplace(std::move(sub));
      return res;
    }
  }
  res.r = r_max;
  return res;
}

MultiRetractionReport is_multivalued_retraction(const MultiMap& f, const DigitalImage& a,
                                                int r_max, std::uint64_t budget) {
  const auto& dom = f.domain();
  const auto& cod = f.codomain();
  if (!dom.image().contains_all(a))
    throw DomainError("retraction subset is not contained in the domain");
  MultiRetractionReport rep;
  for (std::size_t x = 0; x < dom.size(); ++x)
    for (auto v : f[x])
      if (!a.contains(cod.point(v))) {
        rep.reason = "value " + cod.point(v).str() + " at " + dom.point(x).str() + " lies outside A";
        return rep;
      }
  for (const auto& p : a.points()) {
    const auto& s = f[dom.index_of(p)];
    if (s.size() != 1 || !(cod.point(s[0]) == p)) {
      rep.reason = "F" + p.str() + " is not {" + p.str() + "}";
      return rep;
    }
  }
  auto search = is_continuous_multimap(f, r_max, budget);
  switch (search.status) {
    case SearchStatus::found:
      rep.verdict = Verdict::yes;
      rep.reason = "generator at r=" + std::to_string(search.r);
      break;
    case SearchStatus::absent:
      rep.reason = "no continuous generator for r <= " + std::to_string(r_max);
      break;
    case SearchStatus::budget_exceeded:
      rep.verdict = Verdict::budget_exceeded;
      rep.reason = "budget exhausted at r=" + std::to_string(search.r);
      break;
  }
  rep.search = std::move(search);
  return rep;
}

// ---------------------------------------------------------------- inverses of surjections

MultiMap inverse_multimap(const DigitalMap& f) {
  if (!is_surjective(f)) throw DomainError("inverse_multimap needs a surjection");
  std::vector<IndexSet> t(f.codomain().size());
  for (std::size_t x = 0; x < f.table().size(); ++x) t[f[x]].push_back(static_cast<Index>(x));
  return MultiMap(f.codomain(), f.domain(), std::move(t));
}

ShyEquivalences shy_equivalences(const DigitalMap& f) {
  if (f.codomain().size() > 20) throw DomainError("shy_equivalences: codomain too large (> 20)");
  auto inv = inverse_multimap(f);
  ShyEquivalences e;
  e.shy = is_shy(f).shy;
  e.preimages_of_connected_sets_connected = true;
  for_each_connected_subset(f.codomain(), [&](const IndexSet& y0) {
    if (!is_connected_subset(f.domain(), inv.image(y0))) {
      e.preimages_of_connected_sets_connected = false;
      return false;
    }
    return true;
  });
  e.inverse_connectivity_preserving = is_connectivity_preserving(inv).preserving;
  bool fibers = true;
  for (const auto& s : inv.table()) fibers = fibers && is_connected_subset(f.domain(), s);
  e.inverse_weak_with_connected_fibers = has_weak_continuity(inv).ok && fibers;
  return e;
}

// ---------------------------------------------------------------- products

MultiMap product_multimap(std::span<const MultiMap> fs, const ProductSpace& dom,
                          const ProductSpace& cod) {
  if (fs.size() != dom.factors().size() || fs.size() != cod.factors().size())
    throw DomainError("product_multimap: factor count mismatch");
  const std::size_t v = fs.size();
  std::vector<IndexSet> t(dom.graph().size());
  std::vector<Index> parts(v);
  std::vector<std::size_t> pos(v);
  for (std::size_t p = 0; p < t.size(); ++p) {
    std::vector<const IndexSet*> sets(v);
    for (std::size_t k = 0; k < v; ++k) sets[k] = &fs[k][dom.part(p, k)];
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      for (std::size_t k = 0; k < v; ++k) parts[k] = (*sets[k])[pos[k]];
      t[p].push_back(static_cast<Index>(cod.index(parts)));
      std::size_t k = v;
      while (k > 0 && pos[k - 1] + 1 == sets[k - 1]->size()) pos[--k] = 0;
      if (k == 0) break;
      ++pos[k - 1];
    }
  }
  return MultiMap(dom.graph(), cod.graph(), std::move(t));
}

MultiMap product_multimap(std::span<const MultiMap> fs, ProductKind kind) {
  if (fs.size() < 2) throw DomainError("product_multimap needs at least 2 multimaps");
  std::vector<ImageGraph> d, c;
  for (const auto& f : fs) {
    d.push_back(f.domain());
    c.push_back(f.codomain());
  }
  return product_multimap(fs, ProductSpace(std::move(d), kind), ProductSpace(std::move(c), kind));
}

}  // namespace dtop
