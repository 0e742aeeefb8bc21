#include <algorithm>
#include <map>
#include <numeric>

#include "internal.hpp"

namespace dtop::verify {

namespace {

// Smallest adjacency bitmask over all relabelings; n <= 4 so 24 permutations at most.
std::uint32_t canonical_code(const ImageGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = ~0u;
  do {
    std::uint32_t code = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++bit)
        if (g.adjacent(perm[i], perm[j])) code |= 1u << bit;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best | static_cast<std::uint32_t>(n) << 24;
}

void subsets_of(const DigitalImage& window, std::size_t k, std::size_t from,
                std::vector<Point>& cur, const std::function<void(const std::vector<Point>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (std::size_t i = from; i < window.size(); ++i) {
    cur.push_back(window[i]);
    subsets_of(window, k, i + 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<ImageGraph>& image_classes() {
  static const std::vector<ImageGraph> classes = [] {
    struct Window {
      DigitalImage points;
      const char* spec;
    };
    const std::vector<Window> windows = {
        {interval(0, 6), "c1"}, {cube(2, 0, 2), "c1"}, {cube(2, 0, 2), "c2"}};
    std::map<std::uint32_t, ImageGraph> seen;
    std::vector<ImageGraph> out;
    for (std::size_t k = 1; k <= 4; ++k)
      for (const auto& w : windows) {
        std::vector<Point> cur;
        subsets_of(w.points, k, 0, cur, [&](const std::vector<Point>& pts) {
          ImageGraph g(DigitalImage(pts), parse_adjacency(w.spec));
          if (seen.emplace(canonical_code(g), g).second) out.push_back(g);
        });
      }
    return out;
  }();
  return classes;
}

std::vector<ImageGraph> images_upto(std::size_t max_points) {
  std::vector<ImageGraph> out;
  for (const auto& g : image_classes())
    if (g.size() <= max_points) out.push_back(g);
  return out;
}

bool has_edge(const ImageGraph& g) { return g.edge_count() > 0; }

std::vector<DigitalMap> all_maps(const ImageGraph& x, const ImageGraph& y) {
  std::vector<DigitalMap> out;
  for_each_map(x.size(), y.size(), [&](std::span<const Index> t) {
    out.emplace_back(x, y, std::vector<Index>(t.begin(), t.end()));
    return true;
  });
  return out;
}

std::vector<DigitalMap> continuous_maps(const ImageGraph& x, const ImageGraph& y) {
  std::vector<DigitalMap> out;
  auto st = enumerate_continuous_maps(x, y, {}, {}, kSearchBudget, [&](std::span<const Index> t) {
    out.emplace_back(x, y, std::vector<Index>(t.begin(), t.end()));
    return true;
  });
  if (st == SearchStatus::budget_exceeded) throw BudgetExhausted{};
  return out;
}

std::vector<DigitalMap> self_maps(const ImageGraph& x) { return continuous_maps(x, x); }

std::vector<MultiMap> all_multimaps(const ImageGraph& x, const ImageGraph& y) {
  const std::size_t n = x.size(), m = y.size();
  const std::uint32_t full = (1u << m) - 1;
  std::vector<std::uint32_t> mask(n, 1);
  std::vector<MultiMap> out;
  while (true) {
    std::vector<IndexSet> t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (mask[i] >> j & 1) t[i].push_back(static_cast<Index>(j));
    out.emplace_back(x, y, std::move(t));
    std::size_t i = n;
    while (i > 0 && mask[i - 1] == full) mask[--i] = 1;
    if (i == 0) break;
    ++mask[i - 1];
  }
  return out;
}

std::vector<DigitalImage> nonempty_subsets(const DigitalImage& x) {
  std::vector<DigitalImage> out;
  for (std::uint32_t m = 1; m < (1u << x.size()); ++m) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < x.size(); ++i)
      if (m >> i & 1) idx.push_back(i);
    out.push_back(x.subset(idx));
  }
  return out;
}

Products::Products(std::vector<ImageGraph> images, ProductKind kind)
    : images_(std::move(images)), kind_(kind), cache_(images_.size() * images_.size()) {}

const ProductSpace& Products::operator()(std::size_t a, std::size_t b) {
  auto& slot = cache_[a * images_.size() + b];
  if (!slot) slot.emplace(std::vector<ImageGraph>{images_[a], images_[b]}, kind_);
  return *slot;
}

std::vector<Instance> map_instances(const std::vector<ImageGraph>& images, bool continuous_only) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images.size(); ++j)
      for (auto& f : continuous_only ? continuous_maps(images[i], images[j])
                                     : all_maps(images[i], images[j]))
        out.push_back({i, j, std::move(f)});
  return out;
}

std::vector<MultiInstance> multimap_instances(const std::vector<ImageGraph>& doms,
                                              const std::vector<ImageGraph>& cods) {
  std::vector<MultiInstance> out;
  for (std::size_t i = 0; i < doms.size(); ++i)
    for (std::size_t j = 0; j < cods.size(); ++j)
      for (auto& f : all_multimaps(doms[i], cods[j])) out.push_back({i, j, std::move(f)});
  return out;
}

std::vector<Index> product_table(const ProductSpace& dom, const ProductSpace& cod,
                                 std::span<const Index> f1, std::span<const Index> f2) {
  std::vector<Index> t(dom.graph().size());
  for (std::size_t p = 0; p < t.size(); ++p) {
    Index parts[2] = {f1[dom.part(p, 0)], f2[dom.part(p, 1)]};
    t[p] = static_cast<Index>(cod.index(parts));
  }
  return t;
}

MultiMap product_multi(const ProductSpace& dom, const ProductSpace& cod, const MultiMap& f1,
                       const MultiMap& f2) {
  std::vector<IndexSet> t(dom.graph().size());
  for (std::size_t p = 0; p < t.size(); ++p) {
    for (Index a : f1[dom.part(p, 0)])
      for (Index b : f2[dom.part(p, 1)]) {
        Index parts[2] = {a, b};
        t[p].push_back(static_cast<Index>(cod.index(parts)));
      }
    std::sort(t[p].begin(), t[p].end());
  }
  return MultiMap(dom.graph(), cod.graph(), std::move(t));
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string show(const std::vector<Point>& pts) {
  std::vector<std::string> s;
  for (const auto& p : pts) s.push_back(p.str());
  return "{" + join(s, ",") + "}";
}

std::string show(const DigitalImage& g) { return show(g.points()); }

std::string show(const ImageGraph& g) { return show(g.image()) + " " + g.adjacency().str(); }

std::string show(const DigitalMap& f) {
  return show(f.domain()) + " -> " + show(f.codomain()) + ": " + f.str();
}

std::string show(const MultiMap& f) {
  return show(f.domain()) + " -o " + show(f.codomain()) + ": " + f.str();
}

std::string show(const PointPair& p) { return p.first.str() + "~" + p.second.str(); }

ImageGraph img(const std::vector<std::vector<Coord>>& pts, std::string_view spec) {
  std::vector<Point> ps;
  for (const auto& c : pts) ps.emplace_back(c);
  return fixtures::graph(DigitalImage(std::move(ps)), spec);
}

bool brute_connected(const ImageGraph& g, std::span<const Index> subset) {
  if (subset.empty()) return true;
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  for (Index i : subset) in[i] = 1;
  std::vector<Index> stack{subset[0]};
  seen[subset[0]] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    ++count;
    for (std::size_t w = 0; w < g.size(); ++w)
      if (in[w] && !seen[w] && g.adjacent(v, w)) {
        seen[w] = 1;
        stack.push_back(static_cast<Index>(w));
      }
  }
  return count == subset.size();
}

}  // namespace dtop::verify
