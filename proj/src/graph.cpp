#include "dtop/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dtop {

namespace {

struct DisjointSets {
  std::vector<Index> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

void ImageGraph::finish(Data& d) {
  d.nbrs.assign(d.n, {});
  d.closed.assign(d.n, {});
  d.edges = 0;
  for (std::size_t i = 0; i < d.n; ++i) {
    for (std::size_t j = 0; j < d.n; ++j) {
      bool adj = (d.bits[i * d.words + j / 64] >> (j % 64)) & 1u;
      if (adj) d.nbrs[i].push_back(static_cast<Index>(j));
      if (adj || i == j) d.closed[i].push_back(static_cast<Index>(j));
    }
    d.edges += d.nbrs[i].size();
  }
  d.edges /= 2;
}

ImageGraph::ImageGraph(DigitalImage image, AdjacencyOracle adj) {
  if (adj.dim() != image.dim())
    throw DimensionError("adjacency " + adj.str() + " is for Z^" + std::to_string(adj.dim()) +
                         ", image lives in Z^" + std::to_string(image.dim()));
  auto d = std::make_shared<Data>(Data{std::move(image), std::move(adj), 0, 0, 0, {}, {}, {}});
  d->n = d->image.size();
  d->words = (d->n + 63) / 64;
  d->bits.assign(d->n * d->words, 0);
  const auto& pts = d->image.points();
  for (std::size_t i = 0; i < d->n; ++i)
    for (std::size_t j = i + 1; j < d->n; ++j)
      if (d->adj.adjacent_raw(pts[i].coords(), pts[j].coords())) {
        d->bits[i * d->words + j / 64] |= std::uint64_t{1} << (j % 64);
        d->bits[j * d->words + i / 64] |= std::uint64_t{1} << (i % 64);
      }
  finish(*d);
  d_ = std::move(d);
}

ImageGraph::ImageGraph(DigitalImage image, const AdjacencySpec& spec,
                       std::span<const std::size_t> split)
    : ImageGraph(image, AdjacencyOracle::bind(spec, image.dim(), split)) {}

ImageGraph ImageGraph::induced(std::span<const Index> indices) const {
  IndexSet idx(indices.begin(), indices.end());
  std::sort(idx.begin(), idx.end());
  auto d = std::make_shared<Data>(Data{d_->image.subset(idx), d_->adj, 0, 0, 0, {}, {}, {}});
  d->n = idx.size();
  d->words = (d->n + 63) / 64;
  d->bits.assign(d->n * d->words, 0);
  for (std::size_t i = 0; i < d->n; ++i)
    for (std::size_t j = 0; j < d->n; ++j)
      if (adjacent(idx[i], idx[j])) d->bits[i * d->words + j / 64] |= std::uint64_t{1} << (j % 64);
  finish(*d);
  return ImageGraph(std::shared_ptr<const Data>(std::move(d)));
}

ImageGraph ImageGraph::induced(const DigitalImage& subset) const {
  IndexSet idx;
  for (const auto& p : subset.points()) idx.push_back(static_cast<Index>(index_of(p)));
  return induced(idx);
}

std::vector<Point> neighborhood(const AdjacencyOracle& adj, const DigitalImage& domain,
                                const Point& x, bool closed) {
  domain.require_index(x);
  std::vector<Point> out;
  for (const auto& y : domain.points())
    if ((closed && y == x) || adj.adjacent(x, y)) out.push_back(y);
  return out;
}

std::vector<IndexSet> component_indices(const ImageGraph& g) {
  DisjointSets ds(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g.neighbors(i))
      if (j > i) ds.unite(static_cast<Index>(i), j);
  std::vector<IndexSet> blocks;
  std::vector<int> slot(g.size(), -1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Index r = ds.find(static_cast<Index>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(static_cast<Index>(i));
  }
  return blocks;
}

std::vector<std::vector<Point>> components(const ImageGraph& g) {
  std::vector<std::vector<Point>> out;
  for (const auto& b : component_indices(g)) {
    out.emplace_back();
    for (auto i : b) out.back().push_back(g.point(i));
  }
  return out;
}

std::vector<std::vector<Point>> components(const DigitalImage& img, const AdjacencyOracle& adj) {
  return components(ImageGraph(img, adj));
}

bool is_connected(const ImageGraph& g) { return component_indices(g).size() == 1; }

bool is_connected(const DigitalImage& img, const AdjacencyOracle& adj) {
  return is_connected(ImageGraph(img, adj));
}

bool is_connected_subset(const ImageGraph& g, std::span<const Index> subset) {
  if (subset.size() <= 1) return true;
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  for (auto i : subset) in[i] = 1;
  std::vector<Index> stack{subset[0]};
  seen[subset[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbors(v))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  std::size_t distinct = 0;
  for (auto c : in) distinct += c;
  return reached == distinct;
}

bool sets_adjacent(std::span<const Point> a, std::span<const Point> b,
                   const AdjacencyOracle& adj) {
  if (a.empty() || b.empty()) throw DomainError("sets_adjacent on an empty set");
  for (const auto& p : a)
    for (const auto& q : b)
      if (p == q || adj.adjacent(p, q)) return true;
  return false;
}

bool sets_adjacent(const ImageGraph& g, std::span<const Index> a, std::span<const Index> b) {
  for (auto i : a)
    for (auto j : b)
      if (g.adjacent_or_equal(i, j)) return true;
  return false;
}

std::vector<int> bfs_distances(const ImageGraph& g, std::size_t src) {
  std::vector<int> dist(g.size(), -1);
  std::deque<Index> q{static_cast<Index>(src)};
  dist[src] = 0;
  while (!q.empty()) {
    Index v = q.front();
    q.pop_front();
    for (auto w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

std::optional<std::vector<Point>> find_path(const ImageGraph& g, const Point& a, const Point& b) {
  std::size_t ia = g.index_of(a), ib = g.index_of(b);
  auto dist = bfs_distances(g, ib);
  if (dist[ia] < 0) return std::nullopt;
  // Walking greedily towards b through the smallest index one step closer
  // yields the lexicographically least shortest path.
  std::vector<Point> path{a};
  std::size_t v = ia;
  while (v != ib) {
    for (auto w : g.neighbors(v))
      if (dist[w] == dist[v] - 1) {
        v = w;
        break;
      }
    path.push_back(g.point(v));
  }
  return path;
}

std::optional<std::vector<Point>> find_path(const DigitalImage& img, const AdjacencyOracle& adj,
                                            const Point& a, const Point& b) {
  return find_path(ImageGraph(img, adj), a, b);
}

}  // namespace dtop
