#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dtop/adjacency.hpp"
#include "dtop/lattice.hpp"

namespace dtop {

using Index = std::uint32_t;
using IndexSet = std::vector<Index>;

// A digital image together with its adjacency, with the adjacency relation
// tabulated once (O(n^2) oracle calls). Cheap to copy.
class ImageGraph {
 public:
  ImageGraph(DigitalImage image, AdjacencyOracle adj);
  ImageGraph(DigitalImage image, const AdjacencySpec& spec,
             std::span<const std::size_t> split = {});

  const DigitalImage& image() const { return d_->image; }
  const AdjacencyOracle& adjacency() const { return d_->adj; }
  std::size_t size() const { return d_->n; }
  std::size_t dim() const { return d_->image.dim(); }
  const Point& point(std::size_t i) const { return d_->image[i]; }
  std::size_t index_of(const Point& p) const { return d_->image.require_index(p); }

  bool adjacent(std::size_t i, std::size_t j) const {
    return (d_->bits[i * d_->words + j / 64] >> (j % 64)) & 1u;
  }
  bool adjacent_or_equal(std::size_t i, std::size_t j) const { return i == j || adjacent(i, j); }
  std::span<const Index> neighbors(std::size_t i) const { return d_->nbrs[i]; }
  // Sorted closed neighborhood N*(i).
  std::span<const Index> closed_neighbors(std::size_t i) const { return d_->closed[i]; }
  std::size_t edge_count() const { return d_->edges; }

  // Subimage on the given indices with the same adjacency, tabulated from this graph.
  ImageGraph induced(std::span<const Index> indices) const;
  ImageGraph induced(const DigitalImage& subset) const;

  friend bool operator==(const ImageGraph& a, const ImageGraph& b) {
    return a.d_ == b.d_ || (a.image() == b.image() && a.adjacency() == b.adjacency());
  }

 private:
  struct Data {
    DigitalImage image;
    AdjacencyOracle adj;
    std::size_t n = 0, words = 0, edges = 0;
    std::vector<std::uint64_t> bits;
    std::vector<IndexSet> nbrs, closed;
  };
  ImageGraph(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static void finish(Data& d);
  std::shared_ptr<const Data> d_;
};

std::vector<Point> neighborhood(const AdjacencyOracle& adj, const DigitalImage& domain,
                                const Point& x, bool closed);

std::vector<IndexSet> component_indices(const ImageGraph& g);
std::vector<std::vector<Point>> components(const ImageGraph& g);
std::vector<std::vector<Point>> components(const DigitalImage& img, const AdjacencyOracle& adj);
bool is_connected(const ImageGraph& g);
bool is_connected(const DigitalImage& img, const AdjacencyOracle& adj);
// Connectivity of the subgraph induced on a subset of indices; the empty set counts as connected.
bool is_connected_subset(const ImageGraph& g, std::span<const Index> subset);

bool sets_adjacent(std::span<const Point> a, std::span<const Point> b,
                   const AdjacencyOracle& adj);
bool sets_adjacent(const ImageGraph& g, std::span<const Index> a, std::span<const Index> b);

// Shortest path, lexicographically least among shortest ones.
std::optional<std::vector<Point>> find_path(const ImageGraph& g, const Point& a, const Point& b);
std::optional<std::vector<Point>> find_path(const DigitalImage& img, const AdjacencyOracle& adj,
                                            const Point& a, const Point& b);
// Breadth-first distances from src (-1 when unreachable).
std::vector<int> bfs_distances(const ImageGraph& g, std::size_t src);

}  // namespace dtop
