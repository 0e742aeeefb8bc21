#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtop/maps.hpp"

namespace dtop {

// Each domain point goes to a nonempty sorted set of codomain indices.
class MultiMap {
 public:
  MultiMap(ImageGraph domain, ImageGraph codomain, std::vector<IndexSet> table);

  static MultiMap from_points(ImageGraph domain, ImageGraph codomain,
                              const std::vector<std::pair<Point, std::vector<Point>>>& values);
  static MultiMap from_map(const DigitalMap& f);

  const ImageGraph& domain() const { return dom_; }
  const ImageGraph& codomain() const { return cod_; }
  const std::vector<IndexSet>& table() const { return table_; }
  const IndexSet& operator[](std::size_t i) const { return table_[i]; }
  std::vector<Point> values(const Point& x) const;
  IndexSet image(std::span<const Index> a) const;  // F(A), sorted

  std::string str() const;  // "x->{y;y}; ..." in domain order

  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  ImageGraph dom_, cod_;
  std::vector<IndexSet> table_;
};

// Failing adjacent pair, if any.
struct MultiContinuityReport {
  bool ok = true;
  std::optional<PointPair> violation;
  explicit operator bool() const { return ok; }
};

MultiContinuityReport has_weak_continuity(const MultiMap& f);
MultiContinuityReport has_strong_continuity(const MultiMap& f);

struct ConnectivityReport {
  enum class Failure { none, point_image_disconnected, images_not_adjacent };
  bool preserving = true;
  Failure failure = Failure::none;
  std::optional<Point> x, x2;
  explicit operator bool() const { return preserving; }
};

ConnectivityReport is_connectivity_preserving(const MultiMap& f);

// S(X,r): points of the graph are numerator vectors z with floor(z/r) in X,
// adjacent when the numerators are adjacent under X's own adjacency.
class Subdivision {
 public:
  Subdivision(ImageGraph base, int r);

  const ImageGraph& base() const { return base_; }
  int r() const { return r_; }
  const ImageGraph& graph() const { return graph_; }
  Index project(std::size_t i) const { return e_[i]; }  // E_r as base index
  const std::vector<Index>& projection() const { return e_; }
  const IndexSet& fiber(std::size_t x) const { return fibers_[x]; }
  std::string scaled(std::size_t i) const;  // "(z1/r,...)"

 private:
  ImageGraph base_;
  int r_;
  ImageGraph graph_;
  std::vector<Index> e_;
  std::vector<IndexSet> fibers_;
};

Subdivision subdivide(const ImageGraph& x, int r);

// F(x) = f(E_r^{-1}(x)).
MultiMap induced_multimap(const DigitalMap& f, const Subdivision& sub);

// f_s(z) = f(floor(z/s)) on S(X, r s); induces the same multimap as f.
DigitalMap refine_generator(const DigitalMap& f, const Subdivision& sub, const Subdivision& finer);

struct MultiSearchResult {
  SearchStatus status = SearchStatus::absent;  // absent = no generator for r <= r_max
  int r = 0;
  std::optional<DigitalMap> generator;
  std::optional<Subdivision> subdivision;
  std::uint64_t nodes = 0;
  bool found() const { return status == SearchStatus::found; }
};

// True when subdivision continuity is defined for the domain adjacency: a c_u,
// or a normal product whose factors are c_u leaves.
bool subdivision_compatible(const AdjacencyOracle& adj);

// Looks for a continuous generator on S(X,r) for r = 1..r_max, smallest r first.
MultiSearchResult is_continuous_multimap(const MultiMap& f, int r_max, std::uint64_t budget);

struct MultiRetractionReport {
  Verdict verdict = Verdict::no;
  std::string reason;
  std::optional<MultiSearchResult> search;
};

MultiRetractionReport is_multivalued_retraction(const MultiMap& f, const DigitalImage& a,
                                                int r_max, std::uint64_t budget);

MultiMap inverse_multimap(const DigitalMap& f);

struct ShyEquivalences {
  bool shy = false;
  bool preimages_of_connected_sets_connected = false;
  bool inverse_connectivity_preserving = false;
  bool inverse_weak_with_connected_fibers = false;
  bool agree() const {
    return shy == preimages_of_connected_sets_connected && shy == inverse_connectivity_preserving &&
           shy == inverse_weak_with_connected_fibers;
  }
};

// The second condition enumerates every connected subset of Y, so |Y| <= 20.
ShyEquivalences shy_equivalences(const DigitalMap& f);

MultiMap product_multimap(std::span<const MultiMap> fs, ProductKind kind);
MultiMap product_multimap(std::span<const MultiMap> fs, const ProductSpace& dom,
                          const ProductSpace& cod);

}  // namespace dtop
