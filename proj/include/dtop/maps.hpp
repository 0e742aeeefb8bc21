#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtop/graph.hpp"

namespace dtop {

// Three-way answer for searches that run under a node budget.
enum class Verdict { yes, no, budget_exceeded };
std::string to_string(Verdict v);

enum class SearchStatus { found, absent, budget_exceeded };
std::string to_string(SearchStatus s);

template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<T> witness;
  std::uint64_t nodes = 0;
  bool found() const { return status == SearchStatus::found; }
};

using PointPair = std::pair<Point, Point>;

class DigitalMap {
 public:
  DigitalMap(ImageGraph domain, ImageGraph codomain, std::vector<Index> table);

  static DigitalMap from_points(ImageGraph domain, ImageGraph codomain,
                                const std::vector<PointPair>& pairs);
  static DigitalMap from_function(ImageGraph domain, ImageGraph codomain,
                                  const std::function<Point(const Point&)>& fn);
  static DigitalMap identity(const ImageGraph& x);
  static DigitalMap constant(ImageGraph domain, ImageGraph codomain, const Point& value);

  const ImageGraph& domain() const { return dom_; }
  const ImageGraph& codomain() const { return cod_; }
  const std::vector<Index>& table() const { return table_; }
  Index operator[](std::size_t i) const { return table_[i]; }
  const Point& operator()(const Point& x) const { return cod_.point(table_[dom_.index_of(x)]); }

  std::string str() const;  // "x->y; ..." in domain order

  friend bool operator==(const DigitalMap& a, const DigitalMap& b) {
    return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  ImageGraph dom_, cod_;
  std::vector<Index> table_;
};

DigitalMap compose(const DigitalMap& g, const DigitalMap& f);  // g after f

struct ContinuityReport {
  bool continuous = true;
  std::optional<PointPair> violation;
  explicit operator bool() const { return continuous; }
};

ContinuityReport is_continuous(const DigitalMap& f);
// Same question for a raw table; used by enumeration-heavy callers.
bool is_continuous_table(const ImageGraph& dom, const ImageGraph& cod,
                         std::span<const Index> table);
bool is_locally_one_to_one(const DigitalMap& f);
bool is_injective(const DigitalMap& f);
bool is_surjective(const DigitalMap& f);
std::optional<DigitalMap> inverse(const DigitalMap& f);

struct IsoReport {
  bool iso = false;
  std::string reason;  // empty when iso
  std::optional<PointPair> violation;
  explicit operator bool() const { return iso; }
};
IsoReport is_isomorphism(const DigitalMap& f);
// Exhaustive over bijections; *checked receives the number tried.
std::optional<DigitalMap> find_isomorphism(const ImageGraph& x, const ImageGraph& y,
                                           std::uint64_t* checked = nullptr);

// Product of images with a product adjacency, keeping the factor structure.
class ProductSpace {
 public:
  ProductSpace(std::vector<ImageGraph> factors, ProductKind kind);

  const ImageGraph& graph() const { return graph_; }
  const std::vector<ImageGraph>& factors() const { return factors_; }
  ProductKind kind() const { return kind_; }

  std::size_t index(std::span<const Index> parts) const;
  Index part(std::size_t index, std::size_t factor) const {
    return static_cast<Index>((index / stride_[factor]) % factors_[factor].size());
  }

 private:
  std::vector<ImageGraph> factors_;
  ProductKind kind_;
  std::vector<std::size_t> stride_;
  ImageGraph graph_;
};

DigitalMap product_map(std::span<const DigitalMap> fs, ProductKind kind);
DigitalMap product_map(std::span<const DigitalMap> fs, const ProductSpace& dom,
                       const ProductSpace& cod);
DigitalMap projection(const ProductSpace& prod, std::size_t i);
// basepoints has one entry per factor; entry i is ignored.
DigitalMap injection(const ProductSpace& prod, std::size_t i, std::span<const Point> basepoints);

// Enumerates maps dom -> cod in lexicographic order of assignments along
// `order` (default: index order), each point restricted to its candidate list
// (empty list = whole codomain), pruning partial assignments that already
// break continuity. visit returns false to stop. Result: found = stopped by
// visit, absent = exhausted, budget_exceeded = more than `budget` nodes.
SearchStatus enumerate_continuous_maps(
    const ImageGraph& dom, const ImageGraph& cod, std::vector<IndexSet> candidates,
    IndexSet order, std::uint64_t budget,
    const std::function<bool(std::span<const Index>)>& visit, std::uint64_t* nodes = nullptr);

// Every table dom -> cod, continuous or not, in lexicographic order.
void for_each_map(std::size_t dom_size, std::size_t cod_size,
                  const std::function<bool(std::span<const Index>)>& visit);

// Points in breadth-first order from the seeds; unreached points follow in
// index order, each starting its own sweep.
IndexSet bfs_order(const ImageGraph& g, std::span<const Index> seeds);

struct RetractionReport {
  bool retraction = false;
  std::string reason;
  std::optional<Point> moved;
  std::optional<PointPair> violation;
  explicit operator bool() const { return retraction; }
};
RetractionReport is_retraction(const DigitalMap& r, const DigitalImage& subset);
SearchResult<DigitalMap> exists_retraction(const ImageGraph& x, const DigitalImage& a,
                                           std::uint64_t budget);

enum class ShyFailure { none, discontinuous, not_surjective, fiber_disconnected, pair_disconnected };
std::string to_string(ShyFailure f);

struct ShyReport {
  bool shy = false;
  ShyFailure failure = ShyFailure::none;
  std::optional<Point> point;
  std::optional<PointPair> pair;
  explicit operator bool() const { return shy; }
};
ShyReport is_shy(const DigitalMap& f);

std::optional<Point> approximate_fixed_point(const DigitalMap& f);

struct AfppResult {
  Verdict verdict = Verdict::yes;  // yes: every continuous self-map has an approximate fixed point
  std::optional<DigitalMap> witness;
  std::uint64_t nodes = 0;
};
AfppResult has_afpp(const ImageGraph& x, std::uint64_t budget);
// All continuous self-maps without an approximate fixed point.
SearchResult<std::vector<DigitalMap>> afpp_counterexamples(const ImageGraph& x,
                                                           std::uint64_t budget);

}  // namespace dtop
