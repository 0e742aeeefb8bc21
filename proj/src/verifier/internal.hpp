#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dtop/fixtures.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/multivalued.hpp"
#include "dtop/verifier.hpp"

namespace dtop::verify {

struct BudgetExhausted {};
struct CheckFailed {
  std::string witness;
};

// Inner searches (retractions, homotopies, generators) get this many nodes each.
constexpr std::uint64_t kSearchBudget = 50'000'000;

struct Context {
  std::uint64_t budget = 0, used = 0;
  std::mt19937_64 rng;
  std::string note;  // reported as the witness of a passing check

  void instance(std::uint64_t n = 1) {
    used += n;
    if (used > budget) throw BudgetExhausted{};
  }
  void expect(bool ok, const std::function<std::string()>& witness) const {
    if (!ok) throw CheckFailed{witness()};
  }
  void searched(SearchStatus s) const {
    if (s == SearchStatus::budget_exceeded) throw BudgetExhausted{};
  }
  void searched(Verdict v) const {
    if (v == Verdict::budget_exceeded) throw BudgetExhausted{};
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
};

// ---- instance families

// One representative per isomorphism class of images with 1..4 points, drawn
// from subsets of [0,6] (c1) and [0,2]^2 (c1, c2); ordered by size.
const std::vector<ImageGraph>& image_classes();
std::vector<ImageGraph> images_upto(std::size_t max_points);
bool has_edge(const ImageGraph& g);

std::vector<DigitalMap> all_maps(const ImageGraph& x, const ImageGraph& y);
std::vector<DigitalMap> continuous_maps(const ImageGraph& x, const ImageGraph& y);
std::vector<DigitalMap> self_maps(const ImageGraph& x);  // continuous only
std::vector<MultiMap> all_multimaps(const ImageGraph& x, const ImageGraph& y);

// All nonempty subsets of an image.
std::vector<DigitalImage> nonempty_subsets(const DigitalImage& x);

// Lazily built two-factor product spaces over a fixed list of images.
class Products {
 public:
  Products(std::vector<ImageGraph> images, ProductKind kind);
  const ProductSpace& operator()(std::size_t a, std::size_t b);
  const std::vector<ImageGraph>& images() const { return images_; }

 private:
  std::vector<ImageGraph> images_;
  ProductKind kind_;
  std::vector<std::optional<ProductSpace>> cache_;
};

// A map together with the class indices of its domain and codomain.
struct Instance {
  std::size_t x, y;
  DigitalMap f;
};
std::vector<Instance> map_instances(const std::vector<ImageGraph>& images, bool continuous_only);

struct MultiInstance {
  std::size_t x, y;
  MultiMap f;
};
std::vector<MultiInstance> multimap_instances(const std::vector<ImageGraph>& doms,
                                              const std::vector<ImageGraph>& cods);

// Product table of two tables over prebuilt product spaces.
std::vector<Index> product_table(const ProductSpace& dom, const ProductSpace& cod,
                                 std::span<const Index> f1, std::span<const Index> f2);
MultiMap product_multi(const ProductSpace& dom, const ProductSpace& cod, const MultiMap& f1,
                       const MultiMap& f2);

// ---- text for witnesses

std::string show(const ImageGraph& g);
std::string show(const DigitalImage& g);
std::string show(const DigitalMap& f);
std::string show(const MultiMap& f);
std::string show(const std::vector<Point>& pts);
std::string show(const PointPair& p);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

// Graph on images from text specs, e.g. img({{0},{1}}, "c1").
ImageGraph img(const std::vector<std::vector<Coord>>& pts, std::string_view spec);

// Connectivity of every subset-image, evaluated by brute force.
bool brute_connected(const ImageGraph& g, std::span<const Index> subset);

// ---- section registrations

void add_adjacency_checks(std::vector<TheoremCheck>& r);   // continuity basics, domination
void add_product_map_checks(std::vector<TheoremCheck>& r);
void add_connectivity_checks(std::vector<TheoremCheck>& r);
void add_homotopy_checks(std::vector<TheoremCheck>& r);
void add_retraction_checks(std::vector<TheoremCheck>& r);
void add_afpp_checks(std::vector<TheoremCheck>& r);
void add_multivalued_checks(std::vector<TheoremCheck>& r);
void add_shy_checks(std::vector<TheoremCheck>& r);

}  // namespace dtop::verify
