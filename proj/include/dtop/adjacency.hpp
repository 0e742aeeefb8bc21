#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtop/lattice.hpp"

namespace dtop {

enum class AdjKind { Cu, NP, Tensor, Cartesian, Lex };

// Product head used when building product images and maps. For NP the level u
// is carried; the other kinds ignore it.
struct ProductKind {
  AdjKind kind = AdjKind::Cartesian;
  int u = 1;

  static ProductKind np(int u) { return {AdjKind::NP, u}; }
  static ProductKind tensor() { return {AdjKind::Tensor, 0}; }
  static ProductKind cartesian() { return {AdjKind::Cartesian, 0}; }
  static ProductKind lex() { return {AdjKind::Lex, 0}; }

  std::string str() const;  // "NP2", "T", "X", "L"
  friend bool operator==(const ProductKind&, const ProductKind&) = default;
};

class AdjacencySpec {
 public:
  static AdjacencySpec cu(int u, std::optional<int> dim = std::nullopt);
  static AdjacencySpec product(ProductKind head, std::vector<AdjacencySpec> factors);
  static AdjacencySpec np(int u, std::vector<AdjacencySpec> factors) {
    return product(ProductKind::np(u), std::move(factors));
  }
  static AdjacencySpec tensor(std::vector<AdjacencySpec> f) {
    return product(ProductKind::tensor(), std::move(f));
  }
  static AdjacencySpec cartesian(std::vector<AdjacencySpec> f) {
    return product(ProductKind::cartesian(), std::move(f));
  }
  static AdjacencySpec lex(std::vector<AdjacencySpec> f) {
    return product(ProductKind::lex(), std::move(f));
  }

  AdjKind kind() const { return kind_; }
  int u() const { return u_; }
  std::optional<int> pinned_dim() const { return dim_; }
  const std::vector<AdjacencySpec>& factors() const { return factors_; }

  std::size_t leaf_count() const;
  // Total dimension, known only when every leaf is pinned with '@'.
  std::optional<std::size_t> arity() const;
  std::string str() const;

  friend bool operator==(const AdjacencySpec&, const AdjacencySpec&) = default;

 private:
  AdjKind kind_ = AdjKind::Cu;
  int u_ = 1;
  std::optional<int> dim_;
  std::vector<AdjacencySpec> factors_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string_view text);
  std::size_t position() const { return position_; }  // 1-based column
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

// Structural violations in otherwise well-formed text, e.g. NP3 with two factors.
class ArityError : public Error {
 public:
  using Error::Error;
};

AdjacencySpec parse_adjacency(std::string_view text);
std::string print_adjacency(const AdjacencySpec& spec);

// A spec bound to concrete per-leaf dimensions; the evaluation interface.
class AdjacencyOracle {
 public:
  // split lists leaf dimensions in leaf order. Without it, unpinned leaves get
  // their dimension only when it is forced (a single free leaf, or every free
  // leaf at its minimum u); otherwise the binding is rejected as ambiguous.
  static AdjacencyOracle bind(const AdjacencySpec& spec, std::size_t dim,
                              std::span<const std::size_t> split = {});
  static AdjacencyOracle cu(int u, std::size_t dim);
  static AdjacencyOracle product(ProductKind head, std::vector<AdjacencyOracle> factors);

  std::size_t dim() const;
  AdjKind kind() const;
  std::size_t factor_count() const;
  AdjacencyOracle factor(std::size_t i) const;
  std::vector<std::size_t> factor_dims() const;
  std::vector<std::size_t> leaf_dims() const;

  // Spec with every leaf pinned; print of it is self-contained.
  AdjacencySpec spec() const;
  std::string str() const { return print_adjacency(spec()); }

  bool adjacent(const Point& p, const Point& q) const;
  bool adjacent_raw(std::span<const Coord> p, std::span<const Coord> q) const;

  friend bool operator==(const AdjacencyOracle& a, const AdjacencyOracle& b);

  struct Node;

 private:
  explicit AdjacencyOracle(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Binds spec to p's dimension (unique inference only) and evaluates.
bool adjacent(const AdjacencySpec& spec, const Point& p, const Point& q);

DigitalImage product_image(std::span<const DigitalImage> factors);

// First pair of domain points adjacent under a but not under b.
std::optional<std::pair<Point, Point>> domination_counterexample(const AdjacencyOracle& a,
                                                                 const AdjacencyOracle& b,
                                                                 const DigitalImage& domain);
bool dominates(const AdjacencyOracle& a, const AdjacencyOracle& b, const DigitalImage& domain);
bool dominates(const AdjacencySpec& a, const AdjacencySpec& b, const DigitalImage& domain);

}  // namespace dtop
