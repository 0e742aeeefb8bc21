#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtop {

using Coord = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a point, subset or basepoint is not where an operation needs it.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class Point {
 public:
  explicit Point(std::vector<Coord> coords);
  Point(std::initializer_list<Coord> coords);

  std::size_t dim() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Coord> coords() const { return coords_; }

  std::string str() const;  // "(x1,...,xn)"

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<Coord> coords_;
};

Point concat(std::span<const Point> parts);

// Finite nonempty point set of a common dimension, kept in lexicographic order.
// Copies share storage.
class DigitalImage {
 public:
  explicit DigitalImage(std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_->size(); }
  const std::vector<Point>& points() const { return *points_; }
  const Point& operator[](std::size_t i) const { return (*points_)[i]; }

  bool contains(const Point& p) const { return index_of(p).has_value(); }
  std::optional<std::size_t> index_of(const Point& p) const;
  std::size_t require_index(const Point& p) const;

  bool contains_all(const DigitalImage& other) const;
  DigitalImage subset(std::span<const std::uint32_t> indices) const;

  friend bool operator==(const DigitalImage& a, const DigitalImage& b) {
    return a.points_ == b.points_ || *a.points_ == *b.points_;
  }

 private:
  std::shared_ptr<const std::vector<Point>> points_;
  std::size_t dim_ = 0;
};

struct IntegerInterval {
  Coord lo;
  Coord hi;
  DigitalImage image() const;
};

DigitalImage interval(Coord lo, Coord hi);
// Full lattice box, one [lo,hi] range per coordinate.
DigitalImage box(const std::vector<std::pair<Coord, Coord>>& ranges);
DigitalImage cube(std::size_t dim, Coord lo, Coord hi);

bool cu_adjacent(int u, const Point& p, const Point& q);
// Unchecked form for hot loops: spans of equal length, 1 <= u <= length.
bool cu_adjacent_raw(int u, std::span<const Coord> p, std::span<const Coord> q);

}  // namespace dtop
