#include "dtop/lattice.hpp"

#include <algorithm>

namespace dtop {

Point::Point(std::vector<Coord> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("point must have dimension >= 1");
}

Point::Point(std::initializer_list<Coord> coords) : Point(std::vector<Coord>(coords)) {}

std::string Point::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

Point concat(std::span<const Point> parts) {
  std::vector<Coord> c;
  for (const auto& p : parts) c.insert(c.end(), p.coords().begin(), p.coords().end());
  return Point(std::move(c));
}

DigitalImage::DigitalImage(std::vector<Point> points) {
  if (points.empty()) throw DomainError("digital image must be nonempty");
  dim_ = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != dim_)
      throw DimensionError("mixed dimensions in image: " + std::to_string(dim_) + " and " +
                           std::to_string(p.dim()));
  std::sort(points.begin(), points.end());
  auto dup = std::adjacent_find(points.begin(), points.end());
  if (dup != points.end()) throw DomainError("duplicate point " + dup->str());
  points_ = std::make_shared<const std::vector<Point>>(std::move(points));
}

std::optional<std::size_t> DigitalImage::index_of(const Point& p) const {
  if (p.dim() != dim_) return std::nullopt;
  auto it = std::lower_bound(points_->begin(), points_->end(), p);
  if (it == points_->end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_->begin());
}

std::size_t DigitalImage::require_index(const Point& p) const {
  if (p.dim() != dim_)
    throw DimensionError("point " + p.str() + " has dimension " + std::to_string(p.dim()) +
                         ", image has " + std::to_string(dim_));
  auto i = index_of(p);
  if (!i) throw DomainError("point " + p.str() + " is not in the image");
  return *i;
}

bool DigitalImage::contains_all(const DigitalImage& other) const {
  if (other.dim() != dim_) return false;
  return std::includes(points_->begin(), points_->end(), other.points().begin(),
                       other.points().end());
}

DigitalImage DigitalImage::subset(std::span<const std::uint32_t> indices) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (auto i : indices) pts.push_back((*points_)[i]);
  return DigitalImage(std::move(pts));
}

DigitalImage IntegerInterval::image() const { return interval(lo, hi); }

DigitalImage interval(Coord lo, Coord hi) {
  if (lo > hi) throw DomainError("interval with lo > hi");
  std::vector<Point> pts;
  for (Coord x = lo; x <= hi; ++x) pts.push_back(Point{x});
  return DigitalImage(std::move(pts));
}

DigitalImage box(const std::vector<std::pair<Coord, Coord>>& ranges) {
  if (ranges.empty()) throw DimensionError("box needs at least one range");
  for (auto [lo, hi] : ranges)
    if (lo > hi) throw DomainError("box range with lo > hi");
  std::vector<Point> pts;
  std::vector<Coord> cur;
  for (auto [lo, hi] : ranges) cur.push_back(lo);
  while (true) {
    pts.emplace_back(cur);
    std::size_t k = ranges.size();
    while (k > 0) {
      --k;
      if (cur[k] < ranges[k].second) {
        ++cur[k];
        break;
      }
      cur[k] = ranges[k].first;
      if (k == 0) return DigitalImage(std::move(pts));
    }
  }
}

DigitalImage cube(std::size_t dim, Coord lo, Coord hi) {
  return box(std::vector<std::pair<Coord, Coord>>(dim, {lo, hi}));
}

bool cu_adjacent_raw(int u, std::span<const Coord> p, std::span<const Coord> q) {
  int diff = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Coord d = p[i] - q[i];
    if (d == 0) continue;
    if (d != 1 && d != -1) return false;
    if (++diff > u) return false;
  }
  return diff >= 1;
}

bool cu_adjacent(int u, const Point& p, const Point& q) {
  if (p.dim() != q.dim())
    throw DimensionError("c_u adjacency on points of different dimension");
  if (u < 1 || static_cast<std::size_t>(u) > p.dim())
    throw DomainError("c_" + std::to_string(u) + " undefined on Z^" + std::to_string(p.dim()));
  return cu_adjacent_raw(u, p.coords(), q.coords());
}

}  // namespace dtop
