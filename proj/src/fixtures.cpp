#include "dtop/fixtures.hpp"

namespace dtop::fixtures {

ImageGraph graph(const DigitalImage& img, std::string_view spec) {
  return ImageGraph(img, parse_adjacency(spec));
}

ImageGraph interval_graph(Coord lo, Coord hi) {
  return ImageGraph(interval(lo, hi), AdjacencyOracle::cu(1, 1));
}

ImageGraph points_c1(std::vector<Coord> xs) {
  std::vector<Point> pts;
  for (auto x : xs) pts.push_back(Point{x});
  return ImageGraph(DigitalImage(std::move(pts)), AdjacencyOracle::cu(1, 1));
}

std::vector<Point> msc8() {
  return {Point{0, 0}, Point{1, 1}, Point{1, 2}, Point{0, 3}, Point{-1, 2}, Point{-1, 1}};
}

DigitalImage corner3() { return DigitalImage({Point{0, 0}, Point{1, 0}, Point{1, 1}}); }
DigitalImage corner2() { return DigitalImage({Point{0, 0}, Point{1, 0}}); }
DigitalImage diagonal_pair() { return DigitalImage({Point{1, 0}, Point{0, 1}}); }
DigitalImage axis_pair() { return DigitalImage({Point{0, 0}, Point{0, 1}}); }

}  // namespace dtop::fixtures
