#pragma once

#include <string_view>
#include <vector>

#include "dtop/graph.hpp"

// Small named images that recur across checks and tests.
namespace dtop::fixtures {

ImageGraph graph(const DigitalImage& img, std::string_view spec);
ImageGraph interval_graph(Coord lo, Coord hi);  // [lo,hi] with c1
ImageGraph points_c1(std::vector<Coord> xs);    // 1-d image with c1

// Six-point simple closed c2-curve, listed in cyclic order p0..p5.
std::vector<Point> msc8();

// Three points (0,0),(1,0),(1,1) of Z^2 and the two-point subset (0,0),(1,0).
DigitalImage corner3();
DigitalImage corner2();

// Two c2-adjacent points on a diagonal, and on an axis.
DigitalImage diagonal_pair();
DigitalImage axis_pair();

}  // namespace dtop::fixtures
