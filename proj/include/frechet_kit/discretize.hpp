#pragma once

#include <array>
#include <optional>
#include <vector>

#include "frechet_kit/frechet.hpp"

namespace fk {

struct CellProvenance {
  int grid = 0;  // 1 or 2
  int curve = -1;
  int vertex = -1;
};

// Axis-aligned cube [index * side, (index + 1) * side], anchored at the origin.
struct GridCell {
  std::array<long long, kMaxDim> index{};
  int dim = 0;
  double side = 0.0;
  CellProvenance prov;

  Point lo() const;
  Point hi() const;
  Point center() const;
  std::vector<Point> corners() const;
  ConvexRegion region() const { return ConvexRegion::box(lo(), hi()); }
  double distance_to(const Point& p) const { return point_box_distance(p, lo(), hi()); }
  double max_corner_distance(const Point& p) const;

  friend bool operator==(const GridCell& a, const GridCell& b) {
    return a.dim == b.dim && a.side == b.side && a.index == b.index;
  }
  friend bool operator<(const GridCell& a, const GridCell& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.index < b.index;
  }
};

using GridSet = std::vector<GridCell>;

GridCell cell_containing(const Point& p, double side);

// All cells of the given side at distance <= r from the center.
GridSet grid_cells_of_ball(const Point& center, double r, double side);

struct SegmentFamily {
  std::vector<Segment> segments;
  std::vector<int> edge;  // index of the generating edge of the reference curve
  std::size_t size() const { return segments.size(); }
};

SegmentFamily build_L(const Curve& tau_min, double delta_min, double eps);

// Implicit form of a grid family: a cell belongs when it is close to some center.
struct GridSpec {
  int grid = 1;
  int curve = -1;
  double side = 0.0;
  double radius = 0.0;
  std::vector<Point> centers;

  bool contains(const GridCell& c) const;
  std::optional<GridCell> cell_at(const Point& p) const;
  GridSet enumerate() const;
};

GridSpec g1_spec(const Curve& curve, int curve_index, double delta, double eps, int l);
GridSpec g2_spec(const std::vector<Curve>& curves, const std::vector<double>& deltas, double eps);

// Explicit families. G1 is kept per curve.
std::vector<GridSet> build_G1(const std::vector<Curve>& curves, const std::vector<double>& deltas,
                              double eps, int l);
GridSet build_G2(const std::vector<Curve>& curves, const std::vector<double>& deltas, double eps);

}  // namespace fk
