#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frechet_kit/point.hpp"

namespace fk {

inline constexpr double kLpTol = 1e-9;
inline constexpr double kHalfspaceTol = 1e-12;

struct Segment {
  Point a, b;
  int dim() const { return a.dim(); }
  Point at(double t) const { return lerp(a, b, t); }
  Vec direction() const { return b - a; }
  double length() const { return dist(a, b); }
  bool degenerate() const { return a == b; }
};

// Closed parameter interval [lo, hi] along some segment.
struct ParamInterval {
  double lo = 0.0, hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
};

std::optional<ParamInterval> intersect(const std::optional<ParamInterval>& a,
                                       const std::optional<ParamInterval>& b);

// {x : <normal, x> <= offset}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
  bool contains(const Point& x, double tol = kHalfspaceTol) const {
    return dot(normal, x) <= offset + tol;
  }
};

struct Ball {
  Point center;
  double radius = 0.0;
};

// Finite cylinder around the axis segment, capped by the two end slabs.
struct Cylinder {
  Segment axis;
  double radius = 0.0;
};

// Convex set given by vertices plus cone rays, optionally with a cached H-rep.
class ConvexRegion {
 public:
  ConvexRegion() = default;

  static ConvexRegion universal(int dim);
  static ConvexRegion point(const Point& p);
  static ConvexRegion box(const Point& lo, const Point& hi);
  static ConvexRegion from_generators(std::vector<Point> vertices, std::vector<Vec> rays);
  static ConvexRegion from_segment(const Segment& s);

  int dim() const { return dim_; }
  bool is_universal() const { return universal_; }
  bool is_bounded() const { return !universal_ && rays_.empty(); }
  bool has_hrep() const { return has_hrep_; }
  bool is_box() const { return is_box_; }
  const Point& box_lo() const { return lo_; }
  const Point& box_hi() const { return hi_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  void set_hrep(std::vector<Halfspace> hs) {
    halfspaces_ = std::move(hs);
    has_hrep_ = true;
  }

  bool contains(const Point& x, double tol = kLpTol) const;

 private:
  int dim_ = 0;
  bool universal_ = false;
  bool has_hrep_ = false;
  bool is_box_ = false;
  Point lo_, hi_;
  std::vector<Point> vertices_;
  std::vector<Vec> rays_;
  std::vector<Halfspace> halfspaces_;
};

std::vector<Point> box_corners(const Point& lo, const Point& hi);

struct Projection {
  Point point;
  double t = 0.0;
};
// Projection onto the supporting line; t is unclamped.
Projection project_onto_segment_line(const Point& x, const Segment& s);
Point closest_point_on_segment(const Point& x, const Segment& s);
double point_segment_distance(const Point& x, const Segment& s);
double point_box_distance(const Point& x, const Point& lo, const Point& hi);

// Supports d <= 3, including lower-dimensional inputs.
ConvexRegion convex_hull(const std::vector<Point>& pts);

bool regions_intersect(const ConvexRegion& r, const ConvexRegion& s);

// R ⊕ cone(R - S); universal when R and S meet.
ConvexRegion f_region(const ConvexRegion& r, const ConvexRegion& s);

std::optional<ParamInterval> clip_param_convex(const Segment& s, const ConvexRegion& r);
std::optional<ParamInterval> clip_param_halfspace(const Segment& s, const Halfspace& h,
                                                  double tol = kHalfspaceTol);
std::optional<ParamInterval> clip_param_box(const Segment& s, const Point& lo, const Point& hi,
                                            double tol = kHalfspaceTol);
std::optional<ParamInterval> clip_param_cylinder(const Segment& s, const Cylinder& c);
std::optional<ParamInterval> clip_param_ball(const Segment& s, const Ball& b);
// Parameters whose point lies within distance r of the box.
std::optional<ParamInterval> clip_param_box_neighborhood(const Segment& s, const Point& lo,
                                                         const Point& hi, double r);

Segment sub_segment(const Segment& s, const ParamInterval& iv);

std::optional<Segment> clip_segment_convex(const Segment& s, const ConvexRegion& r);
std::optional<Segment> clip_segment_halfspace(const Segment& s, const Halfspace& h);
std::optional<Segment> clip_segment_cylinder(const Segment& s, const Cylinder& c);
// First and last point of the segment inside the ball, as a segment.
std::optional<Segment> segment_ball_intersection_extremes(const Segment& s, const Ball& b);

}  // namespace fk
