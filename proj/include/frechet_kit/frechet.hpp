#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frechet_kit/geom.hpp"

namespace fk {

inline constexpr double kDecisionTol = 1e-9;

class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<Point> vertices);

  int size() const { return static_cast<int>(v_.size()); }
  int dim() const { return v_.empty() ? 0 : v_.front().dim(); }
  bool empty() const { return v_.empty(); }
  const Point& operator[](int i) const { return v_[i]; }
  const std::vector<Point>& vertices() const { return v_; }
  const Point& front() const { return v_.front(); }
  const Point& back() const { return v_.back(); }
  Segment edge(int i) const { return Segment{v_[i], v_[i + 1]}; }
  double length() const;
  // Vertices a..b inclusive.
  Curve subcurve(int a, int b) const;
  // Global parameter s in [0, size()-1].
  Point at(double s) const;

 private:
  std::vector<Point> v_;
};

Curve collapse_duplicates(const Curve& c);

bool free_space_decision(const Curve& a, const Curve& b, double delta, double tol = kDecisionTol);

struct FrechetResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};
FrechetResult frechet_distance(const Curve& a, const Curve& b, double tol = 1e-6);

double discrete_frechet(const Curve& a, const Curve& b);

Curve densify(const Curve& c, double step);

// Monotone path through the free space; s runs along a, t along b.
struct MatchingPath {
  std::vector<std::pair<double, double>> points;
  // Range of s matched to the level t == value.
  ParamInterval s_at_t(double value) const;
  // Range of t matched to the level s == value.
  ParamInterval t_at_s(double value) const;
};
std::optional<MatchingPath> free_space_path(const Curve& a, const Curve& b, double delta,
                                            double tol = kDecisionTol);

}  // namespace fk
