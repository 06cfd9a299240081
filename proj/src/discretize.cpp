#include "frechet_kit/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace fk {

Point GridCell::lo() const {
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = static_cast<double>(index[k]) * side;
  return p;
}

Point GridCell::hi() const {
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = static_cast<double>(index[k] + 1) * side;
  return p;
}

Point GridCell::center() const {
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = (static_cast<double>(index[k]) + 0.5) * side;
  return p;
}

std::vector<Point> GridCell::corners() const { return box_corners(lo(), hi()); }

double GridCell::max_corner_distance(const Point& p) const {
  double s = 0;
  for (int k = 0; k < dim; ++k) {
    double a = std::abs(p[k] - static_cast<double>(index[k]) * side);
    double b = std::abs(p[k] - static_cast<double>(index[k] + 1) * side);
    double e = std::max(a, b);
    s += e * e;
  }
  return std::sqrt(s);
}

GridCell cell_containing(const Point& p, double side) {
  GridCell c;
  c.dim = p.dim();
  c.side = side;
  for (int k = 0; k < c.dim; ++k) c.index[k] = static_cast<long long>(std::floor(p[k] / side));
  return c;
}

namespace {

constexpr double kMemberTol = 1e-12;

template <class F>
void for_each_index(const std::array<long long, kMaxDim>& lo,
                    const std::array<long long, kMaxDim>& hi, int dim, F&& f) {
  std::array<long long, kMaxDim> cur = lo;
  while (true) {
    f(cur);
    int k = 0;
    while (k < dim) {
      if (++cur[k] <= hi[k]) break;
      cur[k] = lo[k];
      ++k;
    }
    if (k == dim) return;
  }
}

}  // namespace

GridSet grid_cells_of_ball(const Point& center, double r, double side) {
  if (!(side > 0)) throw InvalidArgument("grid side must be positive");
  const int d = center.dim();
  GridCell c0 = cell_containing(center, side);
  long long w = static_cast<long long>(std::ceil(r / side)) + 1;
  std::array<long long, kMaxDim> lo{}, hi{};
  for (int k = 0; k < d; ++k) {
    lo[k] = c0.index[k] - w;
    hi[k] = c0.index[k] + w;
  }
  GridSet out;
  for_each_index(lo, hi, d, [&](const std::array<long long, kMaxDim>& idx) {
    GridCell c;
    c.dim = d;
    c.side = side;
    c.index = idx;
    if (c.distance_to(center) <= r * (1 + kMemberTol)) out.push_back(c);
  });
  std::sort(out.begin(), out.end());
  return out;
}

SegmentFamily build_L(const Curve& tau_min, double delta_min, double eps) {
  if (tau_min.size() < 2) throw InvalidCurve("reference curve needs at least two vertices");
  const int d = tau_min.dim();
  const double side = eps * delta_min;
  SegmentFamily fam;
  for (int a = 0; a + 1 < tau_min.size(); ++a) {
    GridSet first = grid_cells_of_ball(tau_min[a], delta_min, side);
    GridSet second = grid_cells_of_ball(tau_min[a + 1], delta_min, side);
    std::set<std::array<long long, kMaxDim>> grid_vertices, all_vertices;
    auto collect = [&](const GridSet& cells, std::set<std::array<long long, kMaxDim>>& into) {
      for (const auto& c : cells)
        for (int mask = 0; mask < (1 << d); ++mask) {
          auto idx = c.index;
          for (int k = 0; k < d; ++k) idx[k] += (mask >> k) & 1;
          into.insert(idx);
        }
    };
    collect(first, grid_vertices);
    all_vertices = grid_vertices;
    collect(second, all_vertices);
    auto to_point = [&](const std::array<long long, kMaxDim>& idx) {
      Point p(d);
      for (int k = 0; k < d; ++k) p[k] = static_cast<double>(idx[k]) * side;
      return p;
    };
    std::vector<Point> pts;
    pts.reserve(all_vertices.size());
    for (const auto& idx : all_vertices) pts.push_back(to_point(idx));
    ConvexRegion hull = convex_hull(pts);
    Vec e = tau_min[a + 1] - tau_min[a];
    const bool degenerate = norm2(e) <= 1e-300;
    for (const auto& idx : grid_vertices) {
      Point x = to_point(idx);
      if (degenerate) {
        fam.segments.push_back(Segment{x, x});
        fam.edge.push_back(a);
        continue;
      }
      double tlo = -std::numeric_limits<double>::infinity(), thi = -tlo;
      for (const auto& h : hull.halfspaces()) {
        double slope = dot(h.normal, e);
        double room = h.offset - dot(h.normal, x) + 1e-12;
        if (std::abs(slope) <= 1e-15) continue;
        double t = room / slope;
        if (slope > 0) thi = std::min(thi, t);
        else tlo = std::max(tlo, t);
      }
      if (tlo > thi) tlo = thi = 0;
      fam.segments.push_back(Segment{x + e * tlo, x + e * thi});
      fam.edge.push_back(a);
    }
  }
  return fam;
}

bool GridSpec::contains(const GridCell& c) const {
  if (c.side != side) return false;
  for (const auto& p : centers)
    if (c.distance_to(p) <= radius * (1 + kMemberTol)) return true;
  return false;
}

std::optional<GridCell> GridSpec::cell_at(const Point& p) const {
  GridCell c = cell_containing(p, side);
  for (int v = 0; v < static_cast<int>(centers.size()); ++v) {
    if (c.distance_to(centers[v]) <= radius * (1 + kMemberTol)) {
      c.prov = {grid, curve, v};
      return c;
    }
  }
  return std::nullopt;
}

GridSet GridSpec::enumerate() const {
  GridSet out;
  for (int v = 0; v < static_cast<int>(centers.size()); ++v) {
    for (auto c : grid_cells_of_ball(centers[v], radius, side)) {
      c.prov = {grid, curve, v};
      out.push_back(c);
    }
  }
  std::stable_sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GridSpec g1_spec(const Curve& curve, int curve_index, double delta, double eps, int l) {
  GridSpec g;
  g.grid = 1;
  g.curve = curve_index;
  g.side = eps * delta / l;
  g.radius = delta + std::sqrt(double(curve.dim())) * eps * delta;
  g.centers = curve.vertices();
  return g;
}

GridSpec g2_spec(const std::vector<Curve>& curves, const std::vector<double>& deltas, double eps) {
  if (curves.empty()) throw EmptyInput("no curves");
  double dmax = *std::max_element(deltas.begin(), deltas.end());
  GridSpec g;
  g.grid = 2;
  g.side = eps * dmax;
  g.radius = 9.0 * std::sqrt(double(curves.front().dim())) * dmax;
  for (const auto& c : curves) g.centers.insert(g.centers.end(), c.vertices().begin(), c.vertices().end());
  return g;
}

std::vector<GridSet> build_G1(const std::vector<Curve>& curves, const std::vector<double>& deltas,
                              double eps, int l) {
  std::vector<GridSet> out;
  for (int i = 0; i < static_cast<int>(curves.size()); ++i)
    out.push_back(g1_spec(curves[i], i, deltas[i], eps, l).enumerate());
  return out;
}

GridSet build_G2(const std::vector<Curve>& curves, const std::vector<double>& deltas, double eps) {
  return g2_spec(curves, deltas, eps).enumerate();
}

}  // namespace fk
