#include "frechet_kit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frechet_kit/lp.hpp"

namespace fk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves A t^2 + 2 B t + C <= 0 for A >= 0.
std::optional<ParamInterval> quadratic_sublevel(double A, double B, double C) {
  if (A <= 1e-300) {
    if (std::abs(B) <= 1e-300) {
      if (C <= 0) return ParamInterval{-kInf, kInf};
      return std::nullopt;
    }
    double t = -C / (2 * B);
    return B > 0 ? ParamInterval{-kInf, t} : ParamInterval{t, kInf};
  }
  double disc = B * B - A * C;
  if (disc < 0) return std::nullopt;
  double sq = std::sqrt(disc);
  // Numerically stable roots.
  double q = -(B + std::copysign(sq, B));
  double r1, r2;
  if (q == 0) {
    r1 = r2 = -B / A;
  } else {
    r1 = q / A;
    r2 = C / q;
  }
  if (r1 > r2) std::swap(r1, r2);
  return ParamInterval{r1, r2};
}

std::optional<ParamInterval> unit_clamp(std::optional<ParamInterval> iv) {
  if (!iv) return std::nullopt;
  double lo = std::max(0.0, iv->lo), hi = std::min(1.0, iv->hi);
  if (lo > hi) return std::nullopt;
  return ParamInterval{lo, hi};
}

double squared_tol(double r) { return 1e-12 * std::max(1.0, r * r); }

}  // namespace

std::optional<ParamInterval> intersect(const std::optional<ParamInterval>& a,
                                       const std::optional<ParamInterval>& b) {
  if (!a || !b) return std::nullopt;
  double lo = std::max(a->lo, b->lo), hi = std::min(a->hi, b->hi);
  if (lo > hi) return std::nullopt;
  return ParamInterval{lo, hi};
}

ConvexRegion ConvexRegion::universal(int dim) {
  ConvexRegion r;
  r.dim_ = dim;
  r.universal_ = true;
  r.has_hrep_ = true;
  return r;
}

ConvexRegion ConvexRegion::point(const Point& p) { return box(p, p); }

ConvexRegion ConvexRegion::box(const Point& lo, const Point& hi) {
  ConvexRegion r;
  r.dim_ = lo.dim();
  r.is_box_ = true;
  r.lo_ = lo;
  r.hi_ = hi;
  r.vertices_ = box_corners(lo, hi);
  r.has_hrep_ = true;
  for (int k = 0; k < r.dim_; ++k) {
    Vec e(r.dim_);
    e[k] = 1.0;
    r.halfspaces_.push_back({e, hi[k]});
    r.halfspaces_.push_back({-e, -lo[k]});
  }
  return r;
}

ConvexRegion ConvexRegion::from_generators(std::vector<Point> vertices, std::vector<Vec> rays) {
  if (vertices.empty()) throw EmptyInput("region without vertices");
  ConvexRegion r;
  r.dim_ = vertices.front().dim();
  r.vertices_ = std::move(vertices);
  r.rays_ = std::move(rays);
  return r;
}

ConvexRegion ConvexRegion::from_segment(const Segment& s) {
  if (s.degenerate()) return from_generators({s.a}, {});
  return from_generators({s.a, s.b}, {});
}

bool ConvexRegion::contains(const Point& x, double tol) const {
  if (universal_) return true;
  if (is_box_) {
    for (int k = 0; k < dim_; ++k)
      if (x[k] < lo_[k] - tol || x[k] > hi_[k] + tol) return false;
    return true;
  }
  if (has_hrep_) {
    for (const auto& h : halfspaces_)
      if (!h.contains(x, tol)) return false;
    return true;
  }
  const int nv = static_cast<int>(vertices_.size());
  const int nr = static_cast<int>(rays_.size());
  std::vector<std::vector<double>> A(dim_ + 1, std::vector<double>(nv + nr, 0.0));
  std::vector<double> b(dim_ + 1, 0.0);
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < nv; ++i) A[k][i] = vertices_[i][k];
    for (int j = 0; j < nr; ++j) A[k][nv + j] = rays_[j][k];
    b[k] = x[k];
  }
  for (int i = 0; i < nv; ++i) A[dim_][i] = 1.0;
  b[dim_] = 1.0;
  auto res = lp::minimize(A, b, std::vector<double>(nv + nr, 0.0), tol);
  return res.status == lp::Status::Optimal;
}

std::vector<Point> box_corners(const Point& lo, const Point& hi) {
  const int d = lo.dim();
  std::vector<Point> out;
  out.reserve(std::size_t{1} << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Point p(d);
    for (int k = 0; k < d; ++k) p[k] = (mask >> k) & 1 ? hi[k] : lo[k];
    out.push_back(p);
  }
  return out;
}

Projection project_onto_segment_line(const Point& x, const Segment& s) {
  Vec v = s.direction();
  double l2 = norm2(v);
  if (l2 <= 1e-300) throw DegenerateSegment();
  double t = dot(x - s.a, v) / l2;
  return {s.at(t), t};
}

Point closest_point_on_segment(const Point& x, const Segment& s) {
  Vec v = s.direction();
  double l2 = norm2(v);
  if (l2 <= 1e-300) return s.a;
  double t = std::clamp(dot(x - s.a, v) / l2, 0.0, 1.0);
  return s.at(t);
}

double point_segment_distance(const Point& x, const Segment& s) {
  return dist(x, closest_point_on_segment(x, s));
}

double point_box_distance(const Point& x, const Point& lo, const Point& hi) {
  double s = 0;
  for (int k = 0; k < x.dim(); ++k) {
    double e = 0;
    if (x[k] < lo[k]) e = lo[k] - x[k];
    else if (x[k] > hi[k]) e = x[k] - hi[k];
    s += e * e;
  }
  return std::sqrt(s);
}

bool regions_intersect(const ConvexRegion& r, const ConvexRegion& s) {
  if (r.is_universal() || s.is_universal()) return true;
  if (r.is_box() && s.is_box()) {
    for (int k = 0; k < r.dim(); ++k)
      if (r.box_hi()[k] < s.box_lo()[k] - kLpTol || s.box_hi()[k] < r.box_lo()[k] - kLpTol)
        return false;
    return true;
  }
  if (s.vertices().size() == 1 && s.rays().empty()) return r.contains(s.vertices()[0]);
  if (r.vertices().size() == 1 && r.rays().empty()) return s.contains(r.vertices()[0]);
  const int d = r.dim();
  const int n1 = static_cast<int>(r.vertices().size()), m1 = static_cast<int>(r.rays().size());
  const int n2 = static_cast<int>(s.vertices().size()), m2 = static_cast<int>(s.rays().size());
  const int cols = n1 + m1 + n2 + m2;
  std::vector<std::vector<double>> A(d + 2, std::vector<double>(cols, 0.0));
  std::vector<double> b(d + 2, 0.0);
  for (int k = 0; k < d; ++k) {
    int c = 0;
    for (const auto& v : r.vertices()) A[k][c++] = v[k];
    for (const auto& v : r.rays()) A[k][c++] = v[k];
    for (const auto& v : s.vertices()) A[k][c++] = -v[k];
    for (const auto& v : s.rays()) A[k][c++] = -v[k];
  }
  for (int i = 0; i < n1; ++i) A[d][i] = 1.0;
  for (int i = 0; i < n2; ++i) A[d + 1][n1 + m1 + i] = 1.0;
  b[d] = b[d + 1] = 1.0;
  auto res = lp::minimize(A, b, std::vector<double>(cols, 0.0));
  return res.status == lp::Status::Optimal;
}

ConvexRegion f_region(const ConvexRegion& r, const ConvexRegion& s) {
  if (r.dim() != s.dim()) throw DimensionMismatch("f_region dimension mismatch");
  if (r.is_universal() || s.is_universal() || regions_intersect(r, s))
    return ConvexRegion::universal(r.dim());
  std::vector<Vec> rays;
  rays.reserve(r.vertices().size() * s.vertices().size() + r.rays().size() + s.rays().size());
  for (const auto& beta : r.vertices())
    for (const auto& phi : s.vertices()) rays.push_back(beta - phi);
  for (const auto& psi : r.rays()) rays.push_back(psi);
  for (const auto& psi : s.rays()) rays.push_back(-psi);
  return ConvexRegion::from_generators(r.vertices(), std::move(rays));
}

std::optional<ParamInterval> clip_param_halfspace(const Segment& s, const Halfspace& h,
                                                  double tol) {
  double base = dot(h.normal, s.a);
  double slope = dot(h.normal, s.direction());
  double room = h.offset + tol - base;
  if (std::abs(slope) <= 1e-300) {
    if (room >= 0) return ParamInterval{0.0, 1.0};
    return std::nullopt;
  }
  double t = room / slope;
  if (slope > 0) return unit_clamp(ParamInterval{-kInf, t});
  return unit_clamp(ParamInterval{t, kInf});
}

std::optional<ParamInterval> clip_param_box(const Segment& s, const Point& lo, const Point& hi,
                                            double tol) {
  std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
  for (int k = 0; k < s.dim() && iv; ++k) {
    double a = s.a[k], v = s.b[k] - s.a[k];
    if (std::abs(v) <= 1e-300) {
      if (a < lo[k] - tol || a > hi[k] + tol) return std::nullopt;
      continue;
    }
    double t1 = (lo[k] - tol - a) / v, t2 = (hi[k] + tol - a) / v;
    if (t1 > t2) std::swap(t1, t2);
    iv = intersect(iv, ParamInterval{t1, t2});
  }
  return iv;
}

std::optional<ParamInterval> clip_param_convex(const Segment& s, const ConvexRegion& r) {
  if (r.is_universal()) return ParamInterval{0.0, 1.0};
  if (r.is_box()) return clip_param_box(s, r.box_lo(), r.box_hi(), kLpTol);
  if (r.has_hrep() && r.is_bounded()) {
    std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
    for (const auto& h : r.halfspaces()) {
      iv = intersect(iv, clip_param_halfspace(s, h, kLpTol));
      if (!iv) break;
    }
    return iv;
  }
  // Columns: t, u, alpha_i, x_k with t + u = 1.
  const int d = s.dim();
  const int nv = static_cast<int>(r.vertices().size());
  const int nr = static_cast<int>(r.rays().size());
  const int cols = 2 + nv + nr;
  std::vector<std::vector<double>> A(d + 2, std::vector<double>(cols, 0.0));
  std::vector<double> b(d + 2, 0.0);
  Vec v = s.direction();
  for (int k = 0; k < d; ++k) {
    A[k][0] = -v[k];
    for (int i = 0; i < nv; ++i) A[k][2 + i] = r.vertices()[i][k];
    for (int j = 0; j < nr; ++j) A[k][2 + nv + j] = r.rays()[j][k];
    b[k] = s.a[k];
  }
  for (int i = 0; i < nv; ++i) A[d][2 + i] = 1.0;
  b[d] = 1.0;
  A[d + 1][0] = 1.0;
  A[d + 1][1] = 1.0;
  b[d + 1] = 1.0;
  std::vector<double> cmin(cols, 0.0), cmax(cols, 0.0);
  cmin[0] = 1.0;
  cmax[0] = -1.0;
  auto res = lp::minimize_many(A, b, {cmin, cmax}, kLpTol);
  if (res[0].status != lp::Status::Optimal || res[1].status != lp::Status::Optimal)
    return std::nullopt;
  double lo = std::clamp(res[0].x[0], 0.0, 1.0), hi = std::clamp(res[1].x[0], 0.0, 1.0);
  if (lo > hi) std::swap(lo, hi);
  return ParamInterval{lo, hi};
}

std::optional<ParamInterval> clip_param_ball(const Segment& s, const Ball& b) {
  Vec v = s.direction();
  Vec w = s.a - b.center;
  double A = norm2(v), B = dot(w, v), C = norm2(w) - b.radius * b.radius - squared_tol(b.radius);
  if (A <= 1e-300) {
    if (C <= 0) return ParamInterval{0.0, 1.0};
    return std::nullopt;
  }
  return unit_clamp(quadratic_sublevel(A, B, C));
}

std::optional<ParamInterval> clip_param_cylinder(const Segment& s, const Cylinder& c) {
  Vec u = c.axis.direction();
  double l2 = norm2(u);
  if (l2 <= 1e-300) return clip_param_ball(s, Ball{c.axis.a, c.radius});
  std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
  iv = intersect(iv, clip_param_halfspace(s, Halfspace{-u, -dot(c.axis.a, u)}, kLpTol * l2));
  iv = intersect(iv, clip_param_halfspace(s, Halfspace{u, dot(c.axis.b, u)}, kLpTol * l2));
  if (!iv) return std::nullopt;
  auto perp = [&](const Vec& w) { return w - u * (dot(w, u) / l2); };
  Vec p0 = perp(s.a - c.axis.a), p1 = perp(s.direction());
  double A = norm2(p1), B = dot(p0, p1),
         C = norm2(p0) - c.radius * c.radius - squared_tol(c.radius);
  return intersect(iv, quadratic_sublevel(A, B, C));
}

std::optional<ParamInterval> clip_param_box_neighborhood(const Segment& s, const Point& lo,
                                                         const Point& hi, double r) {
  const int d = s.dim();
  std::vector<double> cuts = {0.0, 1.0};
  for (int k = 0; k < d; ++k) {
    double a = s.a[k], v = s.b[k] - s.a[k];
    if (std::abs(v) <= 1e-300) continue;
    for (double bound : {lo[k], hi[k]}) {
      double t = (bound - a) / v;
      if (t > 0 && t < 1) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const double r2 = r * r + squared_tol(r);
  std::optional<ParamInterval> out;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double t0 = cuts[p], t1 = cuts[p + 1];
    double tm = 0.5 * (t0 + t1);
    double A = 0, B = 0, C = -r2;
    for (int k = 0; k < d; ++k) {
      double a = s.a[k], v = s.b[k] - s.a[k];
      double x = a + tm * v;
      double e0, e1;
      if (x < lo[k]) {
        e0 = lo[k] - a;
        e1 = -v;
      } else if (x > hi[k]) {
        e0 = a - hi[k];
        e1 = v;
      } else {
        continue;
      }
      A += e1 * e1;
      B += e0 * e1;
      C += e0 * e0;
    }
    auto piece = intersect(quadratic_sublevel(A, B, C), ParamInterval{t0, t1});
    if (!piece) continue;
    if (!out) out = piece;
    else out = ParamInterval{std::min(out->lo, piece->lo), std::max(out->hi, piece->hi)};
  }
  return out;
}

Segment sub_segment(const Segment& s, const ParamInterval& iv) {
  return Segment{s.at(iv.lo), s.at(iv.hi)};
}

std::optional<Segment> clip_segment_convex(const Segment& s, const ConvexRegion& r) {
  auto iv = clip_param_convex(s, r);
  if (!iv) return std::nullopt;
  return sub_segment(s, *iv);
}

std::optional<Segment> clip_segment_halfspace(const Segment& s, const Halfspace& h) {
  auto iv = clip_param_halfspace(s, h);
  if (!iv) return std::nullopt;
  return sub_segment(s, *iv);
}

std::optional<Segment> clip_segment_cylinder(const Segment& s, const Cylinder& c) {
  auto iv = clip_param_cylinder(s, c);
  if (!iv) return std::nullopt;
  return sub_segment(s, *iv);
}

std::optional<Segment> segment_ball_intersection_extremes(const Segment& s, const Ball& b) {
  auto iv = clip_param_ball(s, b);
  if (!iv) return std::nullopt;
  return sub_segment(s, *iv);
}

}  // namespace fk
