#include <random>

#include "doctest.h"
#include "frechet_kit/geom.hpp"
#include "frechet_kit/lp.hpp"

using namespace fk;

namespace {

// Slab test written independently of the library clip code.
bool seg_hits_box(const Point& a, const Point& b, const Point& lo, const Point& hi) {
  double t0 = 0, t1 = 1;
  for (int k = 0; k < a.dim(); ++k) {
    double v = b[k] - a[k];
    if (v == 0) {
      if (a[k] < lo[k] || a[k] > hi[k]) return false;
      continue;
    }
    double u0 = (lo[k] - a[k]) / v, u1 = (hi[k] - a[k]) / v;
    if (u0 > u1) std::swap(u0, u1);
    t0 = std::max(t0, u0);
    t1 = std::min(t1, u1);
    if (t0 > t1) return false;
  }
  return true;
}

// Gift wrapping in the plane; returns the set of extreme points.
std::vector<Point> gift_wrap(const std::vector<Point>& pts) {
  int start = 0;
  for (int i = 1; i < (int)pts.size(); ++i)
    if (pts[i] < pts[start]) start = i;
  std::vector<Point> hull;
  int cur = start;
  do {
    hull.push_back(pts[cur]);
    int nxt = (cur + 1) % pts.size();
    for (int i = 0; i < (int)pts.size(); ++i) {
      double cr = (pts[nxt][0] - pts[cur][0]) * (pts[i][1] - pts[cur][1]) -
                  (pts[nxt][1] - pts[cur][1]) * (pts[i][0] - pts[cur][0]);
      double fa = dist2(pts[i], pts[cur]), fb = dist2(pts[nxt], pts[cur]);
      if (cr < 0 || (cr == 0 && fa > fb)) nxt = i;
    }
    cur = nxt;
  } while (cur != start && hull.size() <= pts.size());
  std::sort(hull.begin(), hull.end());
  return hull;
}

}  // namespace

TEST_CASE("lp solves a small program") {
  // min -x - y st x + s1 = 2, y + s2 = 3
  auto r = lp::minimize({{1, 0, 1, 0}, {0, 1, 0, 1}}, {2, 3}, {-1, -1, 0, 0});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-5));
  auto inf = lp::minimize({{1, 1}}, {-1}, {0, 0});
  CHECK(inf.status == lp::Status::Infeasible);
  auto unb = lp::minimize({{1, -1}}, {0}, {-1, 0});
  CHECK(unb.status == lp::Status::Unbounded);
}

TEST_CASE("projection onto a segment line") {
  auto pr = project_onto_segment_line({0, 0}, Segment{{1, 1}, {2, 2}});
  CHECK(pr.t == doctest::Approx(-1));
  CHECK(pr.point[0] == doctest::Approx(0));
  CHECK_THROWS_AS(project_onto_segment_line({0, 0}, Segment{{1, 1}, {1, 1}}), DegenerateSegment);
}

TEST_CASE("convex hull degeneracies") {
  CHECK_THROWS_AS(convex_hull({}), EmptyInput);
  auto single = convex_hull({{1, 2}, {1, 2}});
  CHECK(single.vertices().size() == 1);
  CHECK(single.contains({1, 2}));
  CHECK_FALSE(single.contains({1, 2.1}));
  auto line = convex_hull({{0, 0}, {1, 1}, {3, 3}, {2, 2}});
  CHECK(line.vertices().size() == 2);
  CHECK(line.contains({1.5, 1.5}));
  CHECK_FALSE(line.contains({1.5, 1.6}));
  auto sq = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}});
  CHECK(sq.vertices().size() == 4);
  auto cube = convex_hull(box_corners({0, 0, 0}, {1, 1, 1}));
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.halfspaces().size() == 6);
  CHECK(cube.contains({0.5, 0.5, 1.0}));
  CHECK_FALSE(cube.contains({0.5, 0.5, 1.01}));
  auto flat = convex_hull({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {0.2, 0.2, 1}});
  CHECK(flat.vertices().size() == 3);
  CHECK(flat.contains({0.2, 0.2, 1}));
  CHECK_FALSE(flat.contains({0.2, 0.2, 1.001}));
}

TEST_CASE("planar hull agrees with gift wrapping") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    int n = 3 + trial % 20;
    for (int i = 0; i < n; ++i) pts.push_back({U(rng), U(rng)});
    auto h = convex_hull(pts);
    auto verts = h.vertices();
    std::sort(verts.begin(), verts.end());
    CHECK(verts == gift_wrap(pts));
    for (const auto& p : pts) CHECK(h.contains(p));
  }
}

TEST_CASE("spatial hull contains its input and only uses input vertices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 40; ++i) pts.push_back({U(rng), U(rng), U(rng)});
    auto h = convex_hull(pts);
    for (const auto& p : pts) CHECK(h.contains(p, 1e-9));
    for (const auto& v : h.vertices()) {
      CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
      // A hull vertex is not in the hull of the remaining points.
      std::vector<Point> rest;
      for (const auto& p : pts)
        if (!(p == v)) rest.push_back(p);
      CHECK_FALSE(ConvexRegion::from_generators(rest, {}).contains(v, 1e-12));
    }
  }
}

TEST_CASE("F region of two points is a ray") {
  auto f = f_region(ConvexRegion::point({0, 0}), ConvexRegion::point({1, 0}));
  CHECK_FALSE(f.is_universal());
  CHECK(f.contains({0, 0}));
  CHECK(f.contains({-5, 0}));
  CHECK_FALSE(f.contains({0.5, 0}));
  CHECK_FALSE(f.contains({-1, 0.1}));
  auto u = f_region(ConvexRegion::box({0, 0}, {1, 1}), ConvexRegion::box({1, 1}, {2, 2}));
  CHECK(u.is_universal());
}

TEST_CASE("F region matches the segment-through-R characterization") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Point c1{U(rng), U(rng)}, c2{U(rng), U(rng)};
    Point lo1 = c1, hi1 = c1 + Point{0.3, 0.3}, lo2 = c2, hi2 = c2 + Point{0.3, 0.3};
    auto f = f_region(ConvexRegion::box(lo1, hi1), ConvexRegion::box(lo2, hi2));
    for (int probe = 0; probe < 60; ++probe) {
      Point p{U(rng) * 2, U(rng) * 2};
      bool oracle = false;
      for (int i = 0; i <= 20 && !oracle; ++i)
        for (int j = 0; j <= 20 && !oracle; ++j) {
          Point s{lo2[0] + 0.3 * i / 20, lo2[1] + 0.3 * j / 20};
          oracle = seg_hits_box(s, p, lo1, hi1);
        }
      bool inside = f.contains(p);
      // Sampling can only miss points near the boundary.
      if (oracle) CHECK(inside);
      if (inside && !oracle) {
        auto g = f_region(ConvexRegion::box(lo1 - Point{0.05, 0.05}, hi1 + Point{0.05, 0.05}),
                          ConvexRegion::box(lo2, hi2));
        CHECK(g.contains(p));
      }
      ++checked;
    }
  }
  CHECK(checked == 1200);
}

TEST_CASE("cylinder clip") {
  Cylinder c{Segment{{0, 0}, {2, 0}}, 1.0};
  auto r = clip_segment_cylinder(Segment{{1, 2}, {1, -2}}, c);
  REQUIRE(r);
  CHECK(r->a[1] == doctest::Approx(1));
  CHECK(r->b[1] == doctest::Approx(-1));
  CHECK_FALSE(clip_segment_cylinder(Segment{{3, 2}, {3, -2}}, c));
  auto along = clip_segment_cylinder(Segment{{-1, 0.5}, {3, 0.5}}, c);
  REQUIRE(along);
  CHECK(along->a[0] == doctest::Approx(0));
  CHECK(along->b[0] == doctest::Approx(2));
  // Degenerate axis behaves like a ball.
  auto ball = clip_segment_cylinder(Segment{{-2, 0}, {2, 0}}, Cylinder{Segment{{0, 0}, {0, 0}}, 1});
  REQUIRE(ball);
  CHECK(ball->a[0] == doctest::Approx(-1));
}

TEST_CASE("clips agree with dense scanning") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    Segment s{{U(rng), U(rng)}, {U(rng), U(rng)}};
    Ball b{{U(rng) * 0.5, U(rng) * 0.5}, std::abs(U(rng))};
    Halfspace h{{U(rng), U(rng)}, U(rng)};
    Point lo{U(rng) * 0.5, U(rng) * 0.5};
    Point hi = lo + Point{0.4, 0.7};
    double r = std::abs(U(rng)) * 0.5;
    Cylinder cyl{Segment{{U(rng), U(rng)}, {U(rng), U(rng)}}, std::abs(U(rng)) * 0.7};
    auto ib = clip_param_ball(s, b);
    auto ih = clip_param_halfspace(s, h);
    auto ibox = clip_param_box_neighborhood(s, lo, hi, r);
    auto ic = clip_param_cylinder(s, cyl);
    auto gen = ConvexRegion::from_generators({lo, hi, Point{lo[0], hi[1] + 0.3}}, {Vec{1.0, 0.2}});
    auto ig = clip_param_convex(s, gen);
    const int N = 2000;
    for (int i = 0; i <= N; ++i) {
      double t = double(i) / N;
      Point x = s.at(t);
      auto near_edge = [&](const std::optional<ParamInterval>& iv) {
        return iv && (std::abs(t - iv->lo) < 2e-3 || std::abs(t - iv->hi) < 2e-3);
      };
      bool in_ball = dist(x, b.center) <= b.radius;
      if (!near_edge(ib)) CHECK(in_ball == (ib && ib->contains(t)));
      bool in_h = dot(h.normal, x) <= h.offset;
      if (!near_edge(ih)) CHECK(in_h == (ih && ih->contains(t)));
      bool in_nb = point_box_distance(x, lo, hi) <= r;
      if (!near_edge(ibox)) CHECK(in_nb == (ibox && ibox->contains(t)));
      Vec u = cyl.axis.direction();
      double tau = dot(x - cyl.axis.a, u) / norm2(u);
      bool in_cyl = tau >= 0 && tau <= 1 && dist(x, cyl.axis.at(tau)) <= cyl.radius;
      if (!near_edge(ic)) CHECK(in_cyl == (ic && ic->contains(t)));
      if (!near_edge(ig)) CHECK(gen.contains(x) == (ig && ig->contains(t)));
    }
  }
}

TEST_CASE("clipping is monotone in the region") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Segment s{{U(rng), U(rng)}, {U(rng), U(rng)}};
    Point lo{U(rng), U(rng)};
    auto small = ConvexRegion::box(lo, lo + Point{0.5, 0.5});
    auto big = ConvexRegion::box(lo - Point{0.2, 0.1}, lo + Point{0.9, 0.6});
    auto a = clip_param_convex(s, small), b = clip_param_convex(s, big);
    if (a) {
      REQUIRE(b);
      CHECK(b->lo <= a->lo + 1e-12);
      CHECK(b->hi >= a->hi - 1e-12);
    }
  }
}

TEST_CASE("ball extremes") {
  auto e = segment_ball_intersection_extremes(Segment{{-3, 0}, {3, 0}}, Ball{{0, 0}, 1});
  REQUIRE(e);
  CHECK(e->a[0] == doctest::Approx(-1));
  CHECK(e->b[0] == doctest::Approx(1));
  CHECK_FALSE(segment_ball_intersection_extremes(Segment{{-3, 2}, {3, 2}}, Ball{{0, 0}, 1}));
  auto pt = segment_ball_intersection_extremes(Segment{{0.5, 0}, {0.5, 0}}, Ball{{0, 0}, 1});
  REQUIRE(pt);
  CHECK(pt->a == pt->b);
}
