#include <random>

#include "doctest.h"
#include "frechet_kit/discretize.hpp"

using namespace fk;

TEST_CASE("one-dimensional ball cells") {
  auto cells = grid_cells_of_ball(Point{0.0}, 1.0, 1.0);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].index[0] == -2);
  CHECK(cells[3].index[0] == 1);
}

TEST_CASE("ball cells are exactly the cells meeting the ball") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Point c{U(rng), U(rng)};
    double r = 0.2 + std::abs(U(rng)) * 0.5, side = 0.1 + std::abs(U(rng)) * 0.1;
    auto cells = grid_cells_of_ball(c, r, side);
    // Brute force over a generous index window.
    std::size_t count = 0;
    long long cx = (long long)std::floor(c[0] / side), cy = (long long)std::floor(c[1] / side);
    long long w = (long long)(r / side) + 4;
    for (long long i = cx - w; i <= cx + w; ++i)
      for (long long j = cy - w; j <= cy + w; ++j) {
        double ex = std::max({0.0, i * side - c[0], c[0] - (i + 1) * side});
        double ey = std::max({0.0, j * side - c[1], c[1] - (j + 1) * side});
        if (ex * ex + ey * ey <= r * r) ++count;
      }
    CHECK(cells.size() == count);
    for (int s = 0; s < 100; ++s) {
      Point p{c[0] + U(rng) * r / 3, c[1] + U(rng) * r / 3};
      if (dist(p, c) > r) continue;
      auto cell = cell_containing(p, side);
      CHECK(std::binary_search(cells.begin(), cells.end(), cell));
    }
  }
}

TEST_CASE("segment family covers the reference neighborhood") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Point> v;
      for (int i = 0; i < 3; ++i) {
        Point p(d);
        for (int k = 0; k < d; ++k) p[k] = U(rng) * 2;
        v.push_back(p);
      }
      Curve tau(v);
      double delta = 0.4, eps = d == 2 ? 0.15 : 0.3;
      auto fam = build_L(tau, delta, eps);
      REQUIRE(fam.size() > 0);
      for (std::size_t s = 0; s < fam.size(); ++s) {
        Vec e = tau[fam.edge[s] + 1] - tau[fam.edge[s]];
        Vec dir = fam.segments[s].direction();
        double cross = norm2(dir) * norm2(e) - dot(dir, e) * dot(dir, e);
        CHECK(cross <= 1e-9 * std::max(1.0, norm2(dir) * norm2(e)));
      }
      const double bound = std::sqrt(double(d)) * eps * delta + 1e-9;
      for (int probe = 0; probe < 200; ++probe) {
        int a = probe % 2;
        double t = (U(rng) + 1) / 2;
        Point p = lerp(tau[a], tau[a + 1], t);
        Point off(d);
        for (int k = 0; k < d; ++k) off[k] = U(rng);
        off *= delta * std::abs(U(rng)) / std::max(norm(off), 1e-12);
        p += off;
        double best = 1e18;
        for (const auto& seg : fam.segments) best = std::min(best, point_segment_distance(p, seg));
        CHECK(best <= bound);
      }
    }
  }
  CHECK_THROWS_AS(build_L(Curve({{0, 0}}), 1.0, 0.1), InvalidCurve);
}

TEST_CASE("grid families agree with their implicit form") {
  Curve a({{0, 0}, {1, 0}}), b({{0, 0.3}, {1.2, 0.1}});
  std::vector<Curve> cs{a, b};
  std::vector<double> ds{0.2, 0.3};
  auto g1 = build_G1(cs, ds, 0.5, 2);
  REQUIRE(g1.size() == 2);
  CHECK(g1[0].front().side == doctest::Approx(0.05));
  auto spec = g1_spec(b, 1, 0.3, 0.5, 2);
  for (const auto& c : g1[1]) CHECK(spec.contains(c));
  auto g2 = build_G2(cs, ds, 0.5);
  CHECK(g2.front().side == doctest::Approx(0.15));
  auto s2 = g2_spec(cs, ds, 0.5);
  for (const auto& c : g2) CHECK(s2.contains(c));
  CHECK(s2.cell_at({0.5, 0.5}).has_value());
  CHECK_FALSE(s2.cell_at({100, 0}).has_value());
  const double r = s2.radius;
  for (const auto& c : g2) {
    double best = 1e18;
    for (const auto& p : s2.centers) best = std::min(best, c.distance_to(p));
    CHECK(best <= r * (1 + 1e-12));
  }
}
