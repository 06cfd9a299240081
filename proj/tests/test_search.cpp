#include <doctest.h>

#include "frechet_kit/oracles.hpp"

using namespace fk;

TEST_CASE("collinear samples collapse to at most two vertices") {
  std::vector<Point> v;
  for (int i = 0; i < 5; ++i) v.push_back(Point{0.25 * i, 0.5 * i});
  auto inst = QInstance::make({Curve(v)}, {0.01}, 2, 0.5);
  auto r = solve_Q(inst);
  REQUIRE(r.status == QStatus::Found);
  CHECK(r.curve.size() <= 2);
  CHECK(free_space_decision(r.curve, inst.curves[0], 0.01 * 1.5));
}

TEST_CASE("curves far apart give Null, not a budget outcome") {
  Curve a({Point{0.0, 0.0}, Point{1.0, 1.0}, Point{2.0, 0.0}});
  Curve b({Point{10.0, 0.0}, Point{11.0, 1.0}, Point{12.0, 0.0}});
  auto inst = QInstance::make({a, b}, {1.0, 1.0}, 3, 0.5);
  REQUIRE(frechet_distance(a, b).value > 2 + 2 * 0.5);
  auto r = solve_Q(inst);
  CHECK(r.status == QStatus::Null);
  CHECK_FALSE(r.stats.budget_hit);
  CHECK_FALSE(brute_force_Q(QInstance::make({a, b}, {1.0, 1.0}, 2, 0.5), 0.125).found);
}

TEST_CASE("planted multi-curve instance is solved and verified") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    PlantOptions o;
    o.seed = seed;
    o.n = 3;
    o.m = 4;
    o.ell_star = 3;
    auto pl = plant_instance(o);
    auto r = solve_Q(pl.inst);
    REQUIRE(r.status == QStatus::Found);
    CHECK(r.curve.size() <= 3);
    CHECK(verify_candidate(r.curve, pl.inst, pl.inst.eps));
    REQUIRE(r.distances.size() == 3);
    for (int i = 0; i < 3; ++i)
      CHECK(r.distances[i] <= pl.inst.deltas[i] + pl.inst.eps * pl.inst.delta_max() + 1e-6);
  }
}

TEST_CASE("Subset5l finds a curve whenever Full does") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    PlantOptions o;
    o.seed = seed;
    o.n = 7;  // larger than 5l for l = 1
    o.m = 3;
    o.ell_star = 2;
    auto pl = plant_instance(o);
    auto full = solve_Q(pl.inst);
    SolveOptions so;
    so.mode = SolveMode::Subset5l;
    auto sub = solve_Q(pl.inst, so);
    if (full.status == QStatus::Found) {
      REQUIRE(sub.status == QStatus::Found);
      CHECK(verify_candidate(sub.curve, pl.inst, pl.inst.eps));
    }
    CHECK(sub.stats.subsets > 1);
  }
}

TEST_CASE("exhaustive search alone reports an exhausted budget distinctly") {
  PlantOptions o;
  o.seed = 3;
  auto pl = plant_instance(o);
  SolveOptions so;
  so.seeded = false;
  so.budget = 500;
  auto r = solve_Q(pl.inst, so);
  CHECK(r.status == QStatus::BudgetExceeded);
  CHECK(r.stats.budget_hit);
  CHECK(r.stats.search_steps == 500);
}

TEST_CASE("exhaustive search finds a curve on a one-dimensional instance") {
  Curve tau({Point{0.0}, Point{1.0}, Point{2.0}});
  auto inst = QInstance::make({tau}, {1.0}, 2, 0.9);
  SolveOptions so;
  so.seeded = false;
  so.budget = 2'000'000;
  auto r = solve_Q(inst, so);
  REQUIRE(r.status == QStatus::Found);
  CHECK(verify_candidate(r.curve, inst, inst.eps));
  CHECK(r.curve.size() <= 2);
}

TEST_CASE("thread count does not change the exhaustive answer") {
  Curve tau({Point{0.0}, Point{1.5}, Point{0.5}, Point{2.0}});
  auto inst = QInstance::make({tau}, {0.4}, 2, 0.9);
  SolveOptions one;
  one.seeded = false;
  one.budget = 3'000'000;
  SolveOptions four = one;
  four.threads = 4;
  auto a = solve_Q(inst, one);
  auto b = solve_Q(inst, four);
  REQUIRE(a.status == b.status);
  if (a.status == QStatus::Found) {
    REQUIRE(a.curve.size() == b.curve.size());
    for (int j = 0; j < a.curve.size(); ++j) CHECK(dist(a.curve[j], b.curve[j]) == 0.0);
  }
}

TEST_CASE("two_phase_curves returns unverified candidates of the requested size") {
  PlantOptions o;
  o.seed = 5;
  o.n = 2;
  o.ell_star = 2;
  auto pl = plant_instance(o);
  auto cs = two_phase_curves(pl.inst, 2, 0, 3);
  REQUIRE_FALSE(cs.empty());
  CHECK(cs.size() <= 3);
  for (const auto& c : cs) CHECK(c.size() <= 2);
}
