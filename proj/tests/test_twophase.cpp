#include <doctest.h>

#include "frechet_kit/oracles.hpp"
#include "frechet_kit/rng.hpp"

using namespace fk;

namespace {

std::vector<int> all_of(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

PlantOptions options_for(std::uint64_t seed) {
  PlantOptions o;
  o.seed = seed;
  o.n = 1 + seed % 3;
  o.m = 3 + seed % 2;
  o.ell_star = 2 + seed % 2;
  o.noise = 0.8;
  return o;
}

void mutate(Configuration& cfg, const Discretization& disc, Rng& rng) {
  for (auto& [c1, c2] : cfg.C)
    for (auto* c : {&c1, &c2})
      if (uniform01(rng) < 0.3) c->index[uniform_index(rng, disc.dim)] += uniform01(rng) < 0.5 ? 1 : -1;
  for (int k = 0; k < cfg.l; ++k) {
    if (uniform01(rng) < 0.15) cfg.S[k] = static_cast<int>(uniform_index(rng, disc.L.size()));
    if (!cfg.A[k]) continue;
    double r = uniform01(rng);
    if (k > 0 && k + 1 < cfg.l && r < 0.2)
      cfg.A[k].reset();
    else if (r < 0.5)
      cfg.A[k]->index[uniform_index(rng, disc.dim)] += uniform01(rng) < 0.5 ? 1 : -1;
  }
}

}  // namespace

TEST_CASE("planted witness survives forward, backward and verification") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto pl = plant_instance(options_for(seed));
    REQUIRE(pl.witness);
    auto disc = Discretization::build(pl.inst, all_of(pl.inst.n()));
    const auto& cfg = pl.witness->cfg;
    auto fwd = forward_construct(cfg, disc);
    REQUIRE(fwd.ok);
    for (int j = 0; j < cfg.l; ++j) CHECK(point_segment_distance(pl.witness->w[j], fwd.gamma[j]) <= 1e-7);
    auto bwd = backward_extract(cfg, fwd.gamma);
    REQUIRE(bwd.ok);
    CHECK(bwd.curve.size() == cfg.l);
    CHECK(effect_rel_set_holds(cfg, disc, bwd.curve));
    const double slack = 4 * disc.sqrt_d * disc.eps;
    CHECK(verify_candidate(bwd.curve, pl.inst, slack));
  }
}

TEST_CASE("forward reports an abort reason and level") {
  auto pl = plant_instance(options_for(4));
  REQUIRE(pl.witness);
  auto disc = Discretization::build(pl.inst, all_of(pl.inst.n()));
  auto cfg = pl.witness->cfg;
  cfg.A.front()->index[0] += 1000;
  auto fwd = forward_construct(cfg, disc);
  CHECK_FALSE(fwd.ok);
  CHECK(fwd.reason == AbortReason::Constraint3aFail);
  CHECK(fwd.step == 1);
  CHECK(to_string(fwd.reason) != to_string(AbortReason::None));
}

TEST_CASE("null anchor in the middle goes through the cylinder case") {
  Curve tau({Point{0.0, 0.0}, Point{2.0, 0.0}, Point{10.0, 0.0}});
  Curve sigma({Point{0.0, 0.0}, Point{6.0, 0.0}, Point{10.0, 0.0}});
  auto inst = QInstance::make({tau}, {0.1}, 3, 0.5);
  auto disc = Discretization::build(inst, all_of(1));
  auto snapped = snap_configuration(sigma, disc);
  REQUIRE(snapped);
  const auto& cfg = snapped->cfg;
  REQUIRE(cfg.l == 3);
  REQUIRE_FALSE(cfg.A[1].has_value());
  auto fwd = forward_construct(cfg, disc);
  REQUIRE(fwd.ok);
  CHECK(point_segment_distance(snapped->w[1], fwd.gamma[1]) <= 1e-7);
  auto bwd = backward_extract(cfg, fwd.gamma);
  REQUIRE(bwd.ok);
  CHECK(verify_candidate(bwd.curve, inst, 4 * disc.sqrt_d * disc.eps));
  // The middle output vertex stays on the carrier line of tau.
  CHECK(std::abs(bwd.curve[1][1]) <= 0.1 + 4 * disc.sqrt_d * disc.eps * 0.1);
}

TEST_CASE("fuzz: backward never fails after a forward success") {
  Rng rng(7);
  int successes = 0, trials = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto pl = plant_instance(options_for(seed));
    REQUIRE(pl.witness);
    auto disc = Discretization::build(pl.inst, all_of(pl.inst.n()));
    for (int t = 0; t < 50; ++t) {
      auto cfg = pl.witness->cfg;
      mutate(cfg, disc, rng);
      ++trials;
      if (!is_well_formed(cfg, disc)) continue;
      auto fwd = forward_construct(cfg, disc);
      if (!fwd.ok) continue;
      ++successes;
      auto bwd = backward_extract(cfg, fwd.gamma);
      REQUIRE(bwd.ok);
      CHECK(effect_rel_set_holds(cfg, disc, bwd.curve));
    }
  }
  CHECK(successes > trials / 10);
}

TEST_CASE("backward on point segments returns those points") {
  Point p{0.0, 0.0}, q{2.0, 0.0};
  Configuration cfg;
  cfg.l = 2;
  cfg.C = {{cell_containing(Point{0.5, 0.0}, 0.25), cell_containing(Point{1.0, 0.01}, 0.25)}};
  cfg.S = {0, 0};
  cfg.A = {std::nullopt, std::nullopt};
  std::vector<Segment> gamma{Segment{p, p}, Segment{q, q}};
  auto b = backward_extract(cfg, gamma);
  REQUIRE(b.ok);
  CHECK(dist(b.curve[0], p) == 0.0);
  CHECK(dist(b.curve[1], q) == 0.0);
}

TEST_CASE("verify_candidate basics") {
  Curve tau({Point{0.0, 0.0}, Point{3.0, 1.0}, Point{5.0, 0.0}});
  auto inst = QInstance::make({tau}, {0.5}, 3, 0.5);
  CHECK(verify_candidate(tau, inst, 0.0));
  Curve far({Point{50.0, 0.0}, Point{60.0, 0.0}});
  CHECK_FALSE(verify_candidate(far, inst, 0.5));
}
