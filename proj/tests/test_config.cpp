#include <doctest.h>

#include <algorithm>
#include <set>

#include "frechet_kit/config.hpp"
#include "frechet_kit/oracles.hpp"

using namespace fk;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<int> all_of(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("partitions: count, order and validity") {
  for (int m = 1; m <= 6; ++m) {
    for (int l = 1; l <= 4; ++l) {
      auto ps = enumerate_partitions(m, l);
      CHECK(ps.size() == partition_count(m, l));
      CHECK(partition_count(m, l) == binom(m - 1 + l - 1, l - 1));
      std::set<PartitionFn> uniq(ps.begin(), ps.end());
      CHECK(uniq.size() == ps.size());
      CHECK(std::is_sorted(ps.begin(), ps.end()));
      for (const auto& p : ps) {
        CHECK(is_valid_partition(p, l));
        CHECK(p.front() == 0);
      }
    }
  }
  // Brute force over all maps {0..m-1} -> {0..l-1}.
  const int m = 4, l = 3;
  int valid = 0;
  for (int code = 0; code < 81; ++code) {
    PartitionFn p(m);
    int c = code;
    for (int a = 0; a < m; ++a, c /= 3) p[a] = c % 3;
    bool mono = p[0] == 0 && std::is_sorted(p.begin(), p.end());
    CHECK(is_valid_partition(p, l) == mono);
    valid += mono;
  }
  CHECK(valid == static_cast<int>(partition_count(m, l)));
}

TEST_CASE("preimage returns contiguous blocks") {
  PartitionFn p{0, 0, 1, 1, 3};
  CHECK(preimage(p, 0) == std::make_pair(0, 1));
  CHECK(preimage(p, 1) == std::make_pair(2, 3));
  CHECK(!preimage(p, 2));
  CHECK(preimage(p, 3) == std::make_pair(4, 4));
}

TEST_CASE("literal enumeration count matches the product formula") {
  // A one-dimensional point curve keeps every grid tiny.
  Curve tau({Point{0.05}});
  auto inst = QInstance::make({tau}, {1.0}, 2, 0.99);
  auto disc = Discretization::build(inst, all_of(1));
  auto g2 = disc.g2.enumerate();
  for (int l = 1; l <= 2; ++l) {
    std::set<GridCell> g1;
    for (const auto& c : disc.g1(0, l).enumerate()) g1.insert(c);
    std::uint64_t expected = 1;
    for (int i = 0; i < disc.n(); ++i) expected *= partition_count(disc.m(), l);
    for (int j = 1; j < l; ++j) expected *= g1.size() * g1.size();
    for (int k = 1; k <= l; ++k) {
      std::uint64_t per_level = 0;
      for (const auto& s : disc.L.segments) {
        double a = std::min(s.a[0], s.b[0]), b = std::max(s.a[0], s.b[0]);
        for (const auto& c : g2) per_level += std::max(a, c.lo()[0]) <= std::min(b, c.hi()[0]);
        if (k > 1 && k < l) ++per_level;
      }
      expected *= per_level;
    }
    EnumerationBudget budget;
    std::uint64_t visited = 0;
    CHECK(enumerate_configurations(disc, l, budget, [&](const Configuration&) {
      ++visited;
      return true;
    }));
    CHECK(visited == expected);
    CHECK(visited > 0);
  }
}

TEST_CASE("enumeration honours the budget and early stop") {
  Curve tau({Point{0.0}, Point{1.0}, Point{2.0}});
  auto inst = QInstance::make({tau}, {1.0}, 2, 0.9);
  auto disc = Discretization::build(inst, all_of(1));
  EnumerationBudget small{10, 0};
  std::uint64_t visited = 0;
  CHECK_FALSE(enumerate_configurations(disc, 2, small, [&](const Configuration&) {
    ++visited;
    return true;
  }));
  CHECK(visited == 10);
  EnumerationBudget big;
  visited = 0;
  CHECK(enumerate_configurations(disc, 2, big, [&](const Configuration&) { return ++visited < 3; }));
  CHECK(visited == 3);
}

TEST_CASE("planted witness configurations are well formed and satisfy constraint 1") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    PlantOptions o;
    o.seed = seed;
    o.n = 1 + seed % 3;
    o.m = 3 + seed % 2;
    o.ell_star = 2 + seed % 2;
    o.d = seed % 4 == 0 ? 3 : 2;
    auto pl = plant_instance(o);
    REQUIRE(pl.witness);
    auto disc = Discretization::build(pl.inst, all_of(pl.inst.n()));
    const auto& cfg = pl.witness->cfg;
    CHECK(is_well_formed(cfg, disc));
    CHECK(check_constraint1(cfg, disc));
    CHECK(check_constraint3a(cfg, disc));
    CHECK(cfg.l <= o.ell_star);
  }
}

TEST_CASE("constraint 1 rejects cells far from the block") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PlantOptions o;
    o.seed = seed;
    o.n = 2;
    o.ell_star = 3;
    o.m = 4;
    auto pl = plant_instance(o);
    REQUIRE(pl.witness);
    auto disc = Discretization::build(pl.inst, all_of(2));
    auto cfg = pl.witness->cfg;
    REQUIRE(cfg.l >= 2);
    // With both cells of edge 1 far away, no segment between them reaches a block.
    bool has_block = false;
    for (const auto& p : cfg.P) has_block |= preimage(p, 1).has_value();
    if (!has_block) continue;
    cfg.C[0].first.index[0] += 1000;
    cfg.C[0].second.index[0] += 1000;
    CHECK_FALSE(check_constraint1_edge(cfg, disc, 1));
  }
}

TEST_CASE("constraint 3(a) bound on the first and last cells") {
  Curve t1({Point{0.0, 0.0}, Point{4.0, 0.0}});
  auto inst = QInstance::make({t1}, {1.0}, 2, 0.5);
  auto disc = Discretization::build(inst, all_of(1));
  auto near = cell_containing(Point{0.01, 0.01}, disc.g2.side);
  auto far = cell_containing(Point{3.0, 0.0}, disc.g2.side);
  CHECK(check_constraint3a_first(near, disc));
  CHECK_FALSE(check_constraint3a_first(far, disc));
  CHECK(check_constraint3a_last(far, disc) == (far.max_corner_distance(Point{4.0, 0.0}) <=
                                               1.0 + 2 * std::sqrt(2.0) * disc.eps * 1.0));
}

TEST_CASE("snapping a far middle vertex leaves its anchor null") {
  // The middle vertex of sigma is far from every vertex of tau.
  Curve tau({Point{0.0, 0.0}, Point{2.0, 0.0}, Point{10.0, 0.0}});
  Curve sigma({Point{0.0, 0.0}, Point{6.0, 0.0}, Point{10.0, 0.0}});
  auto inst = QInstance::make({tau}, {0.1}, 3, 0.5);
  auto disc = Discretization::build(inst, all_of(1));
  auto snapped = snap_configuration(sigma, disc);
  REQUIRE(snapped);
  const auto& cfg = snapped->cfg;
  CHECK(is_well_formed(cfg, disc));
  CHECK(cfg.A.front().has_value());
  CHECK(cfg.A.back().has_value());
  bool some_null = false;
  for (const auto& a : cfg.A) some_null |= !a.has_value();
  CHECK(some_null);
}
