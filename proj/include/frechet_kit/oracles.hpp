#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frechet_kit/config.hpp"
#include "frechet_kit/twophase.hpp"

namespace fk {

struct PlantOptions {
  int ell_star = 2;      // vertices of the planted curve
  int ell = 0;           // solver bound, defaults to ell_star
  int n = 2;
  int m = 3;
  int d = 2;
  double delta = 1.0;
  double delta_spread = 0.0;  // delta_i = delta * (1 + spread * i / (n - 1))
  double noise = 0.5;         // displacement as a fraction of delta_i
  double edge_length = 4.0;   // planted edge length in units of delta
  double eps = 0.5;
  std::uint64_t seed = 1;
};

struct PlantedInstance {
  QInstance inst;
  Curve sigma_star;
  std::optional<SnappedConfiguration> witness;
};

PlantedInstance plant_instance(const PlantOptions& opt);

struct PlantedClusters {
  std::vector<Curve> curves;
  std::vector<Curve> centers;
  std::vector<int> assignment;
  double planted_cost = 0.0;
};

PlantedClusters plant_clusters(int k, int per_cluster, int m, int ell, int d, double separation,
                               double noise, std::uint64_t seed);

// Grid search over vertex positions in tau_min + B(2 delta_min); ell <= 2.
struct BruteForceQ {
  bool found = false;
  Curve curve;
  std::uint64_t grid_points = 0;
};
BruteForceQ brute_force_Q(const QInstance& inst, double resolution);

// Bounds on the minimum vertex count of a curve within delta of tau, over grid curves.
// lower is certified with slack: no curve with fewer vertices is within delta.
struct KappaBounds {
  int lower = 0;
  int upper = 0;
  double slack = 0.0;  // relative, lower bound holds for threshold delta
};
KappaBounds brute_force_kappa(const Curve& tau, double delta, double resolution, int max_k = 5);

// p in F(R, S) iff some segment from S to p meets R. S = origin + sum u_i spans_i, u in the
// unit cube, sampled on a grid and then refined locally.
bool f_region_sampling_oracle(const Point& lo_r, const Point& hi_r, const Point& origin,
                              const std::vector<Vec>& spans, const Point& p, int samples_per_axis);
// Box S.
bool f_region_sampling_oracle(const Point& lo_r, const Point& hi_r, const Point& lo_s,
                              const Point& hi_s, const Point& p, int samples_per_axis);

}  // namespace fk
