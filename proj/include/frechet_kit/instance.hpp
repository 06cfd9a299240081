#pragma once

#include <vector>

#include "frechet_kit/discretize.hpp"

namespace fk {

// Input of the representative-curve problem. Curves share a common vertex count.
struct QInstance {
  std::vector<Curve> curves;
  std::vector<double> deltas;
  int ell = 1;
  double eps = 0.5;

  static QInstance make(std::vector<Curve> curves, std::vector<double> deltas, int ell, double eps);

  int n() const { return static_cast<int>(curves.size()); }
  int m() const { return curves.front().size(); }
  int dim() const { return curves.front().dim(); }
  double delta_max() const;
  double delta_min() const;
  // Grid parameter used by the discretization.
  double eps_internal() const;
};

// Pads to m vertices by repeatedly splitting the longest edge.
Curve pad_to(const Curve& c, int m);

// Grids and segment family for a set of participating curves.
struct Discretization {
  std::vector<Curve> tau;
  std::vector<double> delta;
  std::vector<int> global;
  double eps = 0.0;
  int dim = 0;
  double sqrt_d = 1.0;
  double delta_max = 0.0;
  double delta_min = 0.0;
  int ref = 0;
  SegmentFamily L;
  GridSpec g2;

  static Discretization build(const QInstance& inst, const std::vector<int>& subset);
  int n() const { return static_cast<int>(tau.size()); }
  int m() const { return tau.front().size(); }
  GridSpec g1(int i, int l) const { return g1_spec(tau[i], i, delta[i], eps, l); }
};

}  // namespace fk
