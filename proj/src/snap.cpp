#include <algorithm>
#include <cmath>
#include <limits>

#include "frechet_kit/config.hpp"

namespace fk {

namespace {

constexpr double kEps = 1e-9;

using Matching = std::vector<std::vector<ParamInterval>>;  // [curve][vertex] -> range on sigma

bool match_all(const Curve& sigma, const Discretization& disc, std::vector<double>& thr,
               Matching& out) {
  out.assign(disc.n(), {});
  for (int i = 0; i < disc.n(); ++i) {
    auto path = free_space_path(sigma, disc.tau[i], thr[i]);
    if (!path) {
      thr[i] = std::max(thr[i], frechet_distance(sigma, disc.tau[i], 1e-9).value) + 1e-9;
      path = free_space_path(sigma, disc.tau[i], thr[i]);
      if (!path) return false;
    }
    for (int a = 0; a < disc.m(); ++a) out[i].push_back(path->s_at_t(a));
  }
  return true;
}

bool touches(const ParamInterval& iv, double lo, double hi) {
  return iv.lo <= hi + kEps && iv.hi >= lo - kEps;
}

// Index of the first edge with no matched input vertex, or -1.
int uncovered_edge(const Curve& sigma, const Matching& g) {
  for (int e = 0; e + 1 < sigma.size(); ++e) {
    bool covered = false;
    for (const auto& curve : g)
      for (const auto& iv : curve)
        if (touches(iv, e, e + 1)) covered = true;
    if (!covered) return e;
  }
  return -1;
}

Curve shortcut_edge(const Curve& sigma, const Matching& g, int e) {
  double p = -std::numeric_limits<double>::infinity();
  double q = std::numeric_limits<double>::infinity();
  for (const auto& curve : g) {
    int a = -1;
    for (int v = 0; v < static_cast<int>(curve.size()); ++v)
      if (curve[v].hi < e) a = v;
    if (a < 0 || a + 1 >= static_cast<int>(curve.size())) continue;
    p = std::max(p, curve[a].hi);
    q = std::min(q, curve[a + 1].lo);
  }
  p = std::clamp(p, 0.0, double(e));
  q = std::clamp(q, double(e + 1), double(sigma.size() - 1));
  std::vector<Point> v;
  for (int k = 0; k < sigma.size() && k < p - kEps; ++k) v.push_back(sigma[k]);
  v.push_back(sigma.at(p));
  v.push_back(sigma.at(q));
  for (int k = 0; k < sigma.size(); ++k)
    if (k > q + kEps) v.push_back(sigma[k]);
  return collapse_duplicates(Curve(std::move(v)));
}

}  // namespace

std::optional<SnappedConfiguration> snap_configuration(const Curve& sigma_in,
                                                       const Discretization& disc) {
  if (sigma_in.dim() != disc.dim) throw DimensionMismatch("candidate dimension differs");
  Curve sigma = collapse_duplicates(sigma_in);
  std::vector<double> thr(disc.n());
  for (int i = 0; i < disc.n(); ++i) thr[i] = disc.delta[i];
  Matching g;
  for (int iter = 0;; ++iter) {
    if (!match_all(sigma, disc, thr, g)) return std::nullopt;
    int e = uncovered_edge(sigma, g);
    if (e < 0) break;
    if (iter > 4 * sigma.size() + 4) return std::nullopt;
    sigma = shortcut_edge(sigma, g, e);
  }
  const int l = sigma.size();
  SnappedConfiguration out;
  out.shortcut = sigma;
  Configuration& cfg = out.cfg;
  cfg.l = l;
  for (int j = 0; j < l; ++j) {
    double best = std::numeric_limits<double>::infinity();
    int best_s = -1;
    for (int s = 0; s < static_cast<int>(disc.L.size()); ++s) {
      double d = point_segment_distance(sigma[j], disc.L.segments[s]);
      if (d < best) {
        best = d;
        best_s = s;
      }
    }
    if (best_s < 0) return std::nullopt;
    cfg.S.push_back(best_s);
    out.w.push_back(closest_point_on_segment(sigma[j], disc.L.segments[best_s]));
  }
  for (int i = 0; i < disc.n(); ++i) {
    PartitionFn pi(disc.m(), 0);
    for (int a = 0; a < disc.m(); ++a) {
      const auto& iv = g[i][a];
      int v = 0;
      if (l > 1 && iv.lo > kEps) v = std::clamp(static_cast<int>(std::ceil(iv.lo - kEps)), 1, l - 1);
      pi[a] = a == 0 ? 0 : std::max(v, pi[a - 1]);
    }
    cfg.P.push_back(pi);
  }
  auto on_edge = [&](int j, double s) { return lerp(out.w[j - 1], out.w[j], s - (j - 1)); };
  auto g1_cell = [&](int preferred, const Point& p) -> std::optional<GridCell> {
    if (auto c = disc.g1(preferred, l).cell_at(p)) return c;
    for (int i = 0; i < disc.n(); ++i)
      if (auto c = disc.g1(i, l).cell_at(p)) return c;
    return std::nullopt;
  };
  for (int j = 1; j <= l - 1; ++j) {
    double x = std::numeric_limits<double>::infinity(), y = -x;
    int ix = -1, iy = -1;
    for (int i = 0; i < disc.n(); ++i) {
      for (const auto& iv : g[i]) {
        if (!touches(iv, j - 1, j)) continue;
        double lo = std::clamp(iv.lo, double(j - 1), double(j));
        double hi = std::clamp(iv.hi, double(j - 1), double(j));
        if (lo < x) {
          x = lo;
          ix = i;
        }
        if (hi > y) {
          y = hi;
          iy = i;
        }
      }
    }
    if (ix < 0) return std::nullopt;
    auto c1 = g1_cell(ix, on_edge(j, x));
    auto c2 = g1_cell(iy, on_edge(j, y));
    if (!c1 || !c2) return std::nullopt;
    cfg.C.emplace_back(*c1, *c2);
  }
  for (int j = 0; j < l; ++j) cfg.A.push_back(disc.g2.cell_at(out.w[j]));
  if (!cfg.A.front() || !cfg.A.back()) return std::nullopt;
  return out;
}

}  // namespace fk
