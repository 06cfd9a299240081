#include "frechet_kit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frechet_kit/rng.hpp"

namespace fk {

namespace {

// Vertices of sigma plus extra points on its edges, each displaced by at most radius.
Curve noisy_copy(const Curve& sigma, int m, double radius, Rng& rng) {
  const int l = sigma.size();
  std::vector<double> params;
  for (int j = 0; j < l; ++j) params.push_back(j);
  for (int e = 0; e < m - l; ++e) params.push_back(uniform(rng, 0.0, double(l - 1)));
  std::sort(params.begin(), params.end());
  std::vector<Point> v;
  for (double s : params) v.push_back(sigma.at(s) + random_unit(rng, sigma.dim()) * (radius * uniform01(rng)));
  return Curve(std::move(v));
}

Curve random_polyline(int l, int d, double edge, Rng& rng) {
  std::vector<Point> v{Point(d)};
  for (int k = 0; k < d; ++k) v[0][k] = uniform(rng, -1, 1) * edge * 0.25;
  for (int j = 1; j < l; ++j) v.push_back(v.back() + random_unit(rng, d) * (edge * uniform(rng, 0.8, 1.2)));
  return Curve(std::move(v));
}

}  // namespace

PlantedInstance plant_instance(const PlantOptions& opt) {
  if (opt.m < opt.ell_star) throw InvalidArgument("m must be at least ell_star");
  Rng rng(opt.seed);
  PlantedInstance out;
  out.sigma_star = random_polyline(opt.ell_star, opt.d, opt.edge_length * opt.delta, rng);
  std::vector<Curve> curves;
  std::vector<double> deltas;
  for (int i = 0; i < opt.n; ++i) {
    double di = opt.delta * (1.0 + (opt.n > 1 ? opt.delta_spread * i / (opt.n - 1) : 0.0));
    deltas.push_back(di);
    curves.push_back(noisy_copy(out.sigma_star, opt.m, opt.noise * di, rng));
  }
  out.inst = QInstance::make(curves, deltas, opt.ell > 0 ? opt.ell : opt.ell_star, opt.eps);
  std::vector<int> all(opt.n);
  for (int i = 0; i < opt.n; ++i) all[i] = i;
  auto disc = Discretization::build(out.inst, all);
  out.witness = snap_configuration(out.sigma_star, disc);
  return out;
}

PlantedClusters plant_clusters(int k, int per_cluster, int m, int ell, int d, double separation,
                               double noise, std::uint64_t seed) {
  Rng rng(seed);
  PlantedClusters out;
  for (int c = 0; c < k; ++c) {
    Curve base = random_polyline(ell, d, 1.0, rng);
    std::vector<Point> v = base.vertices();
    for (auto& p : v) p[0] += separation * c;
    out.centers.emplace_back(v);
  }
  for (int c = 0; c < k; ++c) {
    for (int t = 0; t < per_cluster; ++t) {
      Curve tau = noisy_copy(out.centers[c], m, noise, rng);
      out.planted_cost += frechet_distance(tau, out.centers[c]).value;
      out.curves.push_back(tau);
      out.assignment.push_back(c);
    }
  }
  return out;
}

namespace {

std::vector<Point> grid_points(const Point& lo, const Point& hi, double res, std::uint64_t cap) {
  const int d = lo.dim();
  std::vector<long long> counts(d);
  double total = 1;
  for (int k = 0; k < d; ++k) {
    counts[k] = static_cast<long long>(std::floor((hi[k] - lo[k]) / res)) + 1;
    total *= double(counts[k]);
  }
  if (total > double(cap)) throw TooLarge("oracle grid too large");
  std::vector<Point> out;
  std::vector<long long> idx(d, 0);
  while (true) {
    Point p(d);
    for (int k = 0; k < d; ++k) p[k] = lo[k] + res * double(idx[k]);
    out.push_back(p);
    int k = 0;
    while (k < d && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

}  // namespace

BruteForceQ brute_force_Q(const QInstance& inst, double resolution) {
  if (inst.ell > 2) throw TooLarge("grid oracle supports ell <= 2");
  int ref = static_cast<int>(std::min_element(inst.deltas.begin(), inst.deltas.end()) -
                             inst.deltas.begin());
  const Curve& tmin = inst.curves[ref];
  const double pad = 2 * inst.deltas[ref];
  Point lo = tmin[0], hi = tmin[0];
  for (const auto& p : tmin.vertices())
    for (int k = 0; k < p.dim(); ++k) {
      lo[k] = std::min(lo[k], p[k] - pad);
      hi[k] = std::max(hi[k], p[k] + pad);
    }
  BruteForceQ out;
  auto pts = grid_points(lo, hi, resolution, 1'000'000);
  out.grid_points = pts.size();
  auto near_all = [&](const Point& p, bool first) {
    for (int i = 0; i < inst.n(); ++i) {
      const Point& v = first ? inst.curves[i].front() : inst.curves[i].back();
      if (dist(p, v) > inst.deltas[i]) return false;
    }
    return true;
  };
  auto fits = [&](const Curve& c) {
    for (int i = 0; i < inst.n(); ++i)
      if (!free_space_decision(c, inst.curves[i], inst.deltas[i])) return false;
    return true;
  };
  std::vector<Point> starts, ends;
  for (const auto& p : pts) {
    if (near_all(p, true)) starts.push_back(p);
    if (near_all(p, false)) ends.push_back(p);
  }
  for (const auto& p : starts) {
    Curve c({p});
    if (fits(c)) {
      out.found = true;
      out.curve = c;
      return out;
    }
  }
  if (inst.ell < 2) return out;
  for (const auto& p : starts)
    for (const auto& q : ends) {
      Curve c({p, q});
      if (fits(c)) {
        out.found = true;
        out.curve = c;
        return out;
      }
    }
  return out;
}

namespace {

using Reach = std::vector<std::pair<double, double>>;

std::pair<double, double> free_on(const Point& p, const Point& a, const Point& b, double r) {
  Vec v = b - a, w = a - p;
  double A = norm2(v), B = dot(w, v), C = norm2(w) - r * r;
  if (A <= 1e-300) return C <= 0 ? std::make_pair(0.0, 1.0) : std::make_pair(1.0, 0.0);
  double disc = B * B - A * C;
  if (disc < 0) return {1.0, 0.0};
  double sq = std::sqrt(disc);
  return {std::max(0.0, (-B - sq) / A), std::min(1.0, (-B + sq) / A)};
}

bool empty(const std::pair<double, double>& iv) { return iv.first > iv.second; }

Reach merge(Reach r) {
  std::sort(r.begin(), r.end());
  Reach out;
  for (const auto& iv : r) {
    if (!out.empty() && iv.first <= out.back().second + 1e-12)
      out.back().second = std::max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  return out;
}

Reach single_point(const Point& p, const Curve& tau, double r) {
  if (dist(p, tau[0]) > r) return {};
  double reach = 0;
  for (int b = 0; b + 1 < tau.size(); ++b) {
    auto f = free_on(p, tau[b], tau[b + 1], r);
    if (empty(f) || f.first > 1e-12) break;
    reach = b + f.second;
    if (f.second < 1 - 1e-12) break;
  }
  return {{0.0, reach}};
}

// Reachable levels on tau after appending the edge q -> p to the candidate curve.
Reach extend(const Reach& in, const Point& q, const Point& p, const Curve& tau, double r) {
  Reach out;
  std::pair<double, double> bottom{1.0, 0.0};
  if (!in.empty() && in.front().first <= 1e-12) {
    auto f = free_on(tau[0], q, p, r);
    if (!empty(f) && f.first <= 1e-12) bottom = f;
  }
  std::size_t cursor = 0;
  for (int b = 0; b + 1 < tau.size(); ++b) {
    double left_min = 2;
    while (cursor < in.size() && in[cursor].second < b) ++cursor;
    for (std::size_t c = cursor; c < in.size() && in[c].first <= b + 1; ++c) {
      double lo = std::max(in[c].first, double(b));
      if (lo <= std::min(in[c].second, double(b + 1))) {
        left_min = lo - b;
        break;
      }
    }
    bool left = left_min <= 1;
    auto right = free_on(p, tau[b], tau[b + 1], r);
    auto top = free_on(tau[b + 1], q, p, r);
    std::pair<double, double> rr{1.0, 0.0};
    if (!empty(bottom)) rr = right;
    else if (left && !empty(right)) rr = {std::max(right.first, left_min), right.second};
    if (!empty(rr)) out.emplace_back(b + rr.first, b + rr.second);
    std::pair<double, double> tt{1.0, 0.0};
    if (left) tt = top;
    else if (!empty(bottom) && !empty(top)) tt = {std::max(top.first, bottom.first), top.second};
    bottom = tt;
  }
  return merge(out);
}

int kappa_on_grid(const Curve& tau, double r, const std::vector<Point>& grid, int max_k) {
  const double end = tau.size() - 1;
  std::vector<Point> pts;
  for (const auto& g : grid) {
    double best = 1e300;
    for (int b = 0; b + 1 < tau.size(); ++b) best = std::min(best, point_segment_distance(g, tau.edge(b)));
    if (tau.size() == 1) best = dist(g, tau[0]);
    if (best <= r) pts.push_back(g);
  }
  std::vector<Reach> reach(pts.size());
  auto done = [&](const Reach& R) { return !R.empty() && R.back().second >= end - 1e-12; };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    reach[i] = single_point(pts[i], tau, r);
    if (done(reach[i])) return 1;
  }
  for (int k = 2; k <= max_k; ++k) {
    std::vector<Reach> next(pts.size());
    for (std::size_t q = 0; q < pts.size(); ++q) {
      if (reach[q].empty()) continue;
      for (std::size_t p = 0; p < pts.size(); ++p) {
        Reach e = extend(reach[q], pts[q], pts[p], tau, r);
        if (e.empty()) continue;
        next[p].insert(next[p].end(), e.begin(), e.end());
      }
    }
    for (std::size_t p = 0; p < pts.size(); ++p) {
      next[p] = merge(std::move(next[p]));
      if (done(next[p]) && dist(pts[p], tau.back()) <= r) return k;
    }
    reach = std::move(next);
  }
  return max_k + 1;
}

}  // namespace

KappaBounds brute_force_kappa(const Curve& tau, double delta, double resolution, int max_k) {
  if (tau.size() > 8) throw TooLarge("kappa oracle supports at most 8 vertices");
  Point lo = tau[0], hi = tau[0];
  for (const auto& p : tau.vertices())
    for (int k = 0; k < p.dim(); ++k) {
      lo[k] = std::min(lo[k], p[k] - delta);
      hi[k] = std::max(hi[k], p[k] + delta);
    }
  // Align the grid with the origin so results do not depend on the bounding box.
  for (int k = 0; k < lo.dim(); ++k) lo[k] = std::floor(lo[k] / resolution) * resolution;
  auto grid = grid_points(lo, hi, resolution, 200'000);
  KappaBounds out;
  out.slack = resolution * std::sqrt(double(tau.dim())) / 2.0 / delta;
  out.upper = kappa_on_grid(tau, delta, grid, max_k);
  out.lower = kappa_on_grid(tau, delta * (1 + out.slack), grid, max_k);
  return out;
}

namespace {

// Overlap length of the slab intervals of the segment from q to p against box R;
// negative when the segment misses R.
double slab_gap(const Point& lo_r, const Point& hi_r, const Point& q, const Point& p) {
  double t0 = 0, t1 = 1;
  for (int k = 0; k < p.dim(); ++k) {
    double v = p[k] - q[k];
    if (v == 0) {
      double out = std::max(lo_r[k] - q[k], q[k] - hi_r[k]);
      if (out > 0) return -out - 1;
      continue;
    }
    double u0 = (lo_r[k] - q[k]) / v, u1 = (hi_r[k] - q[k]) / v;
    if (u0 > u1) std::swap(u0, u1);
    t0 = std::max(t0, u0);
    t1 = std::min(t1, u1);
  }
  return t1 - t0;
}

}  // namespace

bool f_region_sampling_oracle(const Point& lo_r, const Point& hi_r, const Point& origin,
                              const std::vector<Vec>& spans, const Point& p, int samples_per_axis) {
  const int k = static_cast<int>(spans.size());
  auto at = [&](const std::vector<double>& u) {
    Point q = origin;
    for (int i = 0; i < k; ++i) q += spans[i] * u[i];
    return q;
  };
  std::vector<int> idx(k, 0);
  std::vector<double> best_u(k, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  const int steps = std::max(1, samples_per_axis - 1);
  while (true) {
    std::vector<double> u(k);
    for (int i = 0; i < k; ++i) u[i] = double(idx[i]) / steps;
    double g = slab_gap(lo_r, hi_r, at(u), p);
    if (g >= 0) return true;
    if (g > best) {
      best = g;
      best_u = u;
    }
    int i = 0;
    while (i < k && ++idx[i] == samples_per_axis) idx[i++] = 0;
    if (i == k) break;
  }
  // Local refinement around the best sample.
  for (double h = 1.0 / steps; h > 1e-13; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < k; ++i)
        for (double sgn : {1.0, -1.0}) {
          auto u = best_u;
          u[i] = std::clamp(u[i] + sgn * h, 0.0, 1.0);
          double g = slab_gap(lo_r, hi_r, at(u), p);
          if (g >= 0) return true;
          if (g > best) {
            best = g;
            best_u = u;
            moved = true;
          }
        }
    }
  }
  return false;
}

bool f_region_sampling_oracle(const Point& lo_r, const Point& hi_r, const Point& lo_s,
                              const Point& hi_s, const Point& p, int samples_per_axis) {
  std::vector<Vec> spans;
  for (int k = 0; k < p.dim(); ++k) {
    Vec e(p.dim());
    e[k] = hi_s[k] - lo_s[k];
    spans.push_back(e);
  }
  return f_region_sampling_oracle(lo_r, hi_r, lo_s, spans, p, samples_per_axis);
}

}  // namespace fk
