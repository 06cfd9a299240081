#include "frechet_kit/twophase.hpp"

#include <algorithm>
#include <cmath>

namespace fk {

std::string to_string(AbortReason r) {
  switch (r) {
    case AbortReason::None: return "none";
    case AbortReason::Malformed: return "malformed";
    case AbortReason::Constraint1Fail: return "constraint1";
    case AbortReason::Constraint3aFail: return "constraint3a";
    case AbortReason::Constraint3bFail: return "constraint3b";
    case AbortReason::EmptyGamma: return "empty_gamma";
  }
  return "unknown";
}

std::string to_string(QStatus s) {
  switch (s) {
    case QStatus::Found: return "curve";
    case QStatus::Null: return "null";
    case QStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

namespace {

std::optional<ParamInterval> edge_window(const Configuration& cfg, const Discretization& disc,
                                         int i, int a, int k) {
  const Segment edge = disc.tau[i].edge(a);
  const double r = disc.delta[i] + 2 * disc.sqrt_d * disc.eps * disc.delta_max;
  std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
  for (const auto& x : cfg.A[k - 1]->corners()) {
    iv = intersect(iv, clip_param_ball(edge, Ball{x, r}));
    if (!iv) break;
  }
  return iv;
}

double support(const GridCell& c, const Vec& u, bool want_max) {
  double best = want_max ? -1e300 : 1e300;
  for (const auto& y : c.corners()) {
    double v = dot(y, u);
    best = want_max ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

}  // namespace

bool check_constraint3b(const Configuration& cfg, const Discretization& disc, int k) {
  for (int i = 0; i < disc.n(); ++i) {
    const PartitionFn& pi = cfg.P[i];
    for (int a = 0; a + 1 < disc.m(); ++a) {
      std::vector<ParamInterval> chain;
      for (int j = pi[a] + 1; j <= std::min(k, pi[a + 1]); ++j) {
        if (!cfg.A[j - 1]) continue;
        auto iv = edge_window(cfg, disc, i, a, j);
        if (!iv) return false;
        chain.push_back(*iv);
      }
      for (int r = static_cast<int>(chain.size()) - 2; r >= 0; --r) {
        chain[r].hi = std::min(chain[r].hi, chain[r + 1].hi);
        if (chain[r].lo > chain[r].hi + 1e-12) return false;
      }
    }
  }
  return true;
}

std::optional<Segment> forward_step(const Configuration& cfg, const Discretization& disc, int k,
                                    const Segment* prev, AbortReason& reason) {
  const int l = cfg.l;
  const Segment& s = disc.L.segments[cfg.S[k - 1]];
  const auto& Ak = cfg.A[k - 1];
  std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
  auto fail = [&](AbortReason why) -> std::optional<Segment> {
    reason = why;
    return std::nullopt;
  };
  if (k == 1) {
    if (!Ak || !check_constraint3a_first(*Ak, disc)) return fail(AbortReason::Constraint3aFail);
    if (l == 1 && !check_constraint3a_last(*Ak, disc)) return fail(AbortReason::Constraint3aFail);
  }
  if (k == l && k > 1) {
    if (!Ak || !check_constraint3a_last(*Ak, disc)) return fail(AbortReason::Constraint3aFail);
  }
  if (Ak) {
    iv = intersect(iv, clip_param_box(s, Ak->lo(), Ak->hi(), kLpTol));
    if (!iv) return fail(AbortReason::EmptyGamma);
  }
  if (k > 1) {
    auto region = f_region(cfg.C[k - 2].second.region(), ConvexRegion::from_segment(*prev));
    iv = intersect(iv, clip_param_convex(s, region));
    if (!iv) return fail(AbortReason::EmptyGamma);
  }
  if (k < l) {
    const auto& [c1, c2] = cfg.C[k - 1];
    iv = intersect(iv, clip_param_convex(s, f_region(c1.region(), c2.region())));
    if (!iv) return fail(AbortReason::EmptyGamma);
  }
  if (!Ak) {
    // Case 2: no grid cell pins down the vertex.
    for (int i = 0; i < disc.n() && iv; ++i) {
      const PartitionFn& pi = cfg.P[i];
      int a = -1;
      for (int b = 0; b + 1 < disc.m(); ++b)
        if (pi[b] < k && k <= pi[b + 1]) a = b;
      if (a < 0) continue;
      const Segment edge = disc.tau[i].edge(a);
      const double rc = disc.delta[i] + disc.sqrt_d * disc.eps * disc.delta_max;
      iv = intersect(iv, clip_param_cylinder(s, Cylinder{edge, rc}));
      Vec dir = edge.direction();
      double len = norm(dir);
      if (!iv || len <= 1e-300) continue;
      Vec u = dir * (1.0 / len);
      const double rn = disc.delta[i] + 3 * disc.sqrt_d * disc.eps * disc.delta[i];
      if (pi[a] < k - 1 && k - 1 <= pi[a + 1]) {
        const auto& prev_cell = cfg.A[k - 2];
        if (!prev_cell) {
          double lo = support(cfg.C[k - 2].second, u, false);
          iv = intersect(iv, clip_param_halfspace(s, Halfspace{-u, -lo}, kLpTol));
        } else if (auto nb = clip_param_box_neighborhood(edge, prev_cell->lo(), prev_cell->hi(), rn)) {
          Point p = edge.at(nb->hi);
          iv = intersect(iv, clip_param_halfspace(s, Halfspace{-u, -dot(p, u)}, kLpTol));
        }
      }
      if (iv && pi[a] < k + 1 && k + 1 <= pi[a + 1]) {
        const auto& next_cell = cfg.A[k];
        if (!next_cell) {
          double hi = support(cfg.C[k - 1].second, u, true);
          iv = intersect(iv, clip_param_halfspace(s, Halfspace{u, hi}, kLpTol));
        } else if (auto nb = clip_param_box_neighborhood(edge, next_cell->lo(), next_cell->hi(), rn)) {
          Point q = edge.at(nb->lo);
          iv = intersect(iv, clip_param_halfspace(s, Halfspace{u, dot(q, u)}, kLpTol));
        }
      }
    }
    if (!iv) return fail(AbortReason::EmptyGamma);
  }
  if (Ak && !check_constraint3b(cfg, disc, k)) return fail(AbortReason::Constraint3bFail);
  return sub_segment(s, *iv);
}

ForwardResult forward_construct(const Configuration& cfg, const Discretization& disc,
                                bool check_c1) {
  ForwardResult res;
  if (!is_well_formed(cfg, disc)) {
    res.reason = AbortReason::Malformed;
    return res;
  }
  if (check_c1 && !check_constraint1(cfg, disc)) {
    res.reason = AbortReason::Constraint1Fail;
    return res;
  }
  for (int k = 1; k <= cfg.l; ++k) {
    AbortReason why = AbortReason::None;
    auto g = forward_step(cfg, disc, k, k > 1 ? &res.gamma.back() : nullptr, why);
    if (!g) {
      res.reason = why;
      res.step = k;
      return res;
    }
    res.gamma.push_back(*g);
  }
  res.ok = true;
  return res;
}

BackwardResult backward_extract(const Configuration& cfg, const std::vector<Segment>& gamma) {
  BackwardResult res;
  const int l = cfg.l;
  if (static_cast<int>(gamma.size()) != l) throw InvalidArgument("gamma chain length mismatch");
  std::vector<Point> u(l);
  u[l - 1] = gamma[l - 1].at(0.5);
  for (int j = l - 1; j >= 1; --j) {
    auto region = f_region(cfg.C[j - 1].second.region(), ConvexRegion::point(u[j]));
    auto iv = clip_param_convex(gamma[j - 1], region);
    if (!iv) {
      res.failed_step = j;
      return res;
    }
    u[j - 1] = gamma[j - 1].at(iv->mid());
  }
  res.ok = true;
  res.curve = Curve(std::move(u));
  return res;
}

bool effect_rel_set_holds(const Configuration& cfg, const Discretization& disc,
                          const Curve& sigma, double tol) {
  const double r = disc.sqrt_d * disc.eps * disc.delta_max + tol;
  for (int j = 1; j <= cfg.l - 1; ++j) {
    Segment e = sigma.edge(j - 1);
    const auto& [c1, c2] = cfg.C[j - 1];
    auto i1 = clip_param_box_neighborhood(e, c1.lo(), c1.hi(), r);
    auto i2 = clip_param_box_neighborhood(e, c2.lo(), c2.hi(), r);
    if (!i1 || !i2) return false;
    double scale = std::max(e.length(), 1e-300);
    if (i1->lo > i2->hi + tol / scale) return false;
  }
  return true;
}

bool verify_candidate(const Curve& sigma, const QInstance& inst, double slack) {
  const double dmax = inst.delta_max();
  for (int i = 0; i < inst.n(); ++i)
    if (!free_space_decision(sigma, inst.curves[i], inst.deltas[i] + slack * dmax)) return false;
  return true;
}

}  // namespace fk
