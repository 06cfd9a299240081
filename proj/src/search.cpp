#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "frechet_kit/twophase.hpp"

namespace fk {

namespace {

// ---------------------------------------------------------------- seeds

double objective(const Curve& s, const Discretization& disc) {
  double f = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < disc.n(); ++i) {
    double d = frechet_distance(s, disc.tau[i], 1e-4 * disc.delta_max).value;
    f = std::max(f, (d - disc.delta[i]) / disc.delta_max);
  }
  return f;
}

bool below(const Curve& s, const Discretization& disc, double level) {
  for (int i = 0; i < disc.n(); ++i)
    if (!free_space_decision(s, disc.tau[i], disc.delta[i] + level * disc.delta_max, 0.0))
      return false;
  return true;
}

std::vector<Vec> search_directions(int d) {
  std::vector<Vec> dirs;
  for (int a = 0; a < d; ++a)
    for (double sa : {1.0, -1.0}) {
      Vec v(d);
      v[a] = sa;
      dirs.push_back(v);
    }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (double sa : {1.0, -1.0})
        for (double sb : {1.0, -1.0}) {
          Vec v(d);
          v[a] = sa * M_SQRT1_2;
          v[b] = sb * M_SQRT1_2;
          dirs.push_back(v);
        }
  return dirs;
}

struct Scored {
  Curve c;
  double f;
};

// Compass search on the vertex coordinates, minimizing the worst relative excess.
Scored refine(Scored cur, const Discretization& disc, double target, int max_evals) {
  const auto dirs = search_directions(disc.dim);
  double h = 0.5 * disc.delta_max;
  const double h_min = 0.02 * disc.eps * disc.delta_max;
  int evals = 0;
  while (h >= h_min && evals < max_evals && cur.f > target) {
    bool improved = false;
    for (int j = 0; j < cur.c.size() && cur.f > target; ++j) {
      for (const auto& dir : dirs) {
        std::vector<Point> v = cur.c.vertices();
        v[j] += dir * h;
        Curve cand(std::move(v));
        ++evals;
        if (below(cand, disc, cur.f - 0.01 * h / disc.delta_max)) {
          cur = {cand, objective(cand, disc)};
          improved = true;
          break;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return cur;
}

void subsets_with_ends(int m, int k, int cap, std::vector<std::vector<int>>& out) {
  // k >= 2 vertices out of m, always keeping 0 and m - 1.
  std::vector<int> pick(k);
  pick[0] = 0;
  pick[k - 1] = m - 1;
  std::vector<int> inner(k - 2);
  for (int i = 0; i < k - 2; ++i) inner[i] = i + 1;
  while (static_cast<int>(out.size()) < cap) {
    for (int i = 0; i < k - 2; ++i) pick[i + 1] = inner[i];
    out.push_back(pick);
    int i = k - 3;
    while (i >= 0 && inner[i] == m - 2 - (k - 3 - i)) --i;
    if (i < 0) break;
    ++inner[i];
    for (int j = i + 1; j < k - 2; ++j) inner[j] = inner[j - 1] + 1;
  }
}

std::vector<Scored> seed_curves(const Discretization& disc, int ell) {
  const int m = disc.m();
  std::vector<Scored> out;
  std::vector<int> order(disc.n());
  for (int i = 0; i < disc.n(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return disc.delta[a] < disc.delta[b]; });
  for (int l = 1; l <= ell; ++l) {
    std::vector<Scored> pool;
    if (l == 1) {
      Point mean(disc.dim);
      int count = 0;
      for (int i : order) {
        Point lo = disc.tau[i][0], hi = lo;
        for (const auto& p : disc.tau[i].vertices()) {
          mean += p;
          ++count;
          for (int k = 0; k < disc.dim; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
          }
        }
        Curve c({lerp(lo, hi, 0.5)});
        pool.push_back({c, objective(c, disc)});
      }
      Curve c({mean * (1.0 / count)});
      pool.push_back({c, objective(c, disc)});
    } else {
      const int k = std::min(l, m);
      for (int i : order) {
        std::vector<std::vector<int>> picks;
        subsets_with_ends(m, k, 64, picks);
        for (const auto& pick : picks) {
          std::vector<Point> v;
          for (int a : pick) v.push_back(disc.tau[i][a]);
          Curve c(std::move(v));
          pool.push_back({c, objective(c, disc)});
        }
      }
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Scored& a, const Scored& b) { return a.f < b.f; });
    const int keep = std::min<int>(3, pool.size());
    for (int s = 0; s < keep; ++s) out.push_back(refine(pool[s], disc, -0.05, 300 * l * disc.dim));
  }
  std::stable_sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) {
    bool fa = a.f <= 0, fb = b.f <= 0;
    if (fa != fb) return fa;
    if (fa && a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    return a.f < b.f;
  });
  return out;
}

// ------------------------------------------------------------ exhaustive

struct Shared {
  std::atomic<std::uint64_t> steps{0};
  std::uint64_t max_steps = 0;
  bool tick() { return steps.fetch_add(1, std::memory_order_relaxed) < max_steps; }
};

std::vector<PartitionFn> admissible_partitions(const Discretization& disc, int i, int l) {
  const Curve& tau = disc.tau[i];
  const double reach = 2 * (disc.delta[i] + disc.sqrt_d * disc.eps * disc.delta_min) * (1 + 1e-9);
  std::vector<PartitionFn> out;
  PartitionFn pi(disc.m(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < disc.m() && ok; ++a)
      if (pi[a] == 0 && dist(tau[a], tau[0]) > reach) ok = false;
    for (int j = 1; j < l && ok; ++j) {
      auto block = preimage(pi, j);
      if (!block) continue;
      Segment span{tau[block->first], tau[block->second]};
      for (int c = block->first; c <= block->second && ok; ++c)
        if (point_segment_distance(tau[c], span) > reach) ok = false;
    }
    if (ok) out.push_back(pi);
  } while (next_partition(pi, l));
  return out;
}

struct Outcome {
  bool complete = false;
  bool found = false;
  Curve curve;
  Configuration cfg;
};

class Dfs {
 public:
  using Accept = std::function<bool(const Curve&, const Configuration&)>;

  Dfs(const Discretization& disc, int l, Shared& shared, const GridSet& g1, const Accept& accept)
      : d_(disc), l_(l), sh_(shared), g1_(g1), accept_(accept) {
    cfg_.l = l;
    cfg_.C.assign(l - 1, {});
    cfg_.S.assign(l, -1);
    cfg_.A.assign(l, std::nullopt);
    gamma_.resize(l);
    preset_.assign(l + 1, false);
  }

  Outcome run(const std::vector<PartitionFn>& P) {
    cfg_.P = P;
    Outcome o;
    bool found = level(1);
    o.complete = !out_of_budget_;
    o.found = found;
    if (found) {
      o.curve = curve_;
      o.cfg = best_cfg_;
    }
    return o;
  }

 private:
  bool tick() {
    if (out_of_budget_ || !sh_.tick()) {
      out_of_budget_ = true;
      return false;
    }
    return true;
  }

  bool endpoint_ok(const Segment& s, bool first) const {
    for (int i = 0; i < d_.n(); ++i) {
      const Point& v = first ? d_.tau[i].front() : d_.tau[i].back();
      double bound = d_.delta[i] + 2 * d_.sqrt_d * d_.eps * d_.delta_max;
      if (point_segment_distance(v, s) > bound * (1 + 1e-9)) return false;
    }
    return true;
  }

  std::optional<ParamInterval> base_interval(int k, const Segment& s) const {
    std::optional<ParamInterval> iv = ParamInterval{0.0, 1.0};
    if (k > 1) {
      auto region = f_region(cfg_.C[k - 2].second.region(), ConvexRegion::from_segment(gamma_[k - 2]));
      iv = clip_param_convex(s, region);
    }
    return iv;
  }

  // G2 cells meeting the given piece of segment.
  std::vector<GridCell> cells_on(const Segment& piece) const {
    const double side = d_.g2.side;
    std::array<long long, kMaxDim> lo{}, hi{};
    for (int k = 0; k < d_.dim; ++k) {
      double a = std::min(piece.a[k], piece.b[k]), b = std::max(piece.a[k], piece.b[k]);
      lo[k] = static_cast<long long>(std::floor(a / side - 1e-9));
      hi[k] = static_cast<long long>(std::floor(b / side + 1e-9));
    }
    std::vector<GridCell> out;
    std::array<long long, kMaxDim> cur = lo;
    while (true) {
      GridCell c;
      c.dim = d_.dim;
      c.side = side;
      c.index = cur;
      if (clip_param_box(piece, c.lo(), c.hi(), kLpTol) && d_.g2.contains(c)) out.push_back(c);
      int k = 0;
      while (k < d_.dim) {
        if (++cur[k] <= hi[k]) break;
        cur[k] = lo[k];
        ++k;
      }
      if (k == d_.dim) break;
    }
    return out;
  }

  std::vector<std::optional<GridCell>> a_options(int k, const Segment& piece) const {
    std::vector<std::optional<GridCell>> out;
    if (k > 1 && k < l_) out.push_back(std::nullopt);
    for (const auto& c : cells_on(piece)) {
      if (k == 1 && !check_constraint3a_first(c, d_)) continue;
      if (k == l_ && !check_constraint3a_last(c, d_)) continue;
      out.push_back(c);
    }
    return out;
  }

  bool finish() {
    auto b = backward_extract(cfg_, gamma_);
    if (!b.ok) return false;
    if (!accept_(b.curve, cfg_)) return false;
    curve_ = b.curve;
    best_cfg_ = cfg_;
    return true;
  }

  bool step_and_descend(int k) {
    AbortReason why;
    auto g = forward_step(cfg_, d_, k, k > 1 ? &gamma_[k - 2] : nullptr, why);
    if (!g) return false;
    gamma_[k - 1] = *g;
    if (k == l_) return finish();
    return level(k + 1);
  }

  bool with_cells(int k) {
    if (k == l_) return step_and_descend(k);
    for (const auto& c2 : g1_) {
      for (const auto& c1 : g1_) {
        if (!tick()) return false;
        cfg_.C[k - 1] = {c1, c2};
        if (!check_constraint1_edge(cfg_, d_, k)) continue;
        if (cfg_.A[k - 1]) {
          if (step_and_descend(k)) return true;
          if (out_of_budget_) return false;
          continue;
        }
        // A null vertex needs the next level's segment and cell fixed first.
        for (int s = 0; s < static_cast<int>(d_.L.size()); ++s) {
          const Segment& seg = d_.L.segments[s];
          if (k + 1 == l_ && !endpoint_ok(seg, false)) continue;
          for (const auto& a : a_options(k + 1, seg)) {
            if (!tick()) return false;
            cfg_.S[k] = s;
            cfg_.A[k] = a;
            preset_[k + 1] = true;
            bool ok = step_and_descend(k);
            preset_[k + 1] = false;
            if (ok) return true;
            if (out_of_budget_) return false;
          }
        }
      }
    }
    return false;
  }

  bool level(int k) {
    if (preset_[k]) {
      const Segment& s = d_.L.segments[cfg_.S[k - 1]];
      if (!base_interval(k, s)) return false;
      return with_cells(k);
    }
    for (int s = 0; s < static_cast<int>(d_.L.size()); ++s) {
      if (!tick()) return false;
      const Segment& seg = d_.L.segments[s];
      if (k == 1 && !endpoint_ok(seg, true)) continue;
      if (k == l_ && !endpoint_ok(seg, false)) continue;
      auto base = base_interval(k, seg);
      if (!base) continue;
      cfg_.S[k - 1] = s;
      for (const auto& a : a_options(k, sub_segment(seg, *base))) {
        if (!tick()) return false;
        cfg_.A[k - 1] = a;
        if (with_cells(k)) return true;
        if (out_of_budget_) return false;
      }
    }
    return false;
  }

  const Discretization& d_;
  int l_;
  Shared& sh_;
  const GridSet& g1_;
  const Accept& accept_;
  Configuration cfg_;
  std::vector<Segment> gamma_;
  std::vector<bool> preset_;
  bool out_of_budget_ = false;
  Curve curve_;
  Configuration best_cfg_;
};

GridSet g1_union(const Discretization& disc, int l) {
  GridSet cells;
  for (int i = 0; i < disc.n(); ++i) {
    auto part = disc.g1(i, l).enumerate();
    cells.insert(cells.end(), part.begin(), part.end());
  }
  std::stable_sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

// Exhaustive search for one l. Units are partition tuples processed in order;
// with several threads the earliest successful unit still wins.
Outcome exhaustive(const Discretization& disc, int l, Shared& shared, int threads,
                   const Dfs::Accept& accept) {
  std::vector<std::vector<PartitionFn>> per_curve;
  std::uint64_t units = 1;
  for (int i = 0; i < disc.n(); ++i) {
    per_curve.push_back(admissible_partitions(disc, i, l));
    units *= per_curve.back().size();
    if (units == 0) return Outcome{true, false, {}, {}};
  }
  const GridSet g1 = g1_union(disc, l);
  auto unit_tuple = [&](std::uint64_t u) {
    std::vector<PartitionFn> P(disc.n());
    for (int i = disc.n() - 1; i >= 0; --i) {
      P[i] = per_curve[i][u % per_curve[i].size()];
      u /= per_curve[i].size();
    }
    return P;
  };
  std::mutex mu;
  std::map<std::uint64_t, Outcome> results;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto worker = [&]() {
    while (true) {
      std::uint64_t u = next.fetch_add(1);
      if (u >= units || u > best.load()) return;
      if (shared.steps.load() >= shared.max_steps) return;
      Dfs dfs(disc, l, shared, g1, accept);
      Outcome o = dfs.run(unit_tuple(u));
      std::lock_guard<std::mutex> lock(mu);
      if (o.found && u < best.load()) best.store(u);
      results.emplace(u, std::move(o));
    }
  };
  const int nt = std::max(1, threads);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::uint64_t u = 0; u < units; ++u) {
    auto it = results.find(u);
    if (it == results.end() || (!it->second.complete && !it->second.found))
      return Outcome{false, false, {}, {}};
    if (it->second.found) return it->second;
  }
  return Outcome{true, false, {}, {}};
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

struct Run {
  std::vector<int> subset;
  std::vector<int> ls;
};

std::vector<Run> plan_runs(const QInstance& inst, SolveMode mode) {
  std::vector<int> all(inst.n());
  for (int i = 0; i < inst.n(); ++i) all[i] = i;
  if (mode == SolveMode::Full) {
    Run r{all, {}};
    for (int l = 1; l <= inst.ell; ++l) r.ls.push_back(l);
    return {r};
  }
  std::map<std::vector<int>, std::vector<int>> by_subset;
  std::vector<std::vector<int>> order;
  for (int l = 1; l <= inst.ell; ++l) {
    int k = std::min(5 * l, inst.n());
    for (auto& c : combinations(inst.n(), k)) {
      auto it = by_subset.find(c);
      if (it == by_subset.end()) {
        order.push_back(c);
        by_subset[c] = {l};
      } else {
        it->second.push_back(l);
      }
    }
  }
  std::vector<Run> runs;
  for (const auto& c : order) runs.push_back({c, by_subset[c]});
  return runs;
}

}  // namespace

QResult solve_Q(const QInstance& inst, const SolveOptions& opt) {
  QResult res;
  const double slack = inst.eps;
  auto runs = plan_runs(inst, opt.mode);
  res.stats.subsets = static_cast<int>(runs.size());
  std::vector<Discretization> discs;
  for (const auto& r : runs) discs.push_back(Discretization::build(inst, r.subset));
  auto finalize = [&](const Curve& c, const Configuration& cfg) {
    res.status = QStatus::Found;
    res.curve = c;
    res.cfg = cfg;
    for (const auto& tau : inst.curves) res.distances.push_back(frechet_distance(c, tau).value);
    return res;
  };
  if (opt.seeded) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& disc = discs[r];
      int lmax = *std::max_element(runs[r].ls.begin(), runs[r].ls.end());
      for (const auto& seed : seed_curves(disc, lmax)) {
        ++res.stats.seeds;
        if (seed.f > inst.eps) continue;
        auto snapped = snap_configuration(seed.c, disc);
        if (!snapped || snapped->cfg.l > lmax) continue;
        ++res.stats.seed_configurations;
        auto fwd = forward_construct(snapped->cfg, disc);
        if (!fwd.ok) continue;
        ++res.stats.forward_successes;
        auto bwd = backward_extract(snapped->cfg, fwd.gamma);
        if (!bwd.ok) continue;
        if (!verify_candidate(bwd.curve, inst, slack)) {
          ++res.stats.verification_failures;
          continue;
        }
        res.stats.found_by_seed = true;
        return finalize(bwd.curve, snapped->cfg);
      }
    }
  }
  if (!opt.exhaustive) {
    res.status = QStatus::BudgetExceeded;
    res.stats.budget_hit = true;
    return res;
  }
  Shared shared;
  shared.max_steps = opt.budget;
  bool budget_hit = false;
  std::uint64_t failures = 0;
  Dfs::Accept accept = [&](const Curve& c, const Configuration&) {
    ++res.stats.forward_successes;
    if (verify_candidate(c, inst, slack)) return true;
    ++failures;
    return false;
  };
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (int l : runs[r].ls) {
      Outcome o = exhaustive(discs[r], l, shared, opt.threads, accept);
      if (o.found) {
        res.stats.search_steps = shared.steps.load();
        res.stats.verification_failures += failures;
        return finalize(o.curve, o.cfg);
      }
      if (!o.complete) budget_hit = true;
    }
  }
  res.stats.search_steps = std::min(shared.steps.load(), shared.max_steps);
  res.stats.verification_failures += failures;
  res.stats.budget_hit = budget_hit;
  res.status = budget_hit ? QStatus::BudgetExceeded : QStatus::Null;
  return res;
}

std::vector<Curve> two_phase_curves(const QInstance& inst, int exact_l, std::uint64_t budget,
                                    std::size_t max_curves) {
  std::vector<int> all(inst.n());
  for (int i = 0; i < inst.n(); ++i) all[i] = i;
  auto disc = Discretization::build(inst, all);
  std::vector<Curve> out;
  for (const auto& seed : seed_curves(disc, exact_l)) {
    if (out.size() >= max_curves) return out;
    auto snapped = snap_configuration(seed.c, disc);
    if (!snapped || snapped->cfg.l > exact_l) continue;
    auto fwd = forward_construct(snapped->cfg, disc);
    if (!fwd.ok) continue;
    auto bwd = backward_extract(snapped->cfg, fwd.gamma);
    if (bwd.ok) out.push_back(bwd.curve);
  }
  if (budget == 0 || out.size() >= max_curves) return out;
  Shared shared;
  shared.max_steps = budget;
  Dfs::Accept collect = [&](const Curve& c, const Configuration&) {
    out.push_back(c);
    return out.size() >= max_curves;
  };
  exhaustive(disc, exact_l, shared, 1, collect);
  return out;
}

}  // namespace fk
