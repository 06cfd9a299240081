#include "frechet_kit/config.hpp"

#include <algorithm>
#include <cmath>

namespace fk {

bool is_valid_partition(const PartitionFn& pi, int l) {
  if (pi.empty() || pi[0] != 0) return false;
  for (std::size_t a = 0; a < pi.size(); ++a) {
    if (pi[a] < 0 || pi[a] > l - 1) return false;
    if (a > 0 && pi[a] < pi[a - 1]) return false;
  }
  return true;
}

std::uint64_t partition_count(int m, int l) {
  // Multisets of size m - 1 drawn from l values.
  std::uint64_t n = static_cast<std::uint64_t>(m - 1 + l - 1), k = static_cast<std::uint64_t>(l - 1);
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool next_partition(PartitionFn& pi, int l) {
  for (int a = static_cast<int>(pi.size()) - 1; a >= 1; --a) {
    if (pi[a] < l - 1) {
      int v = pi[a] + 1;
      for (std::size_t b = a; b < pi.size(); ++b) pi[b] = v;
      return true;
    }
  }
  return false;
}

std::vector<PartitionFn> enumerate_partitions(int m, int l) {
  std::vector<PartitionFn> out;
  PartitionFn pi(m, 0);
  do out.push_back(pi);
  while (next_partition(pi, l));
  return out;
}

std::optional<std::pair<int, int>> preimage(const PartitionFn& pi, int j) {
  auto lo = std::lower_bound(pi.begin(), pi.end(), j);
  if (lo == pi.end() || *lo != j) return std::nullopt;
  auto hi = std::upper_bound(lo, pi.end(), j);
  return std::make_pair(static_cast<int>(lo - pi.begin()), static_cast<int>(hi - pi.begin()) - 1);
}

bool is_well_formed(const Configuration& cfg, const Discretization& disc) {
  const int l = cfg.l;
  if (l < 1) return false;
  if (static_cast<int>(cfg.P.size()) != disc.n()) return false;
  for (const auto& pi : cfg.P)
    if (static_cast<int>(pi.size()) != disc.m() || !is_valid_partition(pi, l)) return false;
  if (static_cast<int>(cfg.C.size()) != l - 1) return false;
  if (static_cast<int>(cfg.S.size()) != l || static_cast<int>(cfg.A.size()) != l) return false;
  for (int s : cfg.S)
    if (s < 0 || s >= static_cast<int>(disc.L.size())) return false;
  if (!cfg.A.front() || !cfg.A.back()) return false;
  return true;
}

bool check_constraint1_edge(const Configuration& cfg, const Discretization& disc, int j) {
  const auto& [c1, c2] = cfg.C[j - 1];
  const auto xs = c1.corners();
  const auto ys = c2.corners();
  for (int i = 0; i < disc.n(); ++i) {
    auto block = preimage(cfg.P[i], j);
    if (!block) continue;
    const auto [a, b] = *block;
    const Curve& tau = disc.tau[i];
    const double r = disc.delta[i] + 2 * disc.sqrt_d * disc.eps * disc.delta[i];
    const Curve sub = tau.subcurve(a, b);
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        Segment xy{x, y};
        auto first = clip_param_ball(xy, Ball{tau[a], r});
        auto second = clip_param_ball(xy, Ball{tau[b], r});
        if (!first || !second) return false;
        Curve pq({xy.at(first->lo), xy.at(second->hi)});
        if (!free_space_decision(pq, sub, r)) return false;
      }
    }
  }
  return true;
}

bool check_constraint1(const Configuration& cfg, const Discretization& disc) {
  for (int j = 1; j <= cfg.l - 1; ++j)
    if (!check_constraint1_edge(cfg, disc, j)) return false;
  return true;
}

namespace {

bool corners_within(const GridCell& c, const Discretization& disc, bool first) {
  for (int i = 0; i < disc.n(); ++i) {
    const Point& v = first ? disc.tau[i].front() : disc.tau[i].back();
    double bound = disc.delta[i] + 2 * disc.sqrt_d * disc.eps * disc.delta_max;
    if (c.max_corner_distance(v) > bound * (1 + 1e-12)) return false;
  }
  return true;
}

}  // namespace

bool check_constraint3a_first(const GridCell& a1, const Discretization& disc) {
  return corners_within(a1, disc, true);
}

bool check_constraint3a_last(const GridCell& al, const Discretization& disc) {
  return corners_within(al, disc, false);
}

bool check_constraint3a(const Configuration& cfg, const Discretization& disc) {
  if (!cfg.A.front() || !cfg.A.back()) return false;
  return check_constraint3a_first(*cfg.A.front(), disc) &&
         check_constraint3a_last(*cfg.A.back(), disc);
}

namespace {

struct Enumerator {
  const Discretization& disc;
  int l;
  EnumerationBudget& budget;
  const std::function<bool(const Configuration&)>& visit;
  GridSet g1_cells;
  GridSet g2_cells;
  Configuration cfg;
  bool stopped = false;
  bool ran_out = false;

  bool tick() {
    if (budget.exhausted()) {
      ran_out = true;
      return false;
    }
    ++budget.steps;
    return true;
  }

  std::vector<std::optional<GridCell>> a_options(int k) const {
    std::vector<std::optional<GridCell>> out;
    if (k > 1 && k < l) out.push_back(std::nullopt);
    const Segment& s = disc.L.segments[cfg.S[k - 1]];
    for (const auto& c : g2_cells)
      if (clip_param_box(s, c.lo(), c.hi(), kLpTol)) out.push_back(c);
    return out;
  }

  // Returns false when enumeration must stop.
  bool rec_A(int k) {
    if (k > l) {
      if (!tick()) return false;
      if (!visit(cfg)) {
        stopped = true;
        return false;
      }
      return true;
    }
    for (const auto& opt : a_options(k)) {
      cfg.A[k - 1] = opt;
      if (!rec_A(k + 1)) return false;
    }
    return true;
  }

  bool rec_S(int k) {
    if (k > l) return rec_A(1);
    for (int s = 0; s < static_cast<int>(disc.L.size()); ++s) {
      cfg.S[k - 1] = s;
      if (!rec_S(k + 1)) return false;
    }
    return true;
  }

  bool rec_C(int j) {
    if (j > l - 1) return rec_S(1);
    for (const auto& c1 : g1_cells) {
      for (const auto& c2 : g1_cells) {
        cfg.C[j - 1] = {c1, c2};
        if (!rec_C(j + 1)) return false;
      }
    }
    return true;
  }

  bool rec_P(int i) {
    if (i == disc.n()) return rec_C(1);
    PartitionFn pi(disc.m(), 0);
    do {
      cfg.P[i] = pi;
      if (!rec_P(i + 1)) return false;
    } while (next_partition(pi, l));
    return true;
  }
};

}  // namespace

bool enumerate_configurations(const Discretization& disc, int l, EnumerationBudget& budget,
                              const std::function<bool(const Configuration&)>& visit) {
  Enumerator e{disc, l, budget, visit, {}, {}, {}, false, false};
  for (int i = 0; i < disc.n(); ++i) {
    auto cells = disc.g1(i, l).enumerate();
    e.g1_cells.insert(e.g1_cells.end(), cells.begin(), cells.end());
  }
  std::stable_sort(e.g1_cells.begin(), e.g1_cells.end());
  e.g1_cells.erase(std::unique(e.g1_cells.begin(), e.g1_cells.end()), e.g1_cells.end());
  e.g2_cells = disc.g2.enumerate();
  e.cfg.l = l;
  e.cfg.P.assign(disc.n(), {});
  e.cfg.C.assign(l - 1, {});
  e.cfg.S.assign(l, 0);
  e.cfg.A.assign(l, std::nullopt);
  e.rec_P(0);
  return !e.ran_out;
}

}  // namespace fk
