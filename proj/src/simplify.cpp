#include "frechet_kit/simplify.hpp"

#include <cmath>
#include <map>

#include "frechet_kit/errors.hpp"

namespace fk {

namespace {

class PrefixOracle {
 public:
  PrefixOracle(const Curve& tau, double delta, int ell, double eps, const SimplifyOptions& opt,
               SimplifyResult& out)
      : tau_(tau), delta_(delta), ell_(ell), eps_(eps), opt_(opt), out_(out) {}

  // Q on tau[start..end] with a single threshold.
  bool feasible(int start, int end) {
    auto key = std::make_pair(start, end);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.status == QStatus::Found;
    auto inst = QInstance::make({tau_.subcurve(start, end)}, {delta_}, ell_, eps_);
    SolveOptions so;
    so.budget = opt_.budget;
    so.threads = opt_.threads;
    ++out_.q_calls;
    QResult r = solve_Q(inst, so);
    if (r.status == QStatus::BudgetExceeded) {
      if (opt_.on_budget == BudgetPolicy::Propagate)
        throw BudgetExceeded("prefix search exhausted the budget", static_cast<double>(opt_.budget));
      ++out_.budget_limited;
    }
    bool ok = r.status == QStatus::Found;
    memo_.emplace(key, std::move(r));
    return ok;
  }

  const QResult& result(int start, int end) const { return memo_.at({start, end}); }

  // Monotone means every feasible end precedes every infeasible end.
  bool monotone(int start) const {
    int max_ok = -1, min_bad = tau_.size();
    for (const auto& [key, r] : memo_) {
      if (key.first != start) continue;
      if (r.status == QStatus::Found)
        max_ok = std::max(max_ok, key.second);
      else
        min_bad = std::min(min_bad, key.second);
    }
    return max_ok < min_bad;
  }

 private:
  const Curve& tau_;
  double delta_;
  int ell_;
  double eps_;
  const SimplifyOptions& opt_;
  SimplifyResult& out_;
  std::map<std::pair<int, int>, QResult> memo_;
};

int linear_end(PrefixOracle& q, int start, int last) {
  int e = start + 1;
  if (!q.feasible(start, e)) return -1;
  while (e < last && q.feasible(start, e + 1)) ++e;
  return e;
}

int doubling_end(PrefixOracle& q, int start, int last) {
  int lo = start + 1;
  if (!q.feasible(start, lo)) return -1;
  int hi = last + 1;
  for (int step = 1; lo < last;) {
    int probe = std::min(lo + step, last);
    if (!q.feasible(start, probe)) {
      hi = probe;
      break;
    }
    lo = probe;
    step *= 2;
  }
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (q.feasible(start, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

SimplifyResult bicriteria_simplify(const Curve& tau, double delta, double alpha, double eps,
                                   const SimplifyOptions& opt) {
  if (!(delta > 0)) throw InvalidArgument("delta must be positive");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("alpha must lie in (0,1)");
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0,1)");
  SimplifyResult out;
  out.ell = static_cast<int>(std::ceil(1.0 / alpha - 1e-12));
  out.bound = (1 + eps) * delta;
  const int last = tau.size() - 1;
  std::vector<Point> verts;
  auto append = [&](const Curve& c) {
    for (const auto& p : c.vertices()) verts.push_back(p);
  };
  PrefixOracle q(tau, delta, out.ell, eps, opt, out);
  for (int start = 0; start <= last;) {
    if (start == last) {
      Curve point({tau[last]});
      append(point);
      out.blocks.push_back({last, last, point});
      break;
    }
    int end = opt.search == PrefixSearch::Linear ? linear_end(q, start, last)
                                                 : doubling_end(q, start, last);
    if (end > 0 && !q.monotone(start)) {
      ++out.fallbacks;
      end = linear_end(q, start, last);
    }
    if (end < 0) {
      // Q missed even a single edge: keep the vertex itself.
      ++out.fallbacks;
      Curve point({tau[start]});
      append(point);
      out.blocks.push_back({start, start, point});
      start += 1;
      continue;
    }
    const Curve& block = q.result(start, end).curve;
    append(block);
    out.blocks.push_back({start, end, block});
    start = end + 1;
  }
  out.curve = Curve(std::move(verts));
  out.check = free_space_decision(out.curve, tau, out.bound);
  return out;
}

}  // namespace fk
