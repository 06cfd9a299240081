#include "frechet_kit/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "frechet_kit/errors.hpp"
#include "frechet_kit/instance.hpp"
#include "frechet_kit/simplify.hpp"
#include "frechet_kit/twophase.hpp"

namespace fk {

double cost(const std::vector<Curve>& T, const std::vector<Curve>& Sigma, double tol) {
  if (Sigma.empty()) throw EmptyInput("cost needs at least one center");
  double total = 0;
  for (const auto& tau : T) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : Sigma) best = std::min(best, frechet_distance(s, tau, tol).value);
    total += best;
  }
  return total;
}

std::uint64_t sample_size(double beta, int ell, double eps, double mu) {
  return static_cast<std::uint64_t>(std::ceil(80.0 * beta * ell / eps * std::log(80.0 * ell / mu)));
}

std::uint64_t x_size(std::uint64_t y_size, double beta) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(y_size / (2.0 * beta))));
}

double upper_U(double cost_xc, int ell, double eps) { return 10.0 * ell / (eps * eps) * cost_xc; }

double lower_L(double cost_xc, double eps, double mu, std::uint64_t x_count) {
  return eps * mu / (34.0 * static_cast<double>(x_count)) * cost_xc;
}

std::uint64_t threshold_steps(double U, double L) {
  return static_cast<std::uint64_t>(std::ceil(U / L));
}

Curve fit_to_ell(const Curve& c, int ell) {
  if (c.size() <= ell) return pad_to(c, ell);
  std::vector<Point> v;
  if (ell == 1) return Curve({c[c.size() / 2]});
  for (int j = 0; j < ell; ++j) {
    long long idx = std::llround(double(j) * (c.size() - 1) / (ell - 1));
    v.push_back(c[static_cast<int>(idx)]);
  }
  return Curve(std::move(v));
}

namespace {

// Cost of a multiset given as distinct curves with multiplicities.
struct Weighted {
  std::vector<const Curve*> curves;
  std::vector<int> mult;
  double cost_to(const Curve& c) const {
    double s = 0;
    for (std::size_t i = 0; i < curves.size(); ++i)
      s += mult[i] * frechet_distance(c, *curves[i], 1e-6).value;
    return s;
  }
};

Weighted weigh(const std::vector<Curve>& T, const std::vector<int>& idx) {
  std::map<int, int> count;
  for (int i : idx) ++count[i];
  Weighted w;
  for (auto [i, c] : count) {
    w.curves.push_back(&T[i]);
    w.mult.push_back(c);
  }
  return w;
}

double median_pairwise(const std::vector<Curve>& X, Rng& rng) {
  if (X.size() < 2) return 0.0;
  std::vector<double> ds;
  const std::size_t pairs = X.size() * (X.size() - 1) / 2;
  if (pairs <= 64) {
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = a + 1; b < X.size(); ++b) ds.push_back(frechet_distance(X[a], X[b], 1e-6).value);
  } else {
    for (int t = 0; t < 64; ++t) {
      std::size_t a = uniform_index(rng, X.size()), b = uniform_index(rng, X.size() - 1);
      if (b >= a) ++b;
      ds.push_back(frechet_distance(X[a], X[b], 1e-6).value);
    }
  }
  std::nth_element(ds.begin(), ds.begin() + ds.size() / 2, ds.end());
  return ds[ds.size() / 2];
}

Curve standin_weighted(const std::vector<Curve>& T, const std::vector<int>& idx, int ell,
                       double mu, Rng& rng, std::uint64_t q_budget) {
  const std::size_t take = std::min<std::size_t>(
      idx.size(), static_cast<std::size_t>(std::ceil(8.0 * std::log(4.0 / mu))));
  std::vector<Curve> sub;
  for (std::size_t t = 0; t < take; ++t) sub.push_back(T[idx[uniform_index(rng, idx.size())]]);
  const double dhat = median_pairwise(sub, rng);
  const Weighted w = weigh(T, idx);
  Curve best = fit_to_ell(sub.front(), ell);
  double best_cost = w.cost_to(best);
  auto consider = [&](const Curve& c) {
    double v = w.cost_to(c);
    if (v < best_cost) {
      best = c;
      best_cost = v;
    }
  };
  SimplifyOptions so;
  so.budget = q_budget;
  so.on_budget = BudgetPolicy::TreatAsNull;
  for (const auto& tau : sub) {
    consider(fit_to_ell(tau, ell));
    if (dhat > 0 && ell >= 2)
      consider(fit_to_ell(bicriteria_simplify(tau, dhat, 1.0 / ell, 0.25, so).curve, ell));
  }
  return best;
}

std::vector<std::vector<int>> w_subsets(const std::vector<int>& distinct, int max_size,
                                        std::uint64_t cap, Rng& rng, bool& sampled) {
  // Count all subsets of size 1..max_size first.
  const int n = static_cast<int>(distinct.size());
  double total = 0;
  for (int s = 1; s <= std::min(max_size, n); ++s) {
    double c = 1;
    for (int t = 0; t < s; ++t) c = c * (n - t) / (t + 1);
    total += c;
  }
  std::vector<std::vector<int>> out;
  if (total <= double(cap)) {
    for (int s = 1; s <= std::min(max_size, n); ++s) {
      std::vector<int> pick(s);
      for (int t = 0; t < s; ++t) pick[t] = t;
      while (true) {
        std::vector<int> w;
        for (int t : pick) w.push_back(distinct[t]);
        out.push_back(w);
        int t = s - 1;
        while (t >= 0 && pick[t] == n - s + t) --t;
        if (t < 0) break;
        ++pick[t];
        for (int u = t + 1; u < s; ++u) pick[u] = pick[u - 1] + 1;
      }
    }
    return out;
  }
  sampled = true;
  std::set<std::vector<int>> seen;
  for (std::uint64_t tries = 0; out.size() < cap && tries < 50 * cap; ++tries) {
    int s = 1 + static_cast<int>(uniform_index(rng, std::min(max_size, n)));
    std::vector<int> pool = distinct;
    std::vector<int> w;
    for (int t = 0; t < s; ++t) {
      std::size_t j = uniform_index(rng, pool.size());
      w.push_back(pool[j]);
      pool.erase(pool.begin() + j);
    }
    std::sort(w.begin(), w.end());
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

// Multiplicative ladder over 1..steps, searched for the smallest b that yields a curve.
std::vector<std::uint64_t> ladder(std::uint64_t steps, double ratio) {
  std::vector<std::uint64_t> out;
  double b = 1;
  while (true) {
    auto v = static_cast<std::uint64_t>(std::ceil(b));
    if (v >= steps) break;
    if (out.empty() || out.back() != v) out.push_back(v);
    b *= ratio;
  }
  out.push_back(steps);
  return out;
}

}  // namespace

Curve median34_standin(const std::vector<Curve>& X, int ell, double mu, Rng& rng,
                       std::uint64_t q_budget) {
  if (X.empty()) throw EmptyInput("median of an empty set");
  std::vector<int> idx(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) idx[i] = static_cast<int>(i);
  return standin_weighted(X, idx, ell, mu, rng, q_budget);
}

std::vector<std::string> CandidateSet::flags() const {
  std::vector<std::string> f;
  if (x_sampled) f.push_back("x_sampled");
  if (w_sampled) f.push_back("w_sampled");
  if (thresholds_sampled) f.push_back("thresholds_sampled");
  return f;
}

CandidateSet candidate_finder(const std::vector<Curve>& T, const FinderParams& p) {
  if (T.empty()) throw EmptyInput("no input curves");
  if (p.ell < 1) throw InvalidArgument("ell must be positive");
  if (!(p.eps > 0 && p.eps < 1) || !(p.mu > 0 && p.mu < 1) || p.beta < 1)
    throw InvalidArgument("finder parameters out of range");
  Rng rng(p.seed);
  CandidateSet out;
  out.y_size = sample_size(p.beta, p.ell, p.eps, p.mu);
  std::vector<int> Y(out.y_size);
  for (auto& y : Y) y = static_cast<int>(uniform_index(rng, T.size()));
  const std::uint64_t xs = x_size(out.y_size, p.beta);
  out.x_count = xs;

  // All multisets of size xs drawn from Y; a handful are sampled when there are too many.
  std::vector<std::vector<int>> Xs;
  const double multisets = std::exp(std::lgamma(double(out.y_size + 1)) - std::lgamma(double(xs + 1)) -
                                    std::lgamma(double(out.y_size - xs + 1)));
  if (multisets <= double(p.max_x_enumeration)) {
    std::vector<std::size_t> pos(xs);
    for (std::size_t t = 0; t < xs; ++t) pos[t] = t;
    const std::size_t ny = Y.size();
    while (true) {
      std::vector<int> X;
      for (auto q : pos) X.push_back(Y[q]);
      Xs.push_back(std::move(X));
      std::ptrdiff_t t = static_cast<std::ptrdiff_t>(xs) - 1;
      while (t >= 0 && pos[t] == ny - xs + t) --t;
      if (t < 0) break;
      ++pos[t];
      for (std::size_t u = t + 1; u < xs; ++u) pos[u] = pos[u - 1] + 1;
    }
  } else {
    out.x_sampled = true;
    for (std::uint64_t t = 0; t < p.max_x; ++t) {
      // xs distinct positions of Y by partial Fisher-Yates.
      std::vector<int> pool = Y;
      for (std::size_t q = 0; q < xs; ++q)
        std::swap(pool[q], pool[q + uniform_index(rng, pool.size() - q)]);
      pool.resize(xs);
      Xs.push_back(std::move(pool));
    }
  }

  struct Job {
    int x;
    std::vector<int> w;
    int l, h;
    std::vector<std::uint64_t> rungs;
    double L;
    std::uint64_t steps;
    double cost_xc;
  };
  std::vector<Job> jobs;
  for (std::size_t xi = 0; xi < Xs.size(); ++xi) {
    const auto& X = Xs[xi];
    Curve c = standin_weighted(T, X, p.ell, p.mu / 4, rng, p.q_budget);
    out.curves.push_back(c);
    const double cxc = weigh(T, X).cost_to(c);
    out.provenance.push_back({static_cast<int>(xi), {}, p.ell, p.ell, 0, 0.0, 0, cxc});
    if (cxc <= 0) continue;
    const double U = upper_U(cxc, p.ell, p.eps);
    const double L = lower_L(cxc, p.eps, p.mu, X.size());
    const std::uint64_t steps = threshold_steps(U, L);
    auto rungs = ladder(steps, 1 + p.eps / 2);
    out.thresholds_sampled = true;
    std::vector<int> distinct(X.begin(), X.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int l = 1; l <= p.ell; ++l)
      for (int h = 1; h <= l; ++h)
        for (auto& w : w_subsets(distinct, 3 * l + 2 * h, p.max_w, rng, out.w_sampled))
          jobs.push_back({static_cast<int>(xi), w, l, h, rungs, L, steps, cxc});
  }
  double est = 0;
  for (const auto& j : jobs) est += std::ceil(std::log2(double(j.rungs.size()) + 1));
  out.estimate = est;
  if (est > p.estimate_cap)
    throw BudgetExceeded("candidate finder would need about " + std::to_string(est) + " two-phase calls", est);

  const double eps2 = p.eps * p.eps;
  for (const auto& job : jobs) {
    std::vector<Curve> W;
    for (int i : job.w) W.push_back(T[i]);
    auto attempt = [&](std::uint64_t b) {
      ++out.two_phase_calls;
      auto inst = QInstance::make(W, std::vector<double>(W.size(), threshold_value(b, job.L)), job.h, eps2);
      return two_phase_curves(inst, job.h, p.q_budget, p.curves_per_q);
    };
    // Smallest rung producing curves, assuming monotonicity in b.
    std::size_t lo = 0, hi = job.rungs.size();
    std::vector<Curve> found;
    std::uint64_t found_b = 0;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      auto cs = attempt(job.rungs[mid]);
      if (!cs.empty()) {
        found = std::move(cs);
        found_b = job.rungs[mid];
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    for (const auto& c : found) {
      out.curves.push_back(fit_to_ell(c, p.ell));
      out.provenance.push_back({job.x, job.w, job.l, job.h, found_b, job.L, job.steps, job.cost_xc});
    }
  }
  return out;
}

double default_beta(int k, double eps) { return std::max(4.0 * k * k / eps + 2.0 * k + 1.0, 1.0); }

namespace {

bool lex_less(const Curve& a, const Curve& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i)
    for (int k = 0; k < va[i].dim(); ++k)
      if (va[i][k] != vb[i][k]) return va[i][k] < vb[i][k];
  return va.size() < vb.size();
}

bool same(const Curve& a, const Curve& b) { return !lex_less(a, b) && !lex_less(b, a); }

}  // namespace

KlMedianResult kl_median(const std::vector<Curve>& T, int k, int ell, double mu, double eps,
                         std::uint64_t seed, const KlMedianOptions& opt) {
  if (k < 1) throw InvalidArgument("k must be positive");
  KlMedianResult res;
  res.beta = opt.beta > 0 ? opt.beta : default_beta(k, eps);
  res.beta_overridden = opt.beta > 0;
  FinderParams fp = opt.finder;
  fp.ell = ell;
  fp.mu = mu;
  fp.eps = eps;
  fp.seed = seed;
  fp.beta = res.beta;
  CandidateSet cs = candidate_finder(T, fp);
  res.flags = cs.flags();
  if (res.beta_overridden) res.flags.push_back("beta_override");

  std::vector<Curve> sigma = cs.curves;
  std::stable_sort(sigma.begin(), sigma.end(), lex_less);
  sigma.erase(std::unique(sigma.begin(), sigma.end(), same), sigma.end());
  res.candidates = sigma.size();
  const int kk = std::min<int>(k, sigma.size());

  double subsets = 1;
  for (int t = 0; t < kk; ++t) subsets = subsets * double(sigma.size() - t) / (t + 1);
  const double work = subsets * double(T.size());
  if (work > double(opt.budget))
    throw BudgetExceeded("k-subset selection needs about " + std::to_string(work) + " evaluations", work);

  std::vector<std::vector<double>> D(sigma.size(), std::vector<double>(T.size()));
  for (std::size_t s = 0; s < sigma.size(); ++s)
    for (std::size_t t = 0; t < T.size(); ++t) D[s][t] = frechet_distance(sigma[s], T[t], 1e-6).value;

  std::vector<int> pick(kk), best;
  for (int t = 0; t < kk; ++t) pick[t] = t;
  double best_cost = std::numeric_limits<double>::infinity();
  const int S = static_cast<int>(sigma.size());
  while (true) {
    double c = 0;
    for (std::size_t t = 0; t < T.size(); ++t) {
      double m = std::numeric_limits<double>::infinity();
      for (int s : pick) m = std::min(m, D[s][t]);
      c += m;
    }
    if (c < best_cost) {
      best_cost = c;
      best = pick;
    }
    int t = kk - 1;
    while (t >= 0 && pick[t] == S - kk + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < kk; ++u) pick[u] = pick[u - 1] + 1;
  }
  for (int s : best) res.centers.push_back(sigma[s]);
  res.cost = best_cost;
  for (std::size_t t = 0; t < T.size(); ++t) {
    int arg = 0;
    for (int j = 1; j < kk; ++j)
      if (D[best[j]][t] < D[best[arg]][t]) arg = j;
    res.assignment.push_back(arg);
  }
  return res;
}

}  // namespace fk
