#include "frechet_kit/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fk::lp {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b, double tol)
      : m_(static_cast<int>(b.size())),
        n_(m_ ? static_cast<int>(A[0].size()) : 0),
        cols_(n_ + m_ + 1),
        tol_(tol),
        t_((m_ + 1) * cols_, 0.0),
        basis_(m_) {
    for (int i = 0; i < m_; ++i) {
      double sign = b[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) at(i, j) = sign * A[i][j];
      at(i, n_ + i) = 1.0;
      at(i, cols_ - 1) = sign * b[i];
      basis_[i] = n_ + i;
    }
  }

  // Returns false when the system has no nonnegative solution.
  bool phase1() {
    std::vector<double> cost(n_ + m_, 0.0);
    for (int i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
    set_objective(cost);
    run(n_ + m_);
    double scale = 1.0;
    for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(at(i, cols_ - 1)));
    if (-at(m_, cols_ - 1) > tol_ * scale) return false;
    // Drive remaining artificials out of the basis.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  Result phase2(const std::vector<double>& c) {
    std::vector<double> cost(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = c[j];
    set_objective(cost);
    Result r;
    if (!run(n_)) {
      r.status = Status::Unbounded;
      return r;
    }
    r.status = Status::Optimal;
    r.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.x[basis_[i]] = at(i, cols_ - 1);
    r.objective = -at(m_, cols_ - 1);
    return r;
  }

 private:
  double& at(int i, int j) { return t_[i * cols_ + j]; }

  void set_objective(const std::vector<double>& cost) {
    for (int j = 0; j < cols_; ++j) at(m_, j) = 0.0;
    for (int j = 0; j < n_ + m_; ++j) at(m_, j) = cost[j];
    for (int i = 0; i < m_; ++i) {
      double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  void pivot(int r, int c) {
    double p = at(r, c);
    for (int j = 0; j < cols_; ++j) at(r, j) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Columns >= limit may not enter. Returns false on unboundedness.
  bool run(int limit) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (at(m_, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        double a = at(i, enter);
        if (a <= tol_) continue;
        double ratio = at(i, cols_ - 1) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit");
  }

  int m_, n_, cols_;
  double tol_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace

std::vector<Result> minimize_many(const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& b,
                                  const std::vector<std::vector<double>>& objectives,
                                  double tol) {
  Tableau tab(A, b, tol);
  std::vector<Result> out(objectives.size());
  if (!tab.phase1()) return out;
  for (std::size_t k = 0; k < objectives.size(); ++k) out[k] = tab.phase2(objectives[k]);
  return out;
}

Result minimize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c, double tol) {
  return minimize_many(A, b, {c}, tol).front();
}

}  // namespace fk::lp
