#pragma once

#include <vector>

namespace fk::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Dense two-phase simplex with Bland's rule.
// minimize c.x  subject to  A x = b,  x >= 0.
// A is row-major with rows.size() == b.size().
Result minimize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c, double tol = 1e-9);

// Solves phase 1 once, then optimizes each objective in turn.
std::vector<Result> minimize_many(const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& b,
                                  const std::vector<std::vector<double>>& objectives,
                                  double tol = 1e-9);

}  // namespace fk::lp
