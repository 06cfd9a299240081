#pragma once

#include <cstdint>
#include <vector>

#include "frechet_kit/frechet.hpp"
#include "frechet_kit/twophase.hpp"

namespace fk {

enum class BudgetPolicy { Propagate, TreatAsNull };
enum class PrefixSearch { Doubling, Linear };

struct SimplifyOptions {
  std::uint64_t budget = 10'000'000;
  BudgetPolicy on_budget = BudgetPolicy::Propagate;
  PrefixSearch search = PrefixSearch::Doubling;
  int threads = 1;
};

struct SimplifyBlock {
  int first = 0;  // vertex range of the input covered by this block
  int last = 0;
  Curve curve;
};

struct SimplifyResult {
  Curve curve;
  std::vector<SimplifyBlock> blocks;
  int ell = 0;
  double bound = 0.0;  // (1 + eps) delta
  bool check = false;
  int q_calls = 0;
  int budget_limited = 0;  // Q calls counted as infeasible after exhausting the budget
  int fallbacks = 0;       // blocks redone by linear scan or kept as a raw edge
};

// Greedy prefix simplification with at most ceil(1/alpha) vertices per block.
SimplifyResult bicriteria_simplify(const Curve& tau, double delta, double alpha, double eps,
                                   const SimplifyOptions& opt = {});

}  // namespace fk
