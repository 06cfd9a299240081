#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frechet_kit/config.hpp"

namespace fk {

enum class AbortReason { None, Malformed, Constraint1Fail, Constraint3aFail, Constraint3bFail, EmptyGamma };
std::string to_string(AbortReason r);

struct ForwardResult {
  bool ok = false;
  AbortReason reason = AbortReason::None;
  int step = 0;  // 1-based level of the abort
  std::vector<Segment> gamma;
};

ForwardResult forward_construct(const Configuration& cfg, const Discretization& disc,
                                bool check_c1 = true);

// Single level of the forward pass. Needs S, A, C entries up to level k, and A[k+1]
// when A[k] is null. prev is gamma_{k-1} (ignored for k == 1).
std::optional<Segment> forward_step(const Configuration& cfg, const Discretization& disc, int k,
                                    const Segment* prev, AbortReason& reason);
// Ordering condition on the non-null A cells up to level k.
bool check_constraint3b(const Configuration& cfg, const Discretization& disc, int k);

struct BackwardResult {
  bool ok = false;
  int failed_step = 0;
  Curve curve;
};
BackwardResult backward_extract(const Configuration& cfg, const std::vector<Segment>& gamma);

// On every edge u_j u_{j+1}: points p <= q close to c_{j,1} and c_{j,2}.
bool effect_rel_set_holds(const Configuration& cfg, const Discretization& disc,
                          const Curve& sigma, double tol = 1e-6);

// d_F(sigma, tau_i) <= delta_i + slack * delta_max for every curve.
bool verify_candidate(const Curve& sigma, const QInstance& inst, double slack);

enum class QStatus { Found, Null, BudgetExceeded };
enum class SolveMode { Full, Subset5l };
std::string to_string(QStatus s);

struct SolveOptions {
  SolveMode mode = SolveMode::Full;
  std::uint64_t budget = 10'000'000;  // search steps per call
  int threads = 1;
  bool seeded = true;
  bool exhaustive = true;
};

struct QStats {
  std::uint64_t seeds = 0;
  std::uint64_t seed_configurations = 0;
  std::uint64_t search_steps = 0;
  std::uint64_t forward_successes = 0;
  std::uint64_t verification_failures = 0;
  int subsets = 0;
  bool found_by_seed = false;
  bool budget_hit = false;
};

struct QResult {
  QStatus status = QStatus::Null;
  Curve curve;
  Configuration cfg;
  std::vector<double> distances;
  QStats stats;
};

QResult solve_Q(const QInstance& inst, const SolveOptions& opt = {});

// Runs the search on one participating subset and reports every curve produced,
// without the verification step. Used by the candidate finder.
std::vector<Curve> two_phase_curves(const QInstance& inst, int exact_l, std::uint64_t budget,
                                    std::size_t max_curves);

}  // namespace fk
