#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frechet_kit/frechet.hpp"
#include "frechet_kit/rng.hpp"

namespace fk {

double cost(const std::vector<Curve>& T, const std::vector<Curve>& Sigma, double tol = 1e-6);

// Sampling formulas of the candidate finder.
std::uint64_t sample_size(double beta, int ell, double eps, double mu);
std::uint64_t x_size(std::uint64_t y_size, double beta);
double upper_U(double cost_xc, int ell, double eps);
double lower_L(double cost_xc, double eps, double mu, std::uint64_t x_count);
std::uint64_t threshold_steps(double U, double L);  // b ranges over 1..ceil(U/L)
inline double threshold_value(std::uint64_t b, double L) { return static_cast<double>(b) * L; }

// Keeps ell vertices at evenly spaced indices, or pads by edge midpoints.
Curve fit_to_ell(const Curve& c, int ell);

// Heuristic (1,ell)-median used where the finder expects a constant-factor approximation.
Curve median34_standin(const std::vector<Curve>& X, int ell, double mu, Rng& rng,
                       std::uint64_t q_budget = 2000);

struct FinderParams {
  int ell = 2;
  double beta = 1.0;
  double mu = 0.2;
  double eps = 0.5;
  std::uint64_t seed = 1;
  // Practical caps; exceeding any of them switches that loop to seeded sampling.
  std::uint64_t max_x = 4;
  std::uint64_t max_w = 12;
  std::uint64_t max_x_enumeration = 64;
  std::uint64_t q_budget = 2000;
  std::size_t curves_per_q = 2;
  double estimate_cap = 1e6;  // two-phase calls
};

struct Provenance {
  int x_index = -1;  // -1 for the stand-in median of that X
  std::vector<int> w;
  int l = 0;
  int h = 0;
  std::uint64_t b = 0;  // common threshold b * L
  double L = 0.0;
  std::uint64_t steps = 0;  // ceil(U / L)
  double cost_xc = 0.0;     // cost of X against its stand-in median
};

struct CandidateSet {
  std::vector<Curve> curves;
  std::vector<Provenance> provenance;
  std::uint64_t y_size = 0;
  std::uint64_t x_count = 0;
  bool x_sampled = false;
  bool w_sampled = false;
  bool thresholds_sampled = false;
  std::uint64_t two_phase_calls = 0;
  double estimate = 0.0;
  std::vector<std::string> flags() const;
};

CandidateSet candidate_finder(const std::vector<Curve>& T, const FinderParams& p);

struct KlMedianOptions {
  double beta = 0.0;  // 0 selects max(4k^2/eps + 2k + 1, 1)
  std::uint64_t budget = 50'000'000;  // subset evaluations times curves
  FinderParams finder;
};

struct KlMedianResult {
  std::vector<Curve> centers;
  double cost = 0.0;
  std::vector<int> assignment;
  std::size_t candidates = 0;
  double beta = 0.0;
  bool beta_overridden = false;
  std::vector<std::string> flags;
};

double default_beta(int k, double eps);

KlMedianResult kl_median(const std::vector<Curve>& T, int k, int ell, double mu, double eps,
                         std::uint64_t seed, const KlMedianOptions& opt = {});

}  // namespace fk
