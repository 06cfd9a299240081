#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "frechet_kit/instance.hpp"

namespace fk {

// pi[a] for vertex a (0-based). 0 maps to the first vertex of the output curve,
// j >= 1 to its j-th edge.
using PartitionFn = std::vector<int>;

bool is_valid_partition(const PartitionFn& pi, int l);
// C(m - 1 + l - 1, l - 1)
std::uint64_t partition_count(int m, int l);
// Lexicographic successor; returns false after the last one.
bool next_partition(PartitionFn& pi, int l);
std::vector<PartitionFn> enumerate_partitions(int m, int l);
// Vertices a with pi[a] == j, or nullopt when none.
std::optional<std::pair<int, int>> preimage(const PartitionFn& pi, int j);

struct Configuration {
  int l = 1;
  std::vector<PartitionFn> P;                     // one per participating curve
  std::vector<std::pair<GridCell, GridCell>> C;   // edge j at C[j - 1]
  std::vector<int> S;                             // segment index per output vertex
  std::vector<std::optional<GridCell>> A;         // cell or null per output vertex
};

// Structural validity against a discretization.
bool is_well_formed(const Configuration& cfg, const Discretization& disc);

bool check_constraint1(const Configuration& cfg, const Discretization& disc);
// Only the blocks of edge j.
bool check_constraint1_edge(const Configuration& cfg, const Discretization& disc, int j);
bool check_constraint3a_first(const GridCell& a1, const Discretization& disc);
bool check_constraint3a_last(const GridCell& al, const Discretization& disc);
bool check_constraint3a(const Configuration& cfg, const Discretization& disc);

// Lazily enumerates configurations for a fixed l in the order P, C, S, A.
// The visitor returns false to stop. Returns false when the budget ran out.
struct EnumerationBudget {
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t steps = 0;
  bool exhausted() const { return steps >= max_steps; }
};
bool enumerate_configurations(const Discretization& disc, int l, EnumerationBudget& budget,
                              const std::function<bool(const Configuration&)>& visit);

// Snapped configuration built from an arbitrary candidate curve: shortcut so every
// edge carries a matched input vertex, move vertices onto the segment family,
// then read partitions and cells off the matchings.
struct SnappedConfiguration {
  Configuration cfg;
  std::vector<Point> w;
  Curve shortcut;
};
std::optional<SnappedConfiguration> snap_configuration(const Curve& sigma,
                                                       const Discretization& disc);

}  // namespace fk
