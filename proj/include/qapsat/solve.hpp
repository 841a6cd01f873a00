#pragma once
// Certified global minimization: exhaustive enumeration for small n, and a
// depth-first branch and bound with Gilmore-Lawler bounds for medium n.
// Effort is reported through deterministic counters; wall time is
// informational only.

#include <cstdint>
#include <optional>

#include "qapsat/core.hpp"

namespace qapsat {

struct SolveOutcome {
  int64_t minimum = 0;
  Permutation argmin;
  uint64_t nodes_expanded = 0;  // nodes whose children were generated and bounded
  uint64_t lap_calls = 0;       // one per child bound evaluation
  double elapsed_seconds = 0.0; // informational, never used in analysis
  bool satisfied = false;       // set against a known global lower bound
  bool proven = true;           // false only when a node cap stopped the search
};

// Partial (or complete) injective facility -> location map; -1 = unassigned.
struct Assignment {
  std::vector<int32_t> location_of;
  int64_t cost = 0;
};

inline constexpr int32_t kEnumerateCap = 11;

// Exact minimum over all n! permutations (no pruning); nodes_expanded = n!.
// Refuses n above the cap: use branch_and_bound instead.
SolveOutcome enumerate_min(const QapInstance& inst, int32_t cap = kEnumerateCap);

// Lower bound on the best completion of the partial assignment: exact
// fixed-fixed and fixed-free interactions plus a linear assignment over
// composite costs whose free-free part is the minimal scalar product of the
// ascending-sorted free flow row against the descending-sorted free distance
// row. For a complete assignment the bound equals the objective.
int64_t gilmore_lawler_bound(const QapInstance& inst, const Assignment& partial);

struct BnbOptions {
  // A known global lower bound (10m for generated instances). When set, the
  // search stops as soon as the incumbent reaches it: the bound certifies
  // optimality (decision mode).
  std::optional<int64_t> target;
  std::optional<uint64_t> node_cap;
  // Assert bound monotonicity along every branch (debug mode).
  bool validate = false;
};

// Depth-first search fixing facilities in index order; children are explored
// in ascending bound order (ties by location index) and pruned when their
// bound reaches the incumbent. Deterministic: identical instances and options
// give identical counters.
SolveOutcome branch_and_bound(const QapInstance& inst, const BnbOptions& options = {});

// Sets outcome.satisfied from the instance's certified bound
// (throws InternalError if the minimum undercuts it).
void mark_satisfaction(SolveOutcome& outcome, const QapSatInstance& qs);

}  // namespace qapsat
