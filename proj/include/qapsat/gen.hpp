#pragma once
// Random QAP-k-SAT generator. The flow matrix is the sum of m size-k flow
// clauses (the fixed 3x3 submatrix with a random simultaneous row/column
// reorder, on k distinct variables). The distance matrix is 1 on every pair
// covered by one of the m1 distance clauses and carries values >= 2 elsewhere,
// with value counts following the geometric-decay recursion
//   n_d = max{1, ceil(p1 * (n(n-1) - sum_{delta<d} n_delta))},  p1 = n1/(n(n-1)),
// capped at the remaining free positions; positions are drawn uniformly.

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "qapsat/core.hpp"
#include "qapsat/io.hpp"
#include "qapsat/rng.hpp"

namespace qapsat {

struct GeneratorConfig {
  int32_t n = 0;
  int32_t k = 3;  // only k=3 clause submatrices ship
  int32_t m = 0;
  int32_t m1 = 0;
  uint64_t seed = 0;
};

// The fixed 3x3 flow-clause submatrix (off-diagonal sum 10).
const SquareMatrix& a3_submatrix();

// k distinct variables plus a randomly conjugated copy of the base submatrix.
ClauseSpec gen_a_clause(Rng& rng, int32_t n);

// k distinct variables, all-ones off-diagonal submatrix.
ClauseSpec gen_b_clause(Rng& rng, int32_t n);

// Element-wise minimum composition: entry (i,j), i != j, is 1 when some
// clause covers the pair and complement.at(i,j) otherwise; diagonal is 0.
SquareMatrix compose_distance(std::span<const ClauseSpec> b_clauses, const SquareMatrix& complement);

// Value counts for d = 2, 3, ... given n and the number of 1-entries.
// Throws ValidationError when ones_count is 0 (no distance clause placed).
std::map<int32_t, int64_t> geometric_level_counts(int32_t n, int64_t ones_count);

QapSatInstance generate(const GeneratorConfig& config);

struct SuiteCell {
  int32_t n = 0, k = 3, m = 0, m1 = 0;
};

struct SuiteEntry {
  SuiteCell cell;
  int32_t replicate = 0;
  uint64_t seed = 0;
  InstanceFilePair files;
};

// Writes one instance file pair per (cell, replicate), with per-instance
// seeds derived from (master_seed, n, k, m1, m, replicate), plus a manifest
// CSV listing every entry. Deterministic: the same master seed reproduces
// the suite byte for byte.
std::vector<SuiteEntry> generate_suite(std::span<const SuiteCell> grid, int32_t instances_per_cell,
                                       uint64_t master_seed, const std::filesystem::path& out_dir);

// Seed for one suite/experiment cell replicate.
uint64_t instance_seed(uint64_t master_seed, int32_t n, int32_t k, int32_t m1, int32_t m,
                       int32_t replicate);

}  // namespace qapsat
