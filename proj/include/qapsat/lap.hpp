#pragma once
// Exact linear assignment (Hungarian algorithm with potentials, O(n^3)),
// on 64-bit integer costs.

#include <cstdint>
#include <span>
#include <vector>

namespace qapsat {

struct LapResult {
  std::vector<int32_t> row_to_col;
  int64_t value = 0;
};

// cost is row-major n x n; all entries finite.
LapResult lap_solve(std::span<const int64_t> cost, int32_t n);

}  // namespace qapsat
