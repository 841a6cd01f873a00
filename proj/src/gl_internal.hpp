#pragma once
// Shared Gilmore-Lawler bound core for the public API and the search.

#include <cstdint>
#include <span>
#include <vector>

#include "qapsat/core.hpp"

namespace qapsat::detail {

struct GlScratch {
  std::vector<int32_t> sa;  // per free facility: ascending free flow row
  std::vector<int32_t> sb;  // per free location: descending free distance row
  std::vector<int64_t> c;   // composite LAP costs
};

// Bound on the best completion given the fixed part:
//   ff + LAP(c),  c(i,j) = fix[i*n+j] + msp(free flow row of i, free distance row of j)
// where msp pairs the ascending-sorted flow remainders against the
// descending-sorted distance remainders. fix carries the exact interaction of
// each free facility/location with the fixed part (both directions) and may
// be null when nothing is fixed; ff is the exact fixed-fixed cost.
int64_t gl_bound_core(const SquareMatrix& a, const SquareMatrix& b,
                      std::span<const int32_t> free_fac, std::span<const int32_t> free_loc,
                      const int64_t* fix, int32_t n, int64_t ff, GlScratch& scratch,
                      uint64_t& lap_calls);

}  // namespace qapsat::detail
