#include "qapsat/lap.hpp"

#include <limits>

#include "qapsat/core.hpp"

namespace qapsat {

// Shortest-augmenting-path formulation with dual potentials u, v.
LapResult lap_solve(std::span<const int64_t> cost, int32_t n) {
  if (n < 0 || cost.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
    throw ContractError("lap_solve: cost matrix size does not match n");
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

  std::vector<int64_t> u(static_cast<size_t>(n) + 1, 0), v(static_cast<size_t>(n) + 1, 0);
  std::vector<int32_t> col_to_row(static_cast<size_t>(n) + 1, 0);  // p[j], 1-based
  std::vector<int32_t> way(static_cast<size_t>(n) + 1, 0);

  for (int32_t i = 1; i <= n; ++i) {
    col_to_row[0] = i;
    int32_t j0 = 0;
    std::vector<int64_t> minv(static_cast<size_t>(n) + 1, kInf);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const int32_t i0 = col_to_row[static_cast<size_t>(j0)];
      int64_t delta = kInf;
      int32_t j1 = -1;
      const int64_t* row = cost.data() + static_cast<size_t>(i0 - 1) * static_cast<size_t>(n);
      for (int32_t j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const int64_t cur = row[j - 1] - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int32_t j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(col_to_row[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row[static_cast<size_t>(j0)] != 0);
    do {
      const int32_t j1 = way[static_cast<size_t>(j0)];
      col_to_row[static_cast<size_t>(j0)] = col_to_row[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  LapResult out;
  out.row_to_col.assign(static_cast<size_t>(n), -1);
  for (int32_t j = 1; j <= n; ++j) {
    const int32_t i = col_to_row[static_cast<size_t>(j)];
    if (i >= 1) out.row_to_col[static_cast<size_t>(i - 1)] = j - 1;
  }
  for (int32_t i = 0; i < n; ++i)
    out.value += cost[static_cast<size_t>(i) * static_cast<size_t>(n) +
                      static_cast<size_t>(out.row_to_col[static_cast<size_t>(i)])];
  return out;
}

}  // namespace qapsat
