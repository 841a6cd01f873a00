#include "qapsat/kernels.hpp"

namespace qapsat::kernels {
namespace {

int64_t objective_scalar(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p) {
  int64_t total = 0;
  for (int32_t i = 0; i < n; ++i) {
    const int32_t* arow = a + static_cast<size_t>(i) * static_cast<size_t>(n);
    const int32_t* brow = b + static_cast<size_t>(p[i]) * static_cast<size_t>(n);
    int64_t acc = 0;
    for (int32_t j = 0; j < n; ++j)
      acc += static_cast<int64_t>(arow[j]) * static_cast<int64_t>(brow[p[j]]);
    total += acc;
  }
  return total;
}

// Difference form of the swap delta for general (asymmetric) matrices with
// zero diagonals. With u = p[r], v = p[s]:
//   delta = sum_{k != r,s} (a[r][k]-a[s][k]) * (b[v][p[k]]-b[u][p[k]])
//                        + (a[k][r]-a[k][s]) * (b[p[k]][v]-b[p[k]][u])
//         + (a[r][s]-a[s][r]) * (b[v][u]-b[u][v])
int64_t swap_delta_scalar(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p,
                          int32_t r, int32_t s) {
  const size_t un = static_cast<size_t>(n);
  const int32_t u = p[r], v = p[s];
  const int32_t* ar = a + static_cast<size_t>(r) * un;
  const int32_t* as = a + static_cast<size_t>(s) * un;
  const int32_t* bu = b + static_cast<size_t>(u) * un;
  const int32_t* bv = b + static_cast<size_t>(v) * un;
  int64_t acc = 0;
  for (int32_t k = 0; k < n; ++k) {
    if (k == r || k == s) continue;
    const int32_t pk = p[k];
    const int64_t da_row = ar[k] - as[k];
    const int64_t db_row = bv[pk] - bu[pk];
    const int64_t da_col = a[static_cast<size_t>(k) * un + static_cast<size_t>(r)] -
                           a[static_cast<size_t>(k) * un + static_cast<size_t>(s)];
    const int64_t db_col = b[static_cast<size_t>(pk) * un + static_cast<size_t>(v)] -
                           b[static_cast<size_t>(pk) * un + static_cast<size_t>(u)];
    acc += da_row * db_row + da_col * db_col;
  }
  acc += static_cast<int64_t>(ar[s] - as[r]) * static_cast<int64_t>(bv[u] - bu[v]);
  return acc;
}

int64_t dot_scalar(const int32_t* x, const int32_t* y, int32_t len) {
  int64_t acc = 0;
  for (int32_t t = 0; t < len; ++t)
    acc += static_cast<int64_t>(x[t]) * static_cast<int64_t>(y[t]);
  return acc;
}

}  // namespace

const Backend& scalar() {
  static const Backend backend{"scalar", objective_scalar, swap_delta_scalar, dot_scalar};
  return backend;
}

}  // namespace qapsat::kernels
