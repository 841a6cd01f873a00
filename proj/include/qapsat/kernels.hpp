#pragma once
// Arithmetic inner loops behind evaluate/delta_swap and the branch-and-bound
// cost grids. A scalar reference backend always exists; an AVX2 backend is
// compiled on x86-64 and selected at runtime when the CPU supports it.
// Backends are interchangeable and produce identical integer results; tests
// assert exact equivalence on random inputs.
//
// Select explicitly with QAPSAT_SIMD=scalar|avx2|auto or kernels::select().

#include <cstdint>
#include <string_view>
#include <vector>

namespace qapsat::kernels {

struct Backend {
  const char* name;
  // sum over i, j of a[i*n+j] * b[p[i]*n + p[j]]
  int64_t (*objective)(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p);
  // objective(p with r,s exchanged) - objective(p), O(n)
  int64_t (*swap_delta)(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p,
                        int32_t r, int32_t s);
  // sum over t of x[t] * y[t], widened to int64
  int64_t (*dot)(const int32_t* x, const int32_t* y, int32_t len);
};

const Backend& scalar();
const Backend* avx2();  // nullptr when not compiled in or not supported by the CPU

// The runtime-selected backend (env override applied on first use).
const Backend& active();

// All usable backends, for equivalence tests.
std::vector<const Backend*> available();

// Force a backend by name ("scalar", "avx2", "auto"). Returns false if the
// requested backend is unavailable; selection is then unchanged.
bool select(std::string_view name);

}  // namespace qapsat::kernels
