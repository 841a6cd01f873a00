// AVX2 backend. Gathers walk B through the permutation; products are widened
// to 64-bit lanes (mul_epi32 on even/odd halves), so results are bit-identical
// to the scalar reference for every input the entry caps admit.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "qapsat/kernels.hpp"

namespace qapsat::kernels {
namespace {

inline __m256i madd64(__m256i x, __m256i y) {
  const __m256i even = _mm256_mul_epi32(x, y);
  const __m256i odd =
      _mm256_mul_epi32(_mm256_srli_epi64(x, 32), _mm256_srli_epi64(y, 32));
  return _mm256_add_epi64(even, odd);
}

inline int64_t hsum64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return _mm_extract_epi64(s, 0) + _mm_extract_epi64(s, 1);
}

int64_t objective_avx2(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p) {
  const size_t un = static_cast<size_t>(n);
  __m256i acc = _mm256_setzero_si256();
  int64_t tail = 0;
  for (int32_t i = 0; i < n; ++i) {
    const int32_t* arow = a + static_cast<size_t>(i) * un;
    const int32_t* brow = b + static_cast<size_t>(p[i]) * un;
    int32_t j = 0;
    for (; j + 8 <= n; j += 8) {
      const __m256i pj = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + j));
      const __m256i bv = _mm256_i32gather_epi32(brow, pj, 4);
      const __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(arow + j));
      acc = _mm256_add_epi64(acc, madd64(av, bv));
    }
    for (; j < n; ++j)
      tail += static_cast<int64_t>(arow[j]) * static_cast<int64_t>(brow[p[j]]);
  }
  return hsum64(acc) + tail;
}

// Same difference form as the scalar backend. The vector loop includes the
// k == r and k == s lanes; their contributions are recomputed and removed
// afterwards, which is cheaper than masking inside the loop.
int64_t swap_delta_avx2(int32_t n, const int32_t* a, const int32_t* b, const int32_t* p,
                        int32_t r, int32_t s) {
  const size_t un = static_cast<size_t>(n);
  const int32_t u = p[r], v = p[s];
  const int32_t* ar = a + static_cast<size_t>(r) * un;
  const int32_t* as = a + static_cast<size_t>(s) * un;
  const int32_t* bu = b + static_cast<size_t>(u) * un;
  const int32_t* bv = b + static_cast<size_t>(v) * un;

  const __m256i nv = _mm256_set1_epi32(n);
  const __m256i rv = _mm256_set1_epi32(r);
  const __m256i sv = _mm256_set1_epi32(s);
  const __m256i uv = _mm256_set1_epi32(u);
  const __m256i vv = _mm256_set1_epi32(v);
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  __m256i acc = _mm256_setzero_si256();
  int64_t tail = 0;
  int32_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i kv = _mm256_add_epi32(_mm256_set1_epi32(k), lane);
    const __m256i pk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + k));
    const __m256i kn = _mm256_mullo_epi32(kv, nv);
    const __m256i pkn = _mm256_mullo_epi32(pk, nv);

    const __m256i da_row =
        _mm256_sub_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(ar + k)),
                         _mm256_loadu_si256(reinterpret_cast<const __m256i*>(as + k)));
    const __m256i db_row = _mm256_sub_epi32(_mm256_i32gather_epi32(bv, pk, 4),
                                            _mm256_i32gather_epi32(bu, pk, 4));
    const __m256i da_col =
        _mm256_sub_epi32(_mm256_i32gather_epi32(a, _mm256_add_epi32(kn, rv), 4),
                         _mm256_i32gather_epi32(a, _mm256_add_epi32(kn, sv), 4));
    const __m256i db_col =
        _mm256_sub_epi32(_mm256_i32gather_epi32(b, _mm256_add_epi32(pkn, vv), 4),
                         _mm256_i32gather_epi32(b, _mm256_add_epi32(pkn, uv), 4));

    acc = _mm256_add_epi64(acc, madd64(da_row, db_row));
    acc = _mm256_add_epi64(acc, madd64(da_col, db_col));
  }
  for (; k < n; ++k) {
    if (k == r || k == s) continue;
    const int32_t pk = p[k];
    tail += static_cast<int64_t>(ar[k] - as[k]) * static_cast<int64_t>(bv[pk] - bu[pk]);
    tail += static_cast<int64_t>(a[static_cast<size_t>(k) * un + static_cast<size_t>(r)] -
                                 a[static_cast<size_t>(k) * un + static_cast<size_t>(s)]) *
            static_cast<int64_t>(b[static_cast<size_t>(pk) * un + static_cast<size_t>(v)] -
                                 b[static_cast<size_t>(pk) * un + static_cast<size_t>(u)]);
  }

  // Remove the k == r / k == s lanes if the vector loop covered them.
  const int32_t vec_end = (n / 8) * 8;
  for (int32_t kk : {r, s}) {
    if (kk >= vec_end) continue;  // the tail loop already skipped this index
    const int32_t pk = p[kk];
    tail -= static_cast<int64_t>(ar[kk] - as[kk]) * static_cast<int64_t>(bv[pk] - bu[pk]);
    tail -= static_cast<int64_t>(a[static_cast<size_t>(kk) * un + static_cast<size_t>(r)] -
                                 a[static_cast<size_t>(kk) * un + static_cast<size_t>(s)]) *
            static_cast<int64_t>(b[static_cast<size_t>(pk) * un + static_cast<size_t>(v)] -
                                 b[static_cast<size_t>(pk) * un + static_cast<size_t>(u)]);
  }

  tail += static_cast<int64_t>(ar[s] - as[r]) * static_cast<int64_t>(bv[u] - bu[v]);
  return hsum64(acc) + tail;
}

int64_t dot_avx2(const int32_t* x, const int32_t* y, int32_t len) {
  __m256i acc = _mm256_setzero_si256();
  int32_t t = 0;
  for (; t + 8 <= len; t += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + t));
    const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + t));
    acc = _mm256_add_epi64(acc, madd64(xv, yv));
  }
  int64_t tail = 0;
  for (; t < len; ++t) tail += static_cast<int64_t>(x[t]) * static_cast<int64_t>(y[t]);
  return hsum64(acc) + tail;
}

}  // namespace

const Backend* avx2_impl() {
  static const Backend backend{"avx2", objective_avx2, swap_delta_avx2, dot_avx2};
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return &backend;
}

}  // namespace qapsat::kernels

#endif  // x86-64
