#pragma once
// Deterministic randomness: a mt19937_64 engine (its output sequence is fixed
// by the C++ standard) plus rejection-sampled bounded draws, so every stream
// is reproducible bit-for-bit from a 64-bit seed on any platform.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qapsat {

// splitmix64 finalizer; used to derive independent seeds from (master, coords).
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed derivation chain: fold each coordinate into the running hash.
// derive_seed(s, {a, b}) != derive_seed(s, {b, a}) by construction.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> parts) {
  uint64_t h = mix64(master);
  for (uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound > 0. Masked rejection keeps the draw unbiased
  // and independent of library-specific distribution implementations.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll(bound - 1 | 1);
    for (;;) {
      uint64_t v = eng_() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), uniform without replacement, in draw order.
  std::vector<int32_t> sample_distinct(int32_t k, int32_t n) {
    std::vector<int32_t> pool(static_cast<size_t>(n));
    for (int32_t i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    std::vector<int32_t> out;
    out.reserve(static_cast<size_t>(k));
    for (int32_t t = 0; t < k; ++t) {
      size_t j = static_cast<size_t>(t) + static_cast<size_t>(below(static_cast<uint64_t>(n - t)));
      std::swap(pool[static_cast<size_t>(t)], pool[j]);
      out.push_back(pool[static_cast<size_t>(t)]);
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qapsat
