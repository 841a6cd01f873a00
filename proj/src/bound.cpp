#include <algorithm>
#include <functional>

#include "gl_internal.hpp"
#include "qapsat/kernels.hpp"
#include "qapsat/lap.hpp"
#include "qapsat/solve.hpp"

namespace qapsat {

namespace detail {

int64_t gl_bound_core(const SquareMatrix& a, const SquareMatrix& b,
                      std::span<const int32_t> free_fac, std::span<const int32_t> free_loc,
                      const int64_t* fix, int32_t n, int64_t ff, GlScratch& scratch,
                      uint64_t& lap_calls) {
  const size_t u = free_fac.size();
  if (u == 0) return ff;
  const size_t len = u - 1;

  scratch.sa.resize(u * len);
  scratch.sb.resize(u * len);
  scratch.c.resize(u * u);

  for (size_t ii = 0; ii < u; ++ii) {
    int32_t* dst = scratch.sa.data() + ii * len;
    size_t t = 0;
    const int32_t fi = free_fac[ii];
    for (size_t kk = 0; kk < u; ++kk)
      if (kk != ii) dst[t++] = a.at(fi, free_fac[kk]);
    std::sort(dst, dst + len);
  }
  for (size_t jj = 0; jj < u; ++jj) {
    int32_t* dst = scratch.sb.data() + jj * len;
    size_t t = 0;
    const int32_t lj = free_loc[jj];
    for (size_t ll = 0; ll < u; ++ll)
      if (ll != jj) dst[t++] = b.at(lj, free_loc[ll]);
    std::sort(dst, dst + len, std::greater<int32_t>());
  }

  const auto& kern = kernels::active();
  for (size_t ii = 0; ii < u; ++ii) {
    const int32_t fi = free_fac[ii];
    const int32_t* sa = scratch.sa.data() + ii * len;
    for (size_t jj = 0; jj < u; ++jj) {
      const int64_t base =
          fix ? fix[static_cast<size_t>(fi) * static_cast<size_t>(n) +
                    static_cast<size_t>(free_loc[jj])]
              : 0;
      scratch.c[ii * u + jj] =
          base + kern.dot(sa, scratch.sb.data() + jj * len, static_cast<int32_t>(len));
    }
  }

  ++lap_calls;
  return ff + lap_solve(scratch.c, static_cast<int32_t>(u)).value;
}

}  // namespace detail

int64_t gilmore_lawler_bound(const QapInstance& inst, const Assignment& partial) {
  const int32_t n = inst.n();
  if (static_cast<int32_t>(partial.location_of.size()) != n)
    throw ContractError("assignment size does not match instance dimension");

  std::vector<int32_t> fixed_fac, free_fac, free_loc;
  std::vector<bool> loc_taken(static_cast<size_t>(n), false);
  for (int32_t i = 0; i < n; ++i) {
    const int32_t l = partial.location_of[static_cast<size_t>(i)];
    if (l == -1) {
      free_fac.push_back(i);
      continue;
    }
    if (l < 0 || l >= n) throw ContractError("assignment location out of range");
    if (loc_taken[static_cast<size_t>(l)]) throw ContractError("assignment is not injective");
    loc_taken[static_cast<size_t>(l)] = true;
    fixed_fac.push_back(i);
  }
  for (int32_t l = 0; l < n; ++l)
    if (!loc_taken[static_cast<size_t>(l)]) free_loc.push_back(l);

  const auto& a = inst.flow();
  const auto& b = inst.dist();
  int64_t ff = 0;
  for (int32_t i : fixed_fac)
    for (int32_t k : fixed_fac)
      ff += static_cast<int64_t>(a.at(i, k)) *
            b.at(partial.location_of[static_cast<size_t>(i)],
                 partial.location_of[static_cast<size_t>(k)]);

  std::vector<int64_t> fix(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int32_t i : free_fac) {
    for (int32_t j : free_loc) {
      int64_t acc = 0;
      for (int32_t k : fixed_fac) {
        const int32_t lk = partial.location_of[static_cast<size_t>(k)];
        acc += static_cast<int64_t>(a.at(i, k)) * b.at(j, lk);
        acc += static_cast<int64_t>(a.at(k, i)) * b.at(lk, j);
      }
      fix[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = acc;
    }
  }

  detail::GlScratch scratch;
  uint64_t lap_calls = 0;
  return detail::gl_bound_core(a, b, free_fac, free_loc, fix.data(), n, ff, scratch, lap_calls);
}

}  // namespace qapsat
