#include <chrono>
#include <limits>

#include "qapsat/solve.hpp"

namespace qapsat {
namespace {

struct EnumState {
  const SquareMatrix* a;
  const SquareMatrix* b;
  int32_t n;
  std::vector<int32_t> loc;
  std::vector<bool> used;
  int64_t cost = 0;
  int64_t best = std::numeric_limits<int64_t>::max();
  std::vector<int32_t> best_loc;
  uint64_t leaves = 0;

  // Interaction of facility d (placed at j) with every already-placed facility.
  int64_t placement_cost(int32_t d, int32_t j) const {
    int64_t add = 0;
    for (int32_t k = 0; k < d; ++k) {
      const int32_t lk = loc[static_cast<size_t>(k)];
      add += static_cast<int64_t>(a->at(d, k)) * b->at(j, lk);
      add += static_cast<int64_t>(a->at(k, d)) * b->at(lk, j);
    }
    return add;
  }

  void rec(int32_t d) {
    if (d == n) {
      ++leaves;
      if (cost < best) {
        best = cost;
        best_loc = loc;
      }
      return;
    }
    for (int32_t j = 0; j < n; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      const int64_t add = placement_cost(d, j);
      loc[static_cast<size_t>(d)] = j;
      used[static_cast<size_t>(j)] = true;
      cost += add;
      rec(d + 1);
      cost -= add;
      used[static_cast<size_t>(j)] = false;
    }
  }
};

}  // namespace

SolveOutcome enumerate_min(const QapInstance& inst, int32_t cap) {
  const int32_t n = inst.n();
  if (n > cap)
    throw ContractError("enumerate_min: n=" + std::to_string(n) + " exceeds the cap " +
                        std::to_string(cap) + "; use branch_and_bound");
  if (n == 0) throw ContractError("enumerate_min: empty instance");

  const auto start = std::chrono::steady_clock::now();
  EnumState st;
  st.a = &inst.flow();
  st.b = &inst.dist();
  st.n = n;
  st.loc.assign(static_cast<size_t>(n), -1);
  st.used.assign(static_cast<size_t>(n), false);
  st.rec(0);

  SolveOutcome out;
  out.minimum = st.best;
  out.argmin = Permutation(st.best_loc);
  out.nodes_expanded = st.leaves;  // = n!
  out.lap_calls = 0;
  out.proven = true;
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void mark_satisfaction(SolveOutcome& outcome, const QapSatInstance& qs) {
  outcome.satisfied = is_satisfied(qs, outcome.minimum);
}

}  // namespace qapsat
