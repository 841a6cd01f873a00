#pragma once
// Robust tabu search for the QAP. Each iteration scans every pairwise swap
// through an incrementally maintained table of swap deltas (always equal to
// delta_swap on the current permutation), applies the best admissible move,
// and stops when the certified optimum is reached or the iteration budget is
// spent. Tabu rule: a move is forbidden when both facilities would return to
// locations they occupied within their tenure; aspiration admits a move that
// has not been applied for `aspiration` iterations or that improves on the
// best value seen.

#include <cstdint>
#include <optional>

#include "qapsat/core.hpp"

namespace qapsat {

struct RotsConfig {
  int32_t tabu_duration_mean = 0;  // 0 -> 8n
  int64_t aspiration = 0;          // 0 -> 5n^2
  int32_t max_iterations = 1000;
  int32_t runs = 30;
  uint64_t seed = 0;
  bool validate = false;  // re-evaluate the maintained objective every iteration
};

struct RotsResult {
  bool success = false;
  std::optional<int32_t> iterations_to_optimum;  // 0 when the start is optimal
  int64_t best_value = 0;
};

// One run from a uniformly random start. `optimum` must be the certified
// global minimum; `run_seed` controls the start and all tenure draws.
RotsResult rots_run(const QapInstance& inst, int64_t optimum, const RotsConfig& config,
                    uint64_t run_seed);

struct RotsAggregate {
  double success_rate = 0.0;
  double mean_iterations = 0.0;  // failed runs count the full budget
  int32_t runs = 0;
};

// config.runs independent runs with seeds derived from config.seed.
RotsAggregate rots_aggregate(const QapInstance& inst, int64_t optimum, const RotsConfig& config);

// Fraction of successful runs; a pure function of (instance, optimum, config).
double success_rate(const QapInstance& inst, int64_t optimum, const RotsConfig& config);

namespace detail {

// Swap-delta table with O(n) updates per applied move for unaffected pairs.
class DeltaTable {
 public:
  DeltaTable(const QapInstance& inst, Permutation start);

  int64_t delta(int32_t r, int32_t s) const {  // r < s
    return d_[static_cast<size_t>(r) * static_cast<size_t>(n_) + static_cast<size_t>(s)];
  }
  void apply(int32_t r, int32_t s);  // swaps the images of r and s
  const Permutation& permutation() const { return p_; }

 private:
  const QapInstance* inst_;
  int32_t n_;
  Permutation p_;
  std::vector<int64_t> d_;
};

}  // namespace detail

}  // namespace qapsat
