#pragma once
// Factorial experiment runner. Sweeps a (n, m1, m) grid with several
// replicates per cell, certifies each instance's minimum, optionally measures
// the tabu-search success rate against it, and appends one CSV row per
// instance. The ledger is restartable (rows already present are skipped by
// key) and is rewritten in canonical key order on completion, so identical
// plans with identical seeds produce byte-identical ledgers regardless of
// worker count.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "qapsat/rots.hpp"
#include "qapsat/solve.hpp"

namespace qapsat {

struct ExperimentPlan {
  int32_t k = 3;
  std::vector<int32_t> n_values;
  std::vector<int32_t> m1_values;
  std::vector<int32_t> m_values;
  int32_t instances_per_cell = 1;
  uint64_t master_seed = 0;
  std::string solver = "bnb";  // "bnb" (optimization mode) or "enum"
  bool rots_enabled = true;
  int32_t rots_runs = 30;
  int32_t rots_max_iterations = 1000;
  std::optional<uint64_t> node_cap;
  int32_t enumerate_cap = kEnumerateCap;
  // Record wall-clock seconds in the ledger. Off by default: timing is
  // machine noise and would break byte-level reproducibility.
  bool timing = false;
};

// Plan file: a JSON document mirroring the fields above; n/m1/m accept either
// an explicit array or {"from": a, "to": b, "step": s}.
ExperimentPlan load_plan(const std::filesystem::path& path);
void validate_plan(const ExperimentPlan& plan);

struct RunRecord {
  int32_t n = 0, k = 0, m = 0, m1 = 0, replicate = 0;
  uint64_t seed = 0;
  int64_t minimum = 0;
  int64_t global_lower_bound = 0;
  bool satisfied = false;
  bool proven = false;
  uint64_t bnb_nodes = 0;
  uint64_t bnb_lap_calls = 0;
  std::optional<double> bnb_seconds;
  std::optional<double> rots_success_rate;
  std::optional<double> rots_mean_iterations;
  std::string error;

  std::tuple<int32_t, int32_t, int32_t, int32_t> key() const { return {n, m1, m, replicate}; }
};

std::string ledger_header();
std::string to_csv_row(const RunRecord& r);
RunRecord parse_ledger_row(const std::string& line);
std::vector<RunRecord> read_ledger(const std::filesystem::path& path);

// Runs every missing (cell, replicate) of the plan with `workers` threads and
// returns the final (sorted) ledger contents.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan,
                                      const std::filesystem::path& ledger_path, int32_t workers);

// Solve one replicate exactly (and measure ROTS when enabled); the building
// block run_experiment parallelizes.
RunRecord run_one(const ExperimentPlan& plan, int32_t n, int32_t m1, int32_t m, int32_t replicate);

}  // namespace qapsat
