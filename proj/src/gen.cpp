#include "qapsat/gen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qapsat {
namespace {

constexpr int32_t kA3[3][3] = {{0, 1, 2}, {2, 0, 1}, {3, 1, 0}};

void check_config(const GeneratorConfig& c) {
  if (c.k != 3) throw ValidationError("only k=3 clause submatrices are available");
  if (c.n < c.k) throw ValidationError("n must be at least k");
  if (c.m < 1) throw ValidationError("m must be at least 1");
  if (c.m1 < 1) throw ValidationError("m1 must be at least 1");
}

}  // namespace

const SquareMatrix& a3_submatrix() {
  static const SquareMatrix a3(3, {0, 1, 2, 2, 0, 1, 3, 1, 0});
  return a3;
}

ClauseSpec gen_a_clause(Rng& rng, int32_t n) {
  if (n < 3) throw ContractError("gen_a_clause requires n >= 3");
  ClauseSpec c;
  c.variables = rng.sample_distinct(3, n);
  std::sort(c.variables.begin(), c.variables.end());

  // Random simultaneous row/column reorder of the base submatrix:
  // sub[pi[i]][pi[j]] = A3[i][j].
  std::vector<int32_t> pi{0, 1, 2};
  rng.shuffle(pi);
  std::vector<int32_t> entries(9, 0);
  for (int32_t i = 0; i < 3; ++i)
    for (int32_t j = 0; j < 3; ++j)
      entries[static_cast<size_t>(pi[static_cast<size_t>(i)]) * 3 +
              static_cast<size_t>(pi[static_cast<size_t>(j)])] = kA3[i][j];
  c.submatrix = SquareMatrix(3, std::move(entries));
  return c;
}

ClauseSpec gen_b_clause(Rng& rng, int32_t n) {
  if (n < 3) throw ContractError("gen_b_clause requires n >= 3");
  ClauseSpec c;
  c.variables = rng.sample_distinct(3, n);
  std::sort(c.variables.begin(), c.variables.end());
  c.submatrix = SquareMatrix(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  return c;
}

SquareMatrix compose_distance(std::span<const ClauseSpec> b_clauses, const SquareMatrix& complement) {
  const int32_t n = complement.n();
  std::vector<int32_t> entries(complement.entries());
  for (const ClauseSpec& c : b_clauses) {
    for (int32_t i : c.variables)
      for (int32_t j : c.variables)
        if (i != j) {
          int32_t& e = entries[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
          e = std::min(e, 1);
        }
  }
  return SquareMatrix(n, std::move(entries));
}

std::map<int32_t, int64_t> geometric_level_counts(int32_t n, int64_t ones_count) {
  if (ones_count <= 0)
    throw ValidationError("distance generation requires at least one clause-covered pair");
  const int64_t total = static_cast<int64_t>(n) * (n - 1);
  std::map<int32_t, int64_t> counts;
  counts[1] = ones_count;
  int64_t placed = ones_count;
  for (int32_t d = 2; placed < total; ++d) {
    // ceil(p1 * (total - placed)) with p1 = ones/total, in exact integers
    int64_t nd = (ones_count * (total - placed) + total - 1) / total;
    nd = std::max<int64_t>(nd, 1);
    nd = std::min(nd, total - placed);  // the recursion may overshoot the free space
    counts[d] = nd;
    placed += nd;
  }
  return counts;
}

QapSatInstance generate(const GeneratorConfig& config) {
  check_config(config);
  const int32_t n = config.n;
  Rng rng(config.seed);

  QapSatInstance qs;
  qs.seed = config.seed;
  qs.a_clauses.reserve(static_cast<size_t>(config.m));
  for (int32_t i = 0; i < config.m; ++i) qs.a_clauses.push_back(gen_a_clause(rng, n));
  qs.b_clauses.reserve(static_cast<size_t>(config.m1));
  for (int32_t i = 0; i < config.m1; ++i) qs.b_clauses.push_back(gen_b_clause(rng, n));

  SquareMatrix flow = sum_of_clauses(n, qs.a_clauses);

  // Distance matrix: 1 on covered pairs, geometric-decay values elsewhere.
  std::vector<int32_t> dist(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (const ClauseSpec& c : qs.b_clauses)
    for (int32_t i : c.variables)
      for (int32_t j : c.variables)
        if (i != j) dist[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = 1;

  int64_t ones = 0;
  std::vector<int64_t> free_pos;  // off-diagonal positions not covered by a clause
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const size_t idx = static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j);
      if (dist[idx] == 1)
        ++ones;
      else
        free_pos.push_back(static_cast<int64_t>(idx));
    }

  const std::map<int32_t, int64_t> counts = geometric_level_counts(n, ones);
  size_t offset = 0;
  for (const auto& [value, count] : counts) {
    if (value == 1) continue;
    for (int64_t t = 0; t < count; ++t) {
      const size_t pick = offset + static_cast<size_t>(rng.below(free_pos.size() - offset));
      std::swap(free_pos[offset], free_pos[pick]);
      dist[static_cast<size_t>(free_pos[offset])] = value;
      ++offset;
    }
  }

  qs.instance = QapInstance(std::move(flow), SquareMatrix(n, std::move(dist)));
  qs.global_lower_bound = 0;
  for (const ClauseSpec& c : qs.a_clauses) qs.global_lower_bound += clause_lower_bound(c, 1);
  validate_qapsat(qs);
  return qs;
}

uint64_t instance_seed(uint64_t master_seed, int32_t n, int32_t k, int32_t m1, int32_t m,
                       int32_t replicate) {
  return derive_seed(master_seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(k),
                                   static_cast<uint64_t>(m1), static_cast<uint64_t>(m),
                                   static_cast<uint64_t>(replicate)});
}

std::vector<SuiteEntry> generate_suite(std::span<const SuiteCell> grid, int32_t instances_per_cell,
                                       uint64_t master_seed, const std::filesystem::path& out_dir) {
  if (grid.empty()) throw ValidationError("suite grid is empty");
  if (instances_per_cell < 1) throw ValidationError("instances_per_cell must be >= 1");
  std::filesystem::create_directories(out_dir);

  std::vector<SuiteEntry> entries;
  for (const SuiteCell& cell : grid) {
    for (int32_t rep = 0; rep < instances_per_cell; ++rep) {
      SuiteEntry e;
      e.cell = cell;
      e.replicate = rep;
      e.seed = instance_seed(master_seed, cell.n, cell.k, cell.m1, cell.m, rep);
      const std::string stem = "qapsat-n" + std::to_string(cell.n) + "-k" + std::to_string(cell.k) +
                               "-m1_" + std::to_string(cell.m1) + "-m" + std::to_string(cell.m) +
                               "-r" + std::to_string(rep);
      e.files = instance_paths(out_dir / (stem + ".dat"));
      GeneratorConfig cfg{cell.n, cell.k, cell.m, cell.m1, e.seed};
      write_instance(generate(cfg), e.files);
      entries.push_back(std::move(e));
    }
  }

  std::ofstream manifest(out_dir / "manifest.csv", std::ios::binary | std::ios::trunc);
  if (!manifest) throw ValidationError("cannot write suite manifest in " + out_dir.string());
  manifest << "n,k,m,m1,replicate,seed,data_path,meta_path\n";
  for (const SuiteEntry& e : entries)
    manifest << e.cell.n << ',' << e.cell.k << ',' << e.cell.m << ',' << e.cell.m1 << ','
             << e.replicate << ',' << e.seed << ',' << e.files.data_path.filename().string() << ','
             << e.files.meta_path.filename().string() << '\n';
  return entries;
}

}  // namespace qapsat
