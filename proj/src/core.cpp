#include "qapsat/core.hpp"

#include <algorithm>
#include <cmath>

#include "qapsat/kernels.hpp"
#include "qapsat/rng.hpp"

namespace qapsat {

SquareMatrix::SquareMatrix(int32_t n, std::vector<int32_t> entries) : n_(n), e_(std::move(entries)) {
  if (n < 0) throw ValidationError("matrix dimension must be non-negative");
  if (e_.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
    throw ValidationError("matrix entry count " + std::to_string(e_.size()) + " does not match n=" +
                          std::to_string(n));
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = 0; j < n; ++j) {
      int32_t v = at(i, j);
      if (v < 0)
        throw ValidationError("negative entry " + std::to_string(v) + " at (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
      if (v > kMaxEntry)
        throw ValidationError("entry " + std::to_string(v) + " at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") exceeds the supported maximum " +
                              std::to_string(kMaxEntry));
      if (i == j && v != 0)
        throw ValidationError("non-zero diagonal entry at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
    }
  }
}

SquareMatrix SquareMatrix::zeros(int32_t n) {
  return SquareMatrix(n, std::vector<int32_t>(static_cast<size_t>(n) * static_cast<size_t>(n), 0));
}

int32_t SquareMatrix::max_entry() const {
  int32_t m = 0;
  for (int32_t v : e_) m = std::max(m, v);
  return m;
}

Permutation::Permutation(std::vector<int32_t> mapping) : p_(std::move(mapping)) {
  const int32_t n = static_cast<int32_t>(p_.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int32_t v : p_) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw ValidationError("mapping is not a permutation of 0.." + std::to_string(n - 1));
    seen[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int32_t n) {
  std::vector<int32_t> p(static_cast<size_t>(n));
  for (int32_t i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  Permutation out;
  out.p_ = std::move(p);
  return out;
}

Permutation Permutation::random(int32_t n, Rng& rng) {
  Permutation out = identity(n);
  rng.shuffle(out.p_);
  return out;
}

Permutation Permutation::swapped(int32_t r, int32_t s) const {
  Permutation out = *this;
  std::swap(out.p_[static_cast<size_t>(r)], out.p_[static_cast<size_t>(s)]);
  return out;
}

QapInstance::QapInstance(SquareMatrix flow, SquareMatrix dist)
    : flow_(std::move(flow)), dist_(std::move(dist)) {
  if (flow_.n() != dist_.n())
    throw ValidationError("flow dimension " + std::to_string(flow_.n()) +
                          " != distance dimension " + std::to_string(dist_.n()));
  const int64_t n = flow_.n();
  const int64_t worst = n * n * static_cast<int64_t>(flow_.max_entry());
  // n^2 * maxA * maxB <= 2^60 keeps every objective and swap delta in int64.
  if (flow_.max_entry() > 0 && dist_.max_entry() > 0 &&
      worst > kObjectiveCap / static_cast<int64_t>(dist_.max_entry()))
    throw ValidationError("instance rejected: n^2 * maxA * maxB exceeds the 2^60 overflow guard");
}

void validate_a_clause(const ClauseSpec& c, int32_t n) {
  const int32_t k = c.k();
  if (k < 2 || k > n) throw ValidationError("flow clause must have 2 <= k <= n variables");
  if (c.submatrix.n() != k) throw ValidationError("flow clause submatrix dimension != k");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int32_t v : c.variables) {
    if (v < 0 || v >= n) throw ValidationError("flow clause variable out of range");
    if (seen[static_cast<size_t>(v)]) throw ValidationError("flow clause variables must be distinct");
    seen[static_cast<size_t>(v)] = true;
  }
  for (int32_t i = 0; i < k; ++i)
    for (int32_t j = 0; j < k; ++j)
      if (i != j && c.submatrix.at(i, j) <= 0)
        throw ValidationError("flow clause off-diagonal entries must be positive");
}

void validate_b_clause(const ClauseSpec& c, int32_t n) {
  const int32_t k = c.k();
  if (k < 2 || k > n) throw ValidationError("distance clause must have 2 <= k <= n variables");
  if (c.submatrix.n() != k) throw ValidationError("distance clause submatrix dimension != k");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int32_t v : c.variables) {
    if (v < 0 || v >= n) throw ValidationError("distance clause variable out of range");
    if (seen[static_cast<size_t>(v)])
      throw ValidationError("distance clause variables must be distinct");
    seen[static_cast<size_t>(v)] = true;
  }
  for (int32_t i = 0; i < k; ++i)
    for (int32_t j = 0; j < k; ++j)
      if (i != j && c.submatrix.at(i, j) != 1)
        throw ValidationError("distance clause off-diagonal entries must equal 1");
}

SquareMatrix sum_of_clauses(int32_t n, std::span<const ClauseSpec> clauses) {
  std::vector<int32_t> acc(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (const ClauseSpec& c : clauses) {
    const int32_t k = c.k();
    for (int32_t i = 0; i < k; ++i)
      for (int32_t j = 0; j < k; ++j) {
        size_t idx = static_cast<size_t>(c.variables[static_cast<size_t>(i)]) * static_cast<size_t>(n) +
                     static_cast<size_t>(c.variables[static_cast<size_t>(j)]);
        acc[idx] += c.submatrix.at(i, j);
      }
  }
  return SquareMatrix(n, std::move(acc));
}

void validate_qapsat(const QapSatInstance& qs) {
  const int32_t n = qs.n();
  if (qs.a_clauses.empty()) throw ValidationError("instance must carry at least one flow clause");
  const int32_t k = qs.k();
  for (const ClauseSpec& c : qs.a_clauses) {
    validate_a_clause(c, n);
    if (c.k() != k) throw ValidationError("all clauses must share the same size k");
  }
  for (const ClauseSpec& c : qs.b_clauses) {
    validate_b_clause(c, n);
    if (c.k() != k) throw ValidationError("all clauses must share the same size k");
  }
  if (sum_of_clauses(n, qs.a_clauses) != qs.instance.flow())
    throw ValidationError("flow matrix does not equal the sum of the embedded flow clauses");
  for (const ClauseSpec& c : qs.b_clauses)
    for (int32_t i : c.variables)
      for (int32_t j : c.variables)
        if (i != j && qs.instance.dist().at(i, j) != 1)
          throw ValidationError("distance entry covered by a clause is not 1 at (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  int64_t lb = 0;
  for (const ClauseSpec& c : qs.a_clauses) lb += clause_lower_bound(c, 1);
  if (lb != qs.global_lower_bound)
    throw ValidationError("stated global lower bound " + std::to_string(qs.global_lower_bound) +
                          " != sum of clause bounds " + std::to_string(lb));
}

int64_t evaluate(const QapInstance& inst, const Permutation& sigma) {
  if (sigma.n() != inst.n())
    throw ContractError("permutation dimension " + std::to_string(sigma.n()) +
                        " != instance dimension " + std::to_string(inst.n()));
  return kernels::active().objective(inst.n(), inst.flow().data(), inst.dist().data(), sigma.data());
}

int64_t delta_swap(const QapInstance& inst, const Permutation& sigma, int32_t r, int32_t s) {
  if (sigma.n() != inst.n()) throw ContractError("permutation dimension != instance dimension");
  if (r == s) throw ContractError("delta_swap requires r != s");
  if (r < 0 || s < 0 || r >= inst.n() || s >= inst.n())
    throw ContractError("swap index out of range");
  return kernels::active().swap_delta(inst.n(), inst.flow().data(), inst.dist().data(), sigma.data(),
                                      r, s);
}

int64_t clause_lower_bound(const ClauseSpec& clause, int64_t ell) {
  int64_t sum = 0;
  const int32_t k = clause.k();
  for (int32_t i = 0; i < k; ++i)
    for (int32_t j = 0; j < k; ++j)
      if (i != j) sum += clause.submatrix.at(i, j);
  return ell * sum;
}

bool is_satisfied(const QapSatInstance& qs, int64_t minimum) {
  if (minimum < qs.global_lower_bound)
    throw InternalError("certified minimum " + std::to_string(minimum) +
                        " is below the global lower bound " +
                        std::to_string(qs.global_lower_bound));
  return minimum == qs.global_lower_bound;
}

double flow_dominance(const SquareMatrix& m) {
  const size_t count = m.entries().size();
  if (count == 0) return 0.0;
  double sum = 0.0, sumsq = 0.0;
  for (int32_t v : m.entries()) {
    sum += static_cast<double>(v);
    sumsq += static_cast<double>(v) * static_cast<double>(v);
  }
  const double mean = sum / static_cast<double>(count);
  if (mean == 0.0) return 0.0;
  const double var = sumsq / static_cast<double>(count) - mean * mean;
  return 100.0 * std::sqrt(std::max(0.0, var)) / mean;
}

double sparsity(const SquareMatrix& m) {
  const size_t count = m.entries().size();
  if (count == 0) return 0.0;
  size_t zeros = 0;
  for (int32_t v : m.entries())
    if (v == 0) ++zeros;
  return static_cast<double>(zeros) / static_cast<double>(count);
}

}  // namespace qapsat
