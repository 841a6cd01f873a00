#pragma once
// Core QAP types and primitives: square integer matrices, permutations,
// objective evaluation, incremental swap deltas, clause lower bounds,
// the satisfaction predicate and the two instance features
// (flow dominance, sparsity).
//
// All types are immutable after construction and safe to share across
// threads; every operation here is a pure function.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qapsat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A caller broke a documented precondition.
struct ContractError : Error {
  using Error::Error;
};
// Input data (file, config, matrix) violates an invariant.
struct ValidationError : Error {
  using Error::Error;
};
// A computed quantity contradicts a certified one; indicates a bug.
struct InternalError : Error {
  using Error::Error;
};

// Entry and objective caps. Entries stay <= 2^30 and n^2*maxA*maxB <= 2^60 so
// that entry differences fit in 32-bit SIMD lanes and every partial sum the
// kernels form (objective, swap delta, scalar products) stays inside int64.
inline constexpr int32_t kMaxEntry = 1 << 30;
inline constexpr int64_t kObjectiveCap = int64_t{1} << 60;

// Non-negative integer matrix with zero diagonal, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(int32_t n, std::vector<int32_t> entries);

  static SquareMatrix zeros(int32_t n);

  int32_t n() const { return n_; }
  int32_t at(int32_t i, int32_t j) const {
    return e_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)];
  }
  const int32_t* data() const { return e_.data(); }
  const std::vector<int32_t>& entries() const { return e_; }
  int32_t max_entry() const;
  bool operator==(const SquareMatrix& o) const = default;

 private:
  int32_t n_ = 0;
  std::vector<int32_t> e_;
};

// Bijective mapping facility -> location, 0-based internally.
// External surfaces (files, CLI output) use 1-based indices.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int32_t> mapping);  // validates bijectivity

  static Permutation identity(int32_t n);
  static Permutation random(int32_t n, class Rng& rng);

  int32_t n() const { return static_cast<int32_t>(p_.size()); }
  int32_t operator[](int32_t i) const { return p_[static_cast<size_t>(i)]; }
  const int32_t* data() const { return p_.data(); }
  const std::vector<int32_t>& mapping() const { return p_; }

  // Copy with the images of r and s exchanged.
  Permutation swapped(int32_t r, int32_t s) const;
  bool operator==(const Permutation& o) const = default;

 private:
  std::vector<int32_t> p_;
};

class QapInstance {
 public:
  QapInstance() = default;
  QapInstance(SquareMatrix flow, SquareMatrix dist);  // validates dims + objective cap

  int32_t n() const { return flow_.n(); }
  const SquareMatrix& flow() const { return flow_; }
  const SquareMatrix& dist() const { return dist_; }
  bool operator==(const QapInstance& o) const = default;

 private:
  SquareMatrix flow_;
  SquareMatrix dist_;
};

// One clause: k distinct variables plus the k x k submatrix embedded on them.
struct ClauseSpec {
  std::vector<int32_t> variables;  // 0-based, distinct
  SquareMatrix submatrix;

  int32_t k() const { return static_cast<int32_t>(variables.size()); }
  bool operator==(const ClauseSpec& o) const = default;
};

// Throws ValidationError unless the clause has distinct in-range variables,
// |variables| == submatrix.n and, for flow clauses, positive off-diagonals.
void validate_a_clause(const ClauseSpec& c, int32_t n);
void validate_b_clause(const ClauseSpec& c, int32_t n);

// Sum of clause embeddings on an n x n zero matrix (overlaps add).
SquareMatrix sum_of_clauses(int32_t n, std::span<const ClauseSpec> clauses);

// A QAP instance together with the clause structure that generated it.
struct QapSatInstance {
  QapInstance instance;
  std::vector<ClauseSpec> a_clauses;
  std::vector<ClauseSpec> b_clauses;
  uint64_t seed = 0;
  int64_t global_lower_bound = 0;

  int32_t n() const { return instance.n(); }
  int32_t m() const { return static_cast<int32_t>(a_clauses.size()); }
  int32_t m1() const { return static_cast<int32_t>(b_clauses.size()); }
  int32_t k() const { return a_clauses.empty() ? 0 : a_clauses.front().k(); }
};

// Re-checks every QapSatInstance invariant (clause validity, flow matrix is
// the sum of the embedded flow clauses, distance is 1 on every pair covered
// by a distance clause, stated bound equals the sum of clause bounds).
void validate_qapsat(const QapSatInstance& qs);

// Objective: sum over all i, j of A[i][j] * B[sigma_i][sigma_j].
int64_t evaluate(const QapInstance& inst, const Permutation& sigma);

// evaluate(sigma with r,s exchanged) - evaluate(sigma), in O(n).
int64_t delta_swap(const QapInstance& inst, const Permutation& sigma, int32_t r, int32_t s);

// ell * (sum of off-diagonal submatrix entries).
int64_t clause_lower_bound(const ClauseSpec& clause, int64_t ell);

// True iff the certified minimum meets the instance's global lower bound.
// Throws InternalError if minimum < bound (the bound would be disproven).
bool is_satisfied(const QapSatInstance& qs, int64_t minimum);

// 100 * population standard deviation / mean over all n^2 entries
// (diagonal included); 0 when the mean is 0.
double flow_dominance(const SquareMatrix& m);

// Zero entries as a proportion of n^2.
double sparsity(const SquareMatrix& m);

}  // namespace qapsat
