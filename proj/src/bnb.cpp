#include <algorithm>
#include <chrono>
#include <limits>

#include "gl_internal.hpp"
#include "qapsat/solve.hpp"

namespace qapsat {
namespace {

constexpr int64_t kNoIncumbent = std::numeric_limits<int64_t>::max();

struct Child {
  int64_t bound;
  int32_t loc;
};

struct Search {
  const SquareMatrix& a;
  const SquareMatrix& b;
  const BnbOptions& opt;
  int32_t n;

  std::vector<int32_t> fac_ids;                 // 0..n-1; facilities d.. are free at depth d
  std::vector<std::vector<int32_t>> free_loc;   // per depth
  std::vector<std::vector<int64_t>> fix;        // per depth, n x n fixed-interaction costs
  std::vector<int64_t> ff;                      // per depth, fixed-fixed cost
  std::vector<int64_t> parent_bound;            // bound the parent computed for this node
  std::vector<std::vector<Child>> children;     // per depth scratch
  std::vector<int32_t> loc_of;                  // fixed prefix
  detail::GlScratch scratch;

  int64_t incumbent = kNoIncumbent;
  std::vector<int32_t> best;
  uint64_t nodes = 0, laps = 0;
  bool capped = false, done = false;

  Search(const QapInstance& inst, const BnbOptions& options)
      : a(inst.flow()), b(inst.dist()), opt(options), n(inst.n()) {
    fac_ids.resize(static_cast<size_t>(n));
    for (int32_t i = 0; i < n; ++i) fac_ids[static_cast<size_t>(i)] = i;
    free_loc.assign(static_cast<size_t>(n) + 1, {});
    free_loc[0].resize(static_cast<size_t>(n));
    for (int32_t j = 0; j < n; ++j) free_loc[0][static_cast<size_t>(j)] = j;
    fix.assign(static_cast<size_t>(n) + 1,
               std::vector<int64_t>(static_cast<size_t>(n) * static_cast<size_t>(n), 0));
    ff.assign(static_cast<size_t>(n) + 1, 0);
    parent_bound.assign(static_cast<size_t>(n) + 1, 0);
    children.assign(static_cast<size_t>(n) + 1, {});
    loc_of.assign(static_cast<size_t>(n), -1);
  }

  std::span<const int32_t> free_fac(int32_t depth) const {
    return {fac_ids.data() + depth, static_cast<size_t>(n - depth)};
  }

  // Child state for fixing facility `d` at location `j`: interaction costs of
  // the still-free part gain the exact terms against the new fixed pair.
  void build_child(int32_t d, int32_t j) {
    const int32_t f = d;
    auto& child_fix = fix[static_cast<size_t>(d) + 1];
    const auto& cur_fix = fix[static_cast<size_t>(d)];
    auto& floc = free_loc[static_cast<size_t>(d) + 1];
    floc.clear();
    for (int32_t l : free_loc[static_cast<size_t>(d)])
      if (l != j) floc.push_back(l);
    for (int32_t i = d + 1; i < n; ++i) {
      const size_t row = static_cast<size_t>(i) * static_cast<size_t>(n);
      for (int32_t l : floc)
        child_fix[row + static_cast<size_t>(l)] =
            cur_fix[row + static_cast<size_t>(l)] +
            static_cast<int64_t>(a.at(i, f)) * b.at(l, j) +
            static_cast<int64_t>(a.at(f, i)) * b.at(j, l);
    }
  }

  void expand(int32_t d) {
    if (opt.node_cap && nodes >= *opt.node_cap && incumbent != kNoIncumbent) {
      capped = true;
      done = true;
      return;
    }
    ++nodes;

    const int32_t f = d;
    auto& kids = children[static_cast<size_t>(d)];
    kids.clear();
    for (int32_t j : free_loc[static_cast<size_t>(d)]) {
      const int64_t ff_child =
          ff[static_cast<size_t>(d)] +
          fix[static_cast<size_t>(d)][static_cast<size_t>(f) * static_cast<size_t>(n) +
                                      static_cast<size_t>(j)];
      int64_t bound;
      if (d + 1 == n) {
        bound = ff_child;  // complete assignment: the bound is the objective
      } else {
        build_child(d, j);
        bound = detail::gl_bound_core(a, b, free_fac(d + 1), free_loc[static_cast<size_t>(d) + 1],
                                      fix[static_cast<size_t>(d) + 1].data(), n, ff_child, scratch,
                                      laps);
      }
      kids.push_back({bound, j});
    }
    std::sort(kids.begin(), kids.end(), [](const Child& x, const Child& y) {
      return x.bound != y.bound ? x.bound < y.bound : x.loc < y.loc;
    });

    for (const Child& c : kids) {
      if (done) return;
      if (c.bound >= incumbent) break;  // children are sorted: the rest prune too
      if (opt.validate && c.bound < parent_bound[static_cast<size_t>(d)])
        throw InternalError("branch_and_bound: child bound fell below its parent bound");
      loc_of[static_cast<size_t>(d)] = c.loc;
      if (d + 1 == n) {
        incumbent = c.bound;
        best = loc_of;
        if (opt.target && incumbent == *opt.target) {
          done = true;
          return;
        }
      } else {
        build_child(d, c.loc);
        ff[static_cast<size_t>(d) + 1] =
            ff[static_cast<size_t>(d)] +
            fix[static_cast<size_t>(d)][static_cast<size_t>(f) * static_cast<size_t>(n) +
                                        static_cast<size_t>(c.loc)];
        parent_bound[static_cast<size_t>(d) + 1] = c.bound;
        expand(d + 1);
      }
    }
    loc_of[static_cast<size_t>(d)] = -1;
  }
};

}  // namespace

SolveOutcome branch_and_bound(const QapInstance& inst, const BnbOptions& options) {
  const int32_t n = inst.n();
  if (n == 0) throw ContractError("branch_and_bound: empty instance");
  const auto start = std::chrono::steady_clock::now();

  Search search(inst, options);
  if (options.validate) {
    uint64_t laps = 0;
    search.parent_bound[0] = detail::gl_bound_core(
        inst.flow(), inst.dist(), search.free_fac(0), search.free_loc[0], nullptr, n, 0,
        search.scratch, laps);
  }
  search.expand(0);

  SolveOutcome out;
  out.minimum = search.incumbent;
  out.argmin = Permutation(search.best);
  out.nodes_expanded = search.nodes;
  out.lap_calls = search.laps;
  out.proven = !search.capped;
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace qapsat
