#include "qapsat/rots.hpp"

#include "qapsat/kernels.hpp"
#include "qapsat/rng.hpp"

namespace qapsat {

namespace detail {

DeltaTable::DeltaTable(const QapInstance& inst, Permutation start)
    : inst_(&inst), n_(inst.n()), p_(std::move(start)) {
  d_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
  const auto& kern = kernels::active();
  for (int32_t r = 0; r < n_; ++r)
    for (int32_t s = r + 1; s < n_; ++s)
      d_[static_cast<size_t>(r) * static_cast<size_t>(n_) + static_cast<size_t>(s)] =
          kern.swap_delta(n_, inst.flow().data(), inst.dist().data(), p_.data(), r, s);
}

void DeltaTable::apply(int32_t u, int32_t v) {
  if (u > v) std::swap(u, v);
  const auto& a = inst_->flow();
  const auto& b = inst_->dist();
  Permutation next = p_.swapped(u, v);
  const int32_t* p = next.data();
  const auto& kern = kernels::active();

  for (int32_t r = 0; r < n_; ++r) {
    for (int32_t s = r + 1; s < n_; ++s) {
      int64_t& cell = d_[static_cast<size_t>(r) * static_cast<size_t>(n_) + static_cast<size_t>(s)];
      if (r == u || r == v || s == u || s == v) {
        cell = kern.swap_delta(n_, a.data(), b.data(), p, r, s);
        continue;
      }
      // O(1) correction for pairs disjoint from the applied move, stated on
      // the post-move permutation.
      const int64_t fa = a.at(r, u) - a.at(r, v) + a.at(s, v) - a.at(s, u);
      const int64_t fb = b.at(p[s], p[u]) - b.at(p[s], p[v]) + b.at(p[r], p[v]) - b.at(p[r], p[u]);
      const int64_t ga = a.at(u, r) - a.at(v, r) + a.at(v, s) - a.at(u, s);
      const int64_t gb = b.at(p[u], p[s]) - b.at(p[v], p[s]) + b.at(p[v], p[r]) - b.at(p[u], p[r]);
      cell += fa * fb + ga * gb;
    }
  }
  p_ = std::move(next);
}

}  // namespace detail

RotsResult rots_run(const QapInstance& inst, int64_t optimum, const RotsConfig& config,
                    uint64_t run_seed) {
  const int32_t n = inst.n();
  if (n < 2) throw ContractError("rots_run requires n >= 2");
  const int64_t tabu_mean =
      config.tabu_duration_mean > 0 ? config.tabu_duration_mean : int64_t{8} * n;
  const int64_t aspiration =
      config.aspiration > 0 ? config.aspiration : int64_t{5} * n * n;
  const int64_t tenure_lo = (9 * tabu_mean) / 10;          // floor(0.9 * mean)
  const int64_t tenure_hi = (11 * tabu_mean + 9) / 10;     // ceil(1.1 * mean)

  Rng rng(run_seed);
  detail::DeltaTable table(inst, Permutation::random(n, rng));
  int64_t current = evaluate(inst, table.permutation());
  int64_t best = current;
  if (best == optimum) return {true, 0, best};

  // tabu_until[f][l]: iteration until which placing facility f at location l
  // is forbidden. Zero-initialised, so the "stale move" aspiration can only
  // trigger once more than `aspiration` iterations have elapsed.
  std::vector<int64_t> tabu_until(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  auto until = [&](int32_t f, int32_t l) -> int64_t& {
    return tabu_until[static_cast<size_t>(f) * static_cast<size_t>(n) + static_cast<size_t>(l)];
  };

  for (int32_t t = 1; t <= config.max_iterations; ++t) {
    const Permutation& p = table.permutation();
    int32_t pick_r = -1, pick_s = -1;
    int64_t pick_delta = 0;
    bool pick_aspired = false, have_pick = false;

    for (int32_t r = 0; r < n; ++r) {
      for (int32_t s = r + 1; s < n; ++s) {
        const int64_t d = table.delta(r, s);
        const int64_t until_r = until(r, p[s]);
        const int64_t until_s = until(s, p[r]);
        const bool tabu = until_r >= t && until_s >= t;
        const bool aspired =
            until_r < t - aspiration || until_s < t - aspiration || current + d < best;
        const bool better = !have_pick || d < pick_delta;
        // Aspired moves take priority over merely admissible ones.
        if ((aspired && !pick_aspired) || (aspired && pick_aspired && better) ||
            (!aspired && !pick_aspired && better && !tabu)) {
          pick_r = r;
          pick_s = s;
          pick_delta = d;
          pick_aspired = aspired;
          have_pick = true;
        }
      }
    }
    if (!have_pick) continue;  // every move tabu and none aspired

    const int32_t old_r = p[pick_r], old_s = p[pick_s];
    table.apply(pick_r, pick_s);
    current += pick_delta;
    const int64_t tenure = rng.range(tenure_lo, tenure_hi);
    until(pick_r, old_r) = t + tenure;
    until(pick_s, old_s) = t + tenure;

    if (config.validate && current != evaluate(inst, table.permutation()))
      throw InternalError("rots: maintained objective diverged from evaluate()");

    if (current < best) {
      best = current;
      if (best == optimum) return {true, t, best};
    }
  }
  return {false, std::nullopt, best};
}

RotsAggregate rots_aggregate(const QapInstance& inst, int64_t optimum, const RotsConfig& config) {
  if (config.runs < 1) throw ContractError("rots_aggregate requires runs >= 1");
  RotsAggregate agg;
  agg.runs = config.runs;
  int64_t iteration_sum = 0;
  int32_t successes = 0;
  for (int32_t i = 0; i < config.runs; ++i) {
    const RotsResult r = rots_run(inst, optimum, config, derive_seed(config.seed, {static_cast<uint64_t>(i)}));
    if (r.success) {
      ++successes;
      iteration_sum += *r.iterations_to_optimum;
    } else {
      iteration_sum += config.max_iterations;
    }
  }
  agg.success_rate = static_cast<double>(successes) / static_cast<double>(config.runs);
  agg.mean_iterations = static_cast<double>(iteration_sum) / static_cast<double>(config.runs);
  return agg;
}

double success_rate(const QapInstance& inst, int64_t optimum, const RotsConfig& config) {
  return rots_aggregate(inst, optimum, config).success_rate;
}

}  // namespace qapsat
