#include "qapsat/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace qapsat {
namespace {

struct Ols {
  double beta0 = 0.0, beta1 = 0.0, r_squared = 0.0;
};

Ols ols(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("regression needs non-constant x values");
  Ols fit;
  fit.beta1 = sxy / sxx;
  fit.beta0 = my - fit.beta1 * mx;
  double sse = 0, sst = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.beta0 + fit.beta1 * x[i]);
    sse += e * e;
    sst += (y[i] - my) * (y[i] - my);
  }
  fit.r_squared = sst == 0.0 ? (sse == 0.0 ? 1.0 : 0.0) : 1.0 - sse / sst;
  return fit;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("correlation needs non-constant values");
  return sxy / std::sqrt(sxx * syy);
}

// Solve the 3x3 normal equations X'X beta = X'y by Gaussian elimination.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (std::fabs(m[col][col]) < 1e-12)
      throw ValidationError("power model regression is rank deficient (vary both n and m1)");
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double f = m[row][col] / m[col][col];
      for (int cc = col; cc < 3; ++cc) m[row][cc] -= f * m[col][cc];
      rhs[row] -= f * rhs[col];
    }
  }
  return {rhs[0] / m[0][0], rhs[1] / m[1][1], rhs[2] / m[2][2]};
}

double mean_of(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<ProportionCurve> satisfaction_proportions(std::span<const RunRecord> ledger) {
  std::map<CellKey, std::map<int32_t, std::pair<int32_t, int32_t>>> acc;  // (satisfied, total)
  for (const RunRecord& r : ledger) {
    if (!r.proven || !r.error.empty()) continue;
    auto& cell = acc[{r.n, r.m1}][r.m];
    if (r.satisfied) ++cell.first;
    ++cell.second;
  }
  std::vector<ProportionCurve> out;
  for (const auto& [key, by_m] : acc) {
    ProportionCurve curve;
    curve.cell = key;
    for (const auto& [m, counts] : by_m)
      curve.points.push_back(
          {m, static_cast<double>(counts.first) / static_cast<double>(counts.second),
           counts.second});
    out.push_back(std::move(curve));
  }
  return out;
}

LogitFit logit_fit(const ProportionCurve& curve) {
  std::vector<double> x, y;
  for (const ProportionPoint& p : curve.points) {
    if (p.proportion <= 0.0 || p.proportion >= 1.0) continue;  // logit undefined
    x.push_back(static_cast<double>(p.m));
    y.push_back(std::log(p.proportion / (1.0 - p.proportion)));
  }
  if (x.size() < 2)
    throw ValidationError("logit fit needs at least 2 interior points (0 < p < 1), cell n=" +
                          std::to_string(curve.cell.n) + " m1=" + std::to_string(curve.cell.m1));
  const Ols fit = ols(x, y);
  LogitFit out;
  out.beta0 = fit.beta0;
  out.beta1 = fit.beta1;
  out.m_c = fit.beta1 != 0.0 ? -fit.beta0 / fit.beta1 : std::numeric_limits<double>::quiet_NaN();
  out.r_squared = fit.r_squared;
  out.points_used = static_cast<int32_t>(x.size());
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("linear_fit: size mismatch");
  if (x.size() < 3) throw ValidationError("linear fit needs at least 3 points");
  const Ols fit = ols(x, y);
  LinearFit out;
  out.beta0 = fit.beta0;
  out.beta1 = fit.beta1;
  out.r_squared = fit.r_squared;
  const double n = static_cast<double>(x.size());
  out.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (n - 1.0) / (n - 2.0);
  return out;
}

SigmoidFit sigmoid_fit_grid(std::span<const std::pair<double, double>> points, SigmoidShape shape) {
  if (points.size() < 4) throw ValidationError("sigmoid fit needs at least 4 points");
  double vmax = -std::numeric_limits<double>::infinity();
  double vmin = std::numeric_limits<double>::infinity();
  double mmin = std::numeric_limits<double>::infinity();
  double mmax = -std::numeric_limits<double>::infinity();
  for (const auto& [m, v] : points) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
    mmin = std::min(mmin, m);
    mmax = std::max(mmax, m);
  }
  if (vmax == vmin) throw ValidationError("sigmoid fit is degenerate: all values equal");

  const double sign = shape == SigmoidShape::Increasing ? -1.0 : 1.0;
  const auto mse_of = [&](double L, double r, double mt) {
    double sse = 0;
    for (const auto& [m, v] : points) {
      const double pred = L / (1.0 + std::exp(sign * r * (m - mt)));
      sse += (v - pred) * (v - pred);
    }
    return sse / static_cast<double>(points.size());
  };

  double best_mse = std::numeric_limits<double>::infinity();
  double best_L = 0, best_r = 0, best_mt = 0;
  const auto scan = [&](double mt_lo, double mt_hi, double mt_step) {
    for (int li = 0; li < 41; ++li) {
      const double L = (0.5 + static_cast<double>(li) / 40.0) * vmax;
      for (int ri = 0; ri < 60; ++ri) {
        const double r = 0.05 + static_cast<double>(ri) * (3.0 - 0.05) / 59.0;
        for (double mt = mt_lo; mt <= mt_hi + 1e-9; mt += mt_step) {
          const double mse = mse_of(L, r, mt);
          if (mse < best_mse) {
            best_mse = mse;
            best_L = L;
            best_r = r;
            best_mt = mt;
          }
        }
      }
    }
  };
  scan(std::floor(mmin), std::ceil(mmax), 1.0);
  scan(best_mt - 1.0, best_mt + 1.0, 0.1);  // one refinement pass

  SigmoidFit out;
  out.L = best_L;
  out.r = best_r;
  out.m_t = best_mt;
  out.mse = best_mse;
  double sst = 0;
  const double my = [&] {
    double s = 0;
    for (const auto& p : points) s += p.second;
    return s / static_cast<double>(points.size());
  }();
  for (const auto& p : points) sst += (p.second - my) * (p.second - my);
  out.r_squared = 1.0 - best_mse * static_cast<double>(points.size()) / sst;
  return out;
}

PowerFit power_model_fit(std::span<const PowerRow> rows) {
  PowerFit out;
  std::vector<double> ln_n, ln_m1, ln_mc, mc;
  for (const PowerRow& r : rows) {
    if (!(r.m_c > 0.0) || !std::isfinite(r.m_c)) {
      ++out.rows_excluded;
      continue;
    }
    ln_n.push_back(std::log(r.n));
    ln_m1.push_back(std::log(r.m1));
    ln_mc.push_back(std::log(r.m_c));
    mc.push_back(r.m_c);
  }
  const size_t n = ln_mc.size();
  if (n < 4) throw ValidationError("power model fit needs at least 4 rows with positive m_c");
  out.rows_used = static_cast<int32_t>(n);

  std::array<std::array<double, 3>, 3> xtx{};
  std::array<double, 3> xty{};
  for (size_t i = 0; i < n; ++i) {
    const double row[3] = {1.0, ln_n[i], ln_m1[i]};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) xtx[a][b] += row[a] * row[b];
      xty[a] += row[a] * ln_mc[i];
    }
  }
  const std::array<double, 3> beta = solve3(xtx, xty);
  out.log_k = beta[0];
  out.alpha1 = beta[1];
  out.alpha2 = beta[2];

  double sse_log = 0, sst_log = 0, sse_raw = 0, sst_raw = 0;
  const double mlog = mean_of(ln_mc), mraw = mean_of(mc);
  for (size_t i = 0; i < n; ++i) {
    const double pred_log = beta[0] + beta[1] * ln_n[i] + beta[2] * ln_m1[i];
    sse_log += (ln_mc[i] - pred_log) * (ln_mc[i] - pred_log);
    sst_log += (ln_mc[i] - mlog) * (ln_mc[i] - mlog);
    const double pred_raw = std::exp(pred_log);
    sse_raw += (mc[i] - pred_raw) * (mc[i] - pred_raw);
    sst_raw += (mc[i] - mraw) * (mc[i] - mraw);
  }
  out.r_squared_log = sst_log == 0.0 ? 0.0 : 1.0 - sse_log / sst_log;
  out.r_squared_raw = sst_raw == 0.0 ? 0.0 : 1.0 - sse_raw / sst_raw;
  return out;
}

double phase_parameter(double n, double m1, double m, const PowerFit& fit) {
  return m / (std::pow(n, fit.alpha1) * std::pow(m1, fit.alpha2));
}

Correlation critical_correlation(const std::map<CellKey, double>& map_a,
                                 const std::map<CellKey, double>& map_b) {
  std::vector<double> a, b;
  for (const auto& [key, va] : map_a) {
    const auto it = map_b.find(key);
    if (it == map_b.end()) continue;
    if (!std::isfinite(va) || !std::isfinite(it->second)) continue;
    a.push_back(va);
    b.push_back(it->second);
  }
  if (a.size() < 3) throw ValidationError("correlation needs at least 3 shared cells");
  Correlation out;
  out.cells = static_cast<int32_t>(a.size());
  out.rho = pearson(a, b);
  const Ols line = ols(a, b);
  out.slope = line.beta1;
  out.intercept = line.beta0;
  return out;
}

namespace {

std::vector<CellSeries> mean_series(std::span<const RunRecord> ledger, bool rots) {
  std::map<CellKey, std::map<int32_t, std::pair<double, int32_t>>> acc;
  for (const RunRecord& r : ledger) {
    if (!r.proven || !r.error.empty()) continue;
    if (rots) {
      if (!r.rots_success_rate) continue;
      auto& cell = acc[{r.n, r.m1}][r.m];
      cell.first += *r.rots_success_rate;
      ++cell.second;
    } else {
      auto& cell = acc[{r.n, r.m1}][r.m];
      cell.first += static_cast<double>(r.bnb_nodes);
      ++cell.second;
    }
  }
  std::vector<CellSeries> out;
  for (const auto& [key, by_m] : acc) {
    CellSeries s;
    s.cell = key;
    for (const auto& [m, sum_count] : by_m)
      s.points.push_back({static_cast<double>(m), sum_count.first / sum_count.second});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<CellSeries> mean_bnb_nodes(std::span<const RunRecord> ledger) {
  return mean_series(ledger, false);
}

std::vector<CellSeries> mean_rots_success(std::span<const RunRecord> ledger) {
  return mean_series(ledger, true);
}

std::map<CellKey, double> mc_map(const AnalysisResult& result) {
  std::map<CellKey, double> out;
  for (const auto& [cell, fit] : result.logit_fits)
    if (std::isfinite(fit.m_c)) out[cell] = fit.m_c;
  return out;
}

AnalysisResult analyze_ledger(std::span<const RunRecord> ledger) {
  AnalysisResult res;
  res.curves = satisfaction_proportions(ledger);
  for (const ProportionCurve& curve : res.curves) {
    try {
      res.logit_fits.push_back({curve.cell, logit_fit(curve)});
    } catch (const ValidationError&) {
      // cells stuck at p=0 or p=1 everywhere have no transition to locate
    }
  }

  // m_c as a function of m1 at fixed n
  std::map<int32_t, std::vector<std::pair<double, double>>> per_n;
  for (const auto& [cell, fit] : res.logit_fits)
    if (std::isfinite(fit.m_c)) per_n[cell.n].push_back({static_cast<double>(cell.m1), fit.m_c});
  for (const auto& [n, pts] : per_n) {
    if (pts.size() < 3) continue;
    std::vector<double> x, y;
    for (const auto& [m1, mc] : pts) {
      x.push_back(m1);
      y.push_back(mc);
    }
    try {
      res.linear_by_n.push_back({n, linear_fit(x, y)});
    } catch (const ValidationError&) {
    }
  }

  std::vector<PowerRow> rows;
  for (const auto& [cell, fit] : res.logit_fits)
    rows.push_back({static_cast<double>(cell.n), static_cast<double>(cell.m1), fit.m_c});
  try {
    res.power = power_model_fit(rows);
  } catch (const ValidationError&) {
  }

  res.effort_series = mean_bnb_nodes(ledger);
  res.success_series = mean_rots_success(ledger);
  for (const CellSeries& s : res.effort_series) {
    try {
      res.effort_fits.push_back({s.cell, sigmoid_fit_grid(s.points, SigmoidShape::Increasing)});
    } catch (const ValidationError&) {
    }
  }
  for (const CellSeries& s : res.success_series) {
    try {
      res.success_fits.push_back({s.cell, sigmoid_fit_grid(s.points, SigmoidShape::Decreasing)});
    } catch (const ValidationError&) {
    }
  }

  const std::map<CellKey, double> mc = mc_map(res);
  std::map<CellKey, double> mt_effort, mt_success;
  for (const auto& [cell, fit] : res.effort_fits) mt_effort[cell] = fit.m_t;
  for (const auto& [cell, fit] : res.success_fits) mt_success[cell] = fit.m_t;
  try {
    res.effort_correlation = critical_correlation(mc, mt_effort);
  } catch (const ValidationError&) {
  }
  try {
    res.success_correlation = critical_correlation(mc, mt_success);
  } catch (const ValidationError&) {
  }
  return res;
}

}  // namespace qapsat
