#pragma once
// Statistical fits over the experiment ledger: satisfaction proportions per
// cell, logit regression locating the critical clause count m_c, per-n linear
// models m_c = b0 + b1*m1, the power model m_c = k * n^a1 * m1^a2 (multilinear
// OLS on logs), grid-search sigmoid fits of solver effort and tabu success
// rate, and the correlation between the two critical parameters.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qapsat/harness.hpp"

namespace qapsat {

struct CellKey {
  int32_t n = 0;
  int32_t m1 = 0;
  auto operator<=>(const CellKey&) const = default;
};

struct ProportionPoint {
  int32_t m = 0;
  double proportion = 0.0;
  int32_t count = 0;
};

struct ProportionCurve {
  CellKey cell;
  std::vector<ProportionPoint> points;
};

struct LogitFit {
  double beta0 = 0.0, beta1 = 0.0;
  double m_c = 0.0;  // -beta0/beta1 (NaN when beta1 == 0)
  double r_squared = 0.0;
  int32_t points_used = 0;  // interior points only; p in {0,1} is dropped
};

struct LinearFit {
  double beta0 = 0.0, beta1 = 0.0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
};

struct SigmoidFit {
  double L = 0.0, r = 0.0, m_t = 0.0;
  double r_squared = 0.0;
  double mse = 0.0;
};

enum class SigmoidShape { Increasing, Decreasing };

struct PowerFit {
  double log_k = 0.0, alpha1 = 0.0, alpha2 = 0.0;
  double r_squared_log = 0.0;
  double r_squared_raw = 0.0;
  int32_t rows_used = 0;
  int32_t rows_excluded = 0;  // non-positive m_c
};

struct PowerRow {
  double n = 0.0, m1 = 0.0, m_c = 0.0;
};

struct Correlation {
  double rho = 0.0;
  double slope = 0.0;      // OLS of m_t on m_c
  double intercept = 0.0;
  int32_t cells = 0;
};

// Grouped by (n, m1); only proven rows enter the proportions.
std::vector<ProportionCurve> satisfaction_proportions(std::span<const RunRecord> ledger);

// OLS on (m, logit p) over interior points. Throws ValidationError with
// fewer than 2 interior points.
LogitFit logit_fit(const ProportionCurve& curve);

// Plain OLS with adjusted R^2; needs >= 3 points and non-constant x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Exhaustive grid search minimizing MSE of L / (1 + exp(-+r (m - m_t))):
// L in [0.5, 1.5] x max(value), 41 steps; r in [0.05, 3], 60 steps; m_t over
// the m-range at unit steps, then refined once at 0.1 resolution around the
// best cell. Throws ValidationError when all values are equal.
SigmoidFit sigmoid_fit_grid(std::span<const std::pair<double, double>> points, SigmoidShape shape);

// Multilinear OLS of log(m_c) on (1, log n, log m1). Rows with m_c <= 0 are
// excluded and counted; throws ValidationError on rank deficiency or fewer
// than 4 usable rows.
PowerFit power_model_fit(std::span<const PowerRow> rows);

// m / (n^alpha1 * m1^alpha2).
double phase_parameter(double n, double m1, double m, const PowerFit& fit);

// Pearson rho and the OLS line of map_b values on map_a values over shared
// cells; needs >= 3 shared cells.
Correlation critical_correlation(const std::map<CellKey, double>& map_a,
                                 const std::map<CellKey, double>& map_b);

// Per-cell mean series over proven rows: (m, mean B&B nodes) and
// (m, mean ROTS success rate).
struct CellSeries {
  CellKey cell;
  std::vector<std::pair<double, double>> points;
};
std::vector<CellSeries> mean_bnb_nodes(std::span<const RunRecord> ledger);
std::vector<CellSeries> mean_rots_success(std::span<const RunRecord> ledger);

// Everything the plots and the fit CSVs need, computed in one pass.
struct AnalysisResult {
  std::vector<ProportionCurve> curves;
  std::vector<std::pair<CellKey, LogitFit>> logit_fits;
  std::vector<std::pair<int32_t, LinearFit>> linear_by_n;  // m_c as a function of m1
  std::optional<PowerFit> power;
  std::vector<CellSeries> effort_series;
  std::vector<CellSeries> success_series;
  std::vector<std::pair<CellKey, SigmoidFit>> effort_fits;
  std::vector<std::pair<CellKey, SigmoidFit>> success_fits;
  std::optional<Correlation> effort_correlation;   // m_c vs m_t of B&B effort
  std::optional<Correlation> success_correlation;  // m_c vs m_t of ROTS success
};

AnalysisResult analyze_ledger(std::span<const RunRecord> ledger);

// Fit summary CSVs (one row per cell per model) under `dir`.
void write_analysis_csv(const AnalysisResult& result, const std::filesystem::path& dir);
// Rebuilds the bundle from the CSVs written by write_analysis_csv.
AnalysisResult read_analysis_csv(const std::filesystem::path& dir);

// One SVG per figure; returns the paths written. Deterministic bytes.
std::vector<std::filesystem::path> emit_plots(const AnalysisResult& result,
                                              const std::filesystem::path& dir);

// Streams m_c and m_t maps out of an AnalysisResult.
std::map<CellKey, double> mc_map(const AnalysisResult& result);

}  // namespace qapsat
