// Fit summaries as CSV, and the reverse parse used by the plot subcommand.

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qapsat/analysis.hpp"

namespace qapsat {
namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write " + p.string());
  return f;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p,
                                               const std::string& expected_header) {
  std::ifstream f(p);
  if (!f) throw ValidationError("cannot open " + p.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != expected_header)
        throw ValidationError(p.string() + ": unexpected header '" + line + "'");
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

void write_analysis_csv(const AnalysisResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  {
    auto f = open_out(dir / "proportions.csv");
    f << "n,m1,m,proportion,count\n";
    for (const ProportionCurve& c : result.curves)
      for (const ProportionPoint& p : c.points)
        f << c.cell.n << ',' << c.cell.m1 << ',' << p.m << ',' << fmt(p.proportion) << ','
          << p.count << '\n';
  }
  {
    auto f = open_out(dir / "logit_fits.csv");
    f << "n,m1,beta0,beta1,m_c,r_squared,points_used\n";
    for (const auto& [cell, fit] : result.logit_fits)
      f << cell.n << ',' << cell.m1 << ',' << fmt(fit.beta0) << ',' << fmt(fit.beta1) << ','
        << fmt(fit.m_c) << ',' << fmt(fit.r_squared) << ',' << fit.points_used << '\n';
  }
  {
    auto f = open_out(dir / "linear_fits.csv");
    f << "n,beta0,beta1,r_squared,adj_r_squared\n";
    for (const auto& [n, fit] : result.linear_by_n)
      f << n << ',' << fmt(fit.beta0) << ',' << fmt(fit.beta1) << ',' << fmt(fit.r_squared) << ','
        << fmt(fit.adj_r_squared) << '\n';
  }
  {
    auto f = open_out(dir / "power_fit.csv");
    f << "log_k,k,alpha1,alpha2,r_squared_log,r_squared_raw,rows_used,rows_excluded\n";
    if (result.power) {
      const PowerFit& p = *result.power;
      f << fmt(p.log_k) << ',' << fmt(std::exp(p.log_k)) << ',' << fmt(p.alpha1) << ','
        << fmt(p.alpha2) << ',' << fmt(p.r_squared_log) << ',' << fmt(p.r_squared_raw) << ','
        << p.rows_used << ',' << p.rows_excluded << '\n';
    }
  }
  const auto write_series = [&](const std::filesystem::path& p,
                                const std::vector<CellSeries>& series) {
    auto f = open_out(p);
    f << "n,m1,m,value\n";
    for (const CellSeries& s : series)
      for (const auto& [m, v] : s.points)
        f << s.cell.n << ',' << s.cell.m1 << ',' << fmt(m) << ',' << fmt(v) << '\n';
  };
  write_series(dir / "effort_series.csv", result.effort_series);
  write_series(dir / "success_series.csv", result.success_series);

  const auto write_sigmoids = [&](const std::filesystem::path& p,
                                  const std::vector<std::pair<CellKey, SigmoidFit>>& fits) {
    auto f = open_out(p);
    f << "n,m1,L,r,m_t,r_squared,mse\n";
    for (const auto& [cell, fit] : fits)
      f << cell.n << ',' << cell.m1 << ',' << fmt(fit.L) << ',' << fmt(fit.r) << ','
        << fmt(fit.m_t) << ',' << fmt(fit.r_squared) << ',' << fmt(fit.mse) << '\n';
  };
  write_sigmoids(dir / "sigmoid_effort.csv", result.effort_fits);
  write_sigmoids(dir / "sigmoid_success.csv", result.success_fits);

  {
    auto f = open_out(dir / "correlations.csv");
    f << "pair,rho,slope,intercept,cells\n";
    if (result.effort_correlation) {
      const Correlation& c = *result.effort_correlation;
      f << "mc_vs_mt_effort," << fmt(c.rho) << ',' << fmt(c.slope) << ',' << fmt(c.intercept)
        << ',' << c.cells << '\n';
    }
    if (result.success_correlation) {
      const Correlation& c = *result.success_correlation;
      f << "mc_vs_mt_success," << fmt(c.rho) << ',' << fmt(c.slope) << ',' << fmt(c.intercept)
        << ',' << c.cells << '\n';
    }
  }
}

AnalysisResult read_analysis_csv(const std::filesystem::path& dir) {
  AnalysisResult res;

  {
    std::map<CellKey, ProportionCurve> curves;
    for (const auto& f : read_csv(dir / "proportions.csv", "n,m1,m,proportion,count")) {
      const CellKey cell{std::stoi(f[0]), std::stoi(f[1])};
      auto& c = curves[cell];
      c.cell = cell;
      c.points.push_back({std::stoi(f[2]), std::stod(f[3]), std::stoi(f[4])});
    }
    for (auto& [cell, c] : curves) res.curves.push_back(std::move(c));
  }
  for (const auto& f : read_csv(dir / "logit_fits.csv", "n,m1,beta0,beta1,m_c,r_squared,points_used")) {
    LogitFit fit;
    fit.beta0 = std::stod(f[2]);
    fit.beta1 = std::stod(f[3]);
    fit.m_c = std::stod(f[4]);
    fit.r_squared = std::stod(f[5]);
    fit.points_used = std::stoi(f[6]);
    res.logit_fits.push_back({{std::stoi(f[0]), std::stoi(f[1])}, fit});
  }
  for (const auto& f : read_csv(dir / "linear_fits.csv", "n,beta0,beta1,r_squared,adj_r_squared")) {
    LinearFit fit;
    fit.beta0 = std::stod(f[1]);
    fit.beta1 = std::stod(f[2]);
    fit.r_squared = std::stod(f[3]);
    fit.adj_r_squared = std::stod(f[4]);
    res.linear_by_n.push_back({std::stoi(f[0]), fit});
  }
  for (const auto& f : read_csv(dir / "power_fit.csv",
                                "log_k,k,alpha1,alpha2,r_squared_log,r_squared_raw,rows_used,rows_excluded")) {
    PowerFit p;
    p.log_k = std::stod(f[0]);
    p.alpha1 = std::stod(f[2]);
    p.alpha2 = std::stod(f[3]);
    p.r_squared_log = std::stod(f[4]);
    p.r_squared_raw = std::stod(f[5]);
    p.rows_used = std::stoi(f[6]);
    p.rows_excluded = std::stoi(f[7]);
    res.power = p;
  }
  const auto read_series = [&](const std::filesystem::path& p, std::vector<CellSeries>& out) {
    std::map<CellKey, CellSeries> acc;
    for (const auto& f : read_csv(p, "n,m1,m,value")) {
      const CellKey cell{std::stoi(f[0]), std::stoi(f[1])};
      auto& s = acc[cell];
      s.cell = cell;
      s.points.push_back({std::stod(f[2]), std::stod(f[3])});
    }
    for (auto& [cell, s] : acc) out.push_back(std::move(s));
  };
  read_series(dir / "effort_series.csv", res.effort_series);
  read_series(dir / "success_series.csv", res.success_series);

  const auto read_sigmoids = [&](const std::filesystem::path& p,
                                 std::vector<std::pair<CellKey, SigmoidFit>>& out) {
    for (const auto& f : read_csv(p, "n,m1,L,r,m_t,r_squared,mse")) {
      SigmoidFit fit;
      fit.L = std::stod(f[2]);
      fit.r = std::stod(f[3]);
      fit.m_t = std::stod(f[4]);
      fit.r_squared = std::stod(f[5]);
      fit.mse = std::stod(f[6]);
      out.push_back({{std::stoi(f[0]), std::stoi(f[1])}, fit});
    }
  };
  read_sigmoids(dir / "sigmoid_effort.csv", res.effort_fits);
  read_sigmoids(dir / "sigmoid_success.csv", res.success_fits);

  for (const auto& f : read_csv(dir / "correlations.csv", "pair,rho,slope,intercept,cells")) {
    Correlation c;
    c.rho = std::stod(f[1]);
    c.slope = std::stod(f[2]);
    c.intercept = std::stod(f[3]);
    c.cells = std::stoi(f[4]);
    if (f[0] == "mc_vs_mt_effort") res.effort_correlation = c;
    if (f[0] == "mc_vs_mt_success") res.success_correlation = c;
  }
  return res;
}

}  // namespace qapsat
