// Minimal SVG renderer for the six figure analogues. Pure text output with
// fixed number formatting, so identical inputs give identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qapsat/analysis.hpp"

namespace qapsat {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
  bool line = true;
};

struct Panel {
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
  bool logy = false;
  double vline = std::numeric_limits<double>::quiet_NaN();
};

constexpr double kPw = 330, kPh = 260;          // panel cell size
constexpr double kMl = 52, kMr = 14, kMt = 26, kMb = 38;  // margins inside a cell

void render_panel(std::ostringstream& svg, const Panel& panel, double ox, double oy) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : panel.series)
    for (auto [x, y] : s.pts) {
      if (panel.logy && y <= 0) continue;
      const double yy = panel.logy ? std::log10(y) : y;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, yy);
      ymax = std::max(ymax, yy);
    }
  if (!(xmin <= xmax)) return;  // nothing plottable
  if (xmin == xmax) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymin == ymax) {
    ymin -= 1;
    ymax += 1;
  }
  const double gx = ox + kMl, gy = oy + kMt;
  const double gw = kPw - kMl - kMr, gh = kPh - kMt - kMb;
  const auto X = [&](double x) { return gx + (x - xmin) / (xmax - xmin) * gw; };
  const auto Y = [&](double y) {
    const double yy = panel.logy ? std::log10(y) : y;
    return gy + gh - (yy - ymin) / (ymax - ymin) * gh;
  };

  svg << "<rect x='" << num(gx) << "' y='" << num(gy) << "' width='" << num(gw) << "' height='"
      << num(gh) << "' fill='none' stroke='#444' stroke-width='1'/>\n";
  svg << "<text x='" << num(ox + kPw / 2) << "' y='" << num(oy + 16)
      << "' font-size='12' text-anchor='middle' font-family='sans-serif'>" << panel.title
      << "</text>\n";
  svg << "<text x='" << num(gx + gw / 2) << "' y='" << num(oy + kPh - 8)
      << "' font-size='10' text-anchor='middle' font-family='sans-serif'>" << panel.xlabel
      << "</text>\n";
  svg << "<text x='" << num(ox + 12) << "' y='" << num(gy + gh / 2)
      << "' font-size='10' text-anchor='middle' font-family='sans-serif' transform='rotate(-90 "
      << num(ox + 12) << " " << num(gy + gh / 2) << ")'>" << panel.ylabel << "</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fyv = ymin + (ymax - ymin) * t / 4.0;
    const double px = X(fx);
    const double py = gy + gh - gh * t / 4.0;
    svg << "<line x1='" << num(px) << "' y1='" << num(gy + gh) << "' x2='" << num(px) << "' y2='"
        << num(gy + gh + 4) << "' stroke='#444'/>\n";
    svg << "<text x='" << num(px) << "' y='" << num(gy + gh + 15)
        << "' font-size='9' text-anchor='middle' font-family='sans-serif'>" << tick_label(fx)
        << "</text>\n";
    svg << "<line x1='" << num(gx - 4) << "' y1='" << num(py) << "' x2='" << num(gx) << "' y2='"
        << num(py) << "' stroke='#444'/>\n";
    svg << "<text x='" << num(gx - 6) << "' y='" << num(py + 3)
        << "' font-size='9' text-anchor='end' font-family='sans-serif'>"
        << tick_label(panel.logy ? std::pow(10.0, fyv) : fyv) << "</text>\n";
  }

  if (std::isfinite(panel.vline) && panel.vline >= xmin && panel.vline <= xmax)
    svg << "<line x1='" << num(X(panel.vline)) << "' y1='" << num(gy) << "' x2='"
        << num(X(panel.vline)) << "' y2='" << num(gy + gh)
        << "' stroke='#999' stroke-dasharray='4 3'/>\n";

  int color = 0;
  for (const Series& s : panel.series) {
    const char* stroke = kPalette[color % kPaletteSize];
    ++color;
    if (s.line && s.pts.size() > 1) {
      svg << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.3' points='";
      for (auto [x, y] : s.pts) {
        if (panel.logy && y <= 0) continue;
        svg << num(X(x)) << "," << num(Y(y)) << " ";
      }
      svg << "'/>\n";
    }
    for (auto [x, y] : s.pts) {
      if (panel.logy && y <= 0) continue;
      svg << "<circle cx='" << num(X(x)) << "' cy='" << num(Y(y)) << "' r='1.8' fill='" << stroke
          << "'/>\n";
    }
    if (!s.label.empty()) {
      const double ly = gy + 12 + 11 * (color - 1);
      if (ly < gy + gh - 4)
        svg << "<text x='" << num(gx + gw - 4) << "' y='" << num(ly)
            << "' font-size='9' text-anchor='end' font-family='sans-serif' fill='" << stroke
            << "'>" << s.label << "</text>\n";
    }
  }
}

void write_figure(const std::filesystem::path& path, const std::string& title,
                  const std::vector<Panel>& panels, int cols) {
  const int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
  const double width = kPw * cols, height = kPh * rows + 24;
  std::ostringstream svg;
  svg << "<?xml version='1.0' encoding='UTF-8'?>\n";
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(width) << "' height='"
      << num(height) << "' viewBox='0 0 " << num(width) << " " << num(height) << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << num(width / 2)
      << "' y='16' font-size='14' text-anchor='middle' font-family='sans-serif'>" << title
      << "</text>\n";
  for (size_t i = 0; i < panels.size(); ++i) {
    const double ox = kPw * static_cast<double>(i % static_cast<size_t>(cols));
    const double oy = 24 + kPh * static_cast<double>(i / static_cast<size_t>(cols));
    render_panel(svg, panels[i], ox, oy);
  }
  svg << "</svg>\n";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << svg.str();
}

// One panel per dimension, one series per m1.
std::vector<Panel> facet_by_n(const std::vector<CellSeries>& series, const std::string& xlabel,
                              const std::string& ylabel, bool logy) {
  std::map<int32_t, Panel> panels;
  for (const CellSeries& s : series) {
    Panel& p = panels[s.cell.n];
    p.title = "n = " + std::to_string(s.cell.n);
    p.xlabel = xlabel;
    p.ylabel = ylabel;
    p.logy = logy;
    p.series.push_back({"m1=" + std::to_string(s.cell.m1), s.points, true});
  }
  std::vector<Panel> out;
  for (auto& [n, p] : panels) out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(const AnalysisResult& result,
                                              const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  if (result.curves.empty()) {
    std::cerr << "qapsat: no proportion data; no plots written\n";
    return written;
  }
  std::filesystem::create_directories(dir);

  {  // satisfaction proportion vs m, faceted by n
    std::vector<CellSeries> series;
    for (const ProportionCurve& c : result.curves) {
      CellSeries s;
      s.cell = c.cell;
      for (const ProportionPoint& p : c.points)
        s.points.push_back({static_cast<double>(p.m), p.proportion});
      series.push_back(std::move(s));
    }
    const auto panels = facet_by_n(series, "m (flow clauses)", "proportion satisfied", false);
    const auto path = dir / "fig2_proportions.svg";
    write_figure(path, "Proportion of satisfied instances", panels, 3);
    written.push_back(path);
  }

  {  // m_c against m1 and against n
    Panel left, right;
    left.title = "critical m_c vs m1";
    left.xlabel = "m1 (distance clauses)";
    left.ylabel = "m_c";
    std::map<int32_t, Series> by_n;
    std::map<int32_t, Series> by_m1;
    for (const auto& [cell, fit] : result.logit_fits) {
      if (!std::isfinite(fit.m_c)) continue;
      auto& sn = by_n[cell.n];
      sn.label = "n=" + std::to_string(cell.n);
      sn.pts.push_back({static_cast<double>(cell.m1), fit.m_c});
      auto& sm = by_m1[cell.m1];
      sm.label = "m1=" + std::to_string(cell.m1);
      sm.pts.push_back({static_cast<double>(cell.n), fit.m_c});
    }
    for (auto& [n, s] : by_n) {
      std::sort(s.pts.begin(), s.pts.end());
      left.series.push_back(std::move(s));
    }
    right.title = "critical m_c vs n";
    right.xlabel = "n (dimension)";
    right.ylabel = "m_c";
    for (auto& [m1, s] : by_m1) {
      std::sort(s.pts.begin(), s.pts.end());
      right.series.push_back(std::move(s));
    }
    const auto path = dir / "fig3_mc.svg";
    write_figure(path, "Critical clause count", {left, right}, 2);
    written.push_back(path);
  }

  if (result.power) {  // collapse onto the phase parameter
    Panel p;
    p.title = "collapse";
    p.xlabel = "m / (n^a1 * m1^a2)";
    p.ylabel = "proportion satisfied";
    p.vline = std::exp(result.power->log_k);
    Series all;
    all.line = false;
    for (const ProportionCurve& c : result.curves)
      for (const ProportionPoint& pt : c.points)
        all.pts.push_back({phase_parameter(c.cell.n, c.cell.m1, pt.m, *result.power),
                           pt.proportion});
    std::sort(all.pts.begin(), all.pts.end());
    p.series.push_back(std::move(all));
    const auto path = dir / "fig4_collapse.svg";
    write_figure(path, "Satisfaction vs phase parameter", {p}, 1);
    written.push_back(path);
  }

  if (!result.effort_series.empty()) {
    const auto panels =
        facet_by_n(result.effort_series, "m (flow clauses)", "mean B&B nodes", true);
    const auto path = dir / "fig5_effort.svg";
    write_figure(path, "Branch-and-bound effort", panels, 3);
    written.push_back(path);
  }

  if (!result.success_series.empty()) {
    const auto panels =
        facet_by_n(result.success_series, "m (flow clauses)", "ROTS success rate", false);
    const auto path = dir / "fig6_success.svg";
    write_figure(path, "Tabu search success rate", panels, 3);
    written.push_back(path);
  }

  {  // m_t against m_c for both effort and success
    std::vector<Panel> panels;
    const std::map<CellKey, double> mc = mc_map(result);
    const auto scatter = [&](const std::vector<std::pair<CellKey, SigmoidFit>>& fits,
                             const std::optional<Correlation>& corr, const std::string& title) {
      Panel p;
      p.title = title;
      p.xlabel = "m_c (satisfaction)";
      p.ylabel = "m_t (solver)";
      Series pts;
      pts.line = false;
      for (const auto& [cell, fit] : fits) {
        const auto it = mc.find(cell);
        if (it == mc.end() || !std::isfinite(it->second)) continue;
        pts.pts.push_back({it->second, fit.m_t});
      }
      std::sort(pts.pts.begin(), pts.pts.end());
      if (corr && !pts.pts.empty()) {
        Series line;
        line.label = "slope " + tick_label(corr->slope) + ", rho " + tick_label(corr->rho);
        const double x0 = pts.pts.front().first, x1 = pts.pts.back().first;
        line.pts = {{x0, corr->intercept + corr->slope * x0},
                    {x1, corr->intercept + corr->slope * x1}};
        p.series.push_back(std::move(line));
      }
      p.series.push_back(std::move(pts));
      return p;
    };
    if (!result.effort_fits.empty())
      panels.push_back(scatter(result.effort_fits, result.effort_correlation, "B&B effort"));
    if (!result.success_fits.empty())
      panels.push_back(scatter(result.success_fits, result.success_correlation, "ROTS success"));
    if (!panels.empty()) {
      const auto path = dir / "fig7_correlation.svg";
      write_figure(path, "Critical parameters: m_t vs m_c", panels, 2);
      written.push_back(path);
    }
  }

  return written;
}

}  // namespace qapsat
