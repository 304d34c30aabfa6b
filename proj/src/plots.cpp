#include "hubring/plots.hpp"

#include <algorithm>
#include <string>

#include "hubring/svg_plot.hpp"

namespace hubring {

namespace {

constexpr const char* kUpColor = "#1f77b4";
constexpr const char* kDnColor = "#ff7f0e";

svg::LinePlot charge_plot(const ScenarioRun& run, const std::string& title) {
  svg::LinePlot plot;
  plot.title = title;
  plot.x_label = "t [1/J]";
  plot.y_label = "Q(t)";
  svg::Series up{"Q_up", kUpColor, {}, {}};
  svg::Series dn{"Q_dn", kDnColor, {}, {}};
  for (const TimeSeriesRecord& r : run.records) {
    up.x.push_back(r.t);
    up.y.push_back(r.charge_up);
    dn.x.push_back(r.t);
    dn.y.push_back(r.charge_dn);
  }
  plot.series = {up, dn};
  return plot;
}

svg::Heatmap density_map(const ScenarioRun& run, const std::string& title) {
  svg::Heatmap map;
  map.title = title;
  map.x_label = "t [1/J]";
  map.y_label = "site";
  map.x_min = run.records.front().t;
  map.x_max = run.records.back().t;
  const std::size_t sites = run.records.front().n.size();
  map.y_min = 0.5;
  map.y_max = static_cast<double>(sites) + 0.5;
  map.values.assign(sites, std::vector<double>(run.records.size(), 0.0));
  for (std::size_t m = 0; m < run.records.size(); ++m) {
    for (std::size_t i = 0; i < sites; ++i) map.values[i][m] = run.records[m].n[i];
  }
  return map;
}

svg::Heatmap scan_map(const AlphaScanResult& result, Spin spin, const std::string& title) {
  svg::Heatmap map;
  map.title = title;
  map.x_label = "t [1/J]";
  map.y_label = "alpha";
  map.diverging = true;
  const auto& records = result.points.front().run.records;
  map.x_min = records.front().t;
  map.x_max = records.back().t;
  map.y_min = result.points.front().alpha;
  map.y_max = result.points.back().alpha;
  // Display-only stride on the time axis; the data files keep every sample.
  const std::size_t stride = std::max<std::size_t>(1, records.size() / 250);
  const std::size_t cols = (records.size() + stride - 1) / stride;
  map.values.assign(result.points.size(), std::vector<double>(cols, 0.0));
  for (std::size_t p = 0; p < result.points.size(); ++p) {
    const auto& rows = result.points[p].run.records;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& r = rows[std::min(c * stride, rows.size() - 1)];
      map.values[p][c] = spin == Spin::Up ? r.charge_up : r.charge_dn;
    }
  }
  return map;
}

std::string alpha_text(const ScenarioRun& run) { return "alpha = " + run.label.substr(6); }

}  // namespace

void emit_barrier_comparison_plots(const std::filesystem::path& dir,
                                   const BarrierComparisonResult& result) {
  charge_plot(result.asymmetric, "Transferred charge, " + alpha_text(result.asymmetric))
      .write(dir / "barrier-comparison_a.svg");
  charge_plot(result.symmetric, "Transferred charge, " + alpha_text(result.symmetric))
      .write(dir / "barrier-comparison_b.svg");
  density_map(result.asymmetric, "Site density, " + alpha_text(result.asymmetric))
      .write(dir / "barrier-comparison_c.svg");
  density_map(result.symmetric, "Site density, " + alpha_text(result.symmetric))
      .write(dir / "barrier-comparison_d.svg");
}

void emit_direction_flip_plots(const std::filesystem::path& dir,
                               const std::vector<ScenarioRun>& runs) {
  char panel = 'a';
  for (const ScenarioRun& run : runs) {
    charge_plot(run, "Transferred charge, " + run.label)
        .write(dir / ("direction-flip_" + std::string(1, panel) + ".svg"));
    ++panel;
  }
}

void emit_alpha_scan_plots(const std::filesystem::path& dir,
                           const std::vector<AlphaScanResult>& results) {
  char panel = 'a';
  for (const AlphaScanResult& result : results) {
    if (result.points.empty()) continue;
    const std::string config = bias_name(result.config);
    scan_map(result, Spin::Up, "Q_up(t, alpha), config " + config)
        .write(dir / ("alpha-scan_" + std::string(1, panel) + ".svg"));
    ++panel;
    scan_map(result, Spin::Dn, "Q_dn(t, alpha), config " + config)
        .write(dir / ("alpha-scan_" + std::string(1, panel) + ".svg"));
    ++panel;
  }
}

}  // namespace hubring
