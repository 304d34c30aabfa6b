#include "hubring/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hubring/common.hpp"

namespace hubring::svg {

namespace {

constexpr double kWidth = 660.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  double clamp01(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(std::abs(lo), 1.0) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

// Tick spacing 1/2/5 * 10^k giving 4-8 ticks.
std::vector<double> ticks(const Range& r) {
  const double span = r.hi - r.lo;
  if (!(span > 0.0) || !std::isfinite(span)) return {r.lo};
  double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
  for (const double scale : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * scale) <= 8.0) {
      step *= scale;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + step * 1e-9; v += step) {
    out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

std::ofstream open_svg(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

void draw_frame(std::ofstream& out, const std::string& title, const std::string& x_label,
                const std::string& y_label, const Range& xr, const Range& yr) {
  const double w = kWidth - kLeft - kRight;
  const double h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + xr.clamp01(x) * w; };
  auto py = [&](double y) { return kTop + (1.0 - yr.clamp01(y)) * h; };

  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">\n";
  for (const double tx : ticks(xr)) {
    out << "<line x1=\"" << px(tx) << "\" y1=\"" << kTop + h << "\" x2=\"" << px(tx) << "\" y2=\""
        << kTop + h + 5 << "\" stroke=\"#202020\"/>\n"
        << "<text x=\"" << px(tx) << "\" y=\"" << kTop + h + 18
        << "\" text-anchor=\"middle\">" << num(tx) << "</text>\n";
  }
  for (const double ty : ticks(yr)) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(ty) << "\" x2=\"" << kLeft << "\" y2=\""
        << py(ty) << "\" stroke=\"#202020\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(ty) + 4
        << "\" text-anchor=\"end\">" << num(ty) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << py(ty) << "\" x2=\"" << kLeft + w << "\" y2=\""
        << py(ty) << "\" stroke=\"#e0e0e0\" stroke-width=\"0.6\"/>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"#202020\"/>\n";
  out << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << kTop - 14
      << "\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + h / 2 << ")\">" << y_label << "</text>\n";
  out << "</g>\n";
}

// Diverging blue-white-red for signed data, light-to-dark sequential otherwise.
std::string color_for(double t, bool diverging) {
  auto channel = [](double a, double b, double s) {
    return static_cast<int>(std::lround(a + (b - a) * s));
  };
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (diverging) {
    if (t < 0.5) {
      const double s = t / 0.5;
      r = channel(33, 247, s);
      g = channel(102, 247, s);
      b = channel(172, 247, s);
    } else {
      const double s = (t - 0.5) / 0.5;
      r = channel(247, 178, s);
      g = channel(247, 24, s);
      b = channel(247, 43, s);
    }
  } else {
    r = channel(255, 12, t);
    g = channel(250, 44, t);
    b = channel(235, 132, t);
  }
  char buffer[10];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", r, g, b);
  return buffer;
}

}  // namespace

void LinePlot::write(const std::filesystem::path& path) const {
  double x_lo = std::numeric_limits<double>::max(), x_hi = std::numeric_limits<double>::lowest();
  double y_lo = x_lo, y_hi = x_hi;
  for (const Series& s : series) {
    for (const double v : s.x) {
      x_lo = std::min(x_lo, v);
      x_hi = std::max(x_hi, v);
    }
    for (const double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (series.empty() || x_lo > x_hi) throw std::invalid_argument("line plot has no data");
  const Range xr{x_lo, x_hi};
  const Range yr = padded(y_lo, y_hi);

  auto out = open_svg(path);
  draw_frame(out, title, x_label, y_label, xr, yr);

  const double w = kWidth - kLeft - kRight;
  const double h = kHeight - kTop - kBottom;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      out << num(kLeft + xr.clamp01(s.x[k]) * w) << "," << num(kTop + (1.0 - yr.clamp01(s.y[k])) * h)
          << " ";
    }
    out << "\"/>\n";
  }
  double legend_y = kTop + 14;
  for (const Series& s : series) {
    out << "<line x1=\"" << kLeft + w - 120 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
        << kLeft + w - 96 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + w - 90 << "\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void Heatmap::write(const std::filesystem::path& path) const {
  if (values.empty() || values.front().empty()) {
    throw std::invalid_argument("heatmap has no data");
  }
  const std::size_t rows = values.size();
  const std::size_t cols = values.front().size();

  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (const auto& row : values) {
    for (const double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (diverging) {
    const double a = std::max({std::abs(lo), std::abs(hi), 1e-30});
    lo = -a;
    hi = a;
  } else if (!(hi > lo)) {
    hi = lo + 1.0;
  }

  auto out = open_svg(path);
  const double w = kWidth - kLeft - kRight - 48;  // room for the colorbar
  const double h = kHeight - kTop - kBottom;
  const Range xr{x_min, x_max};
  const Range yr{y_min, y_max};

  const double cw = w / static_cast<double>(cols);
  const double ch = h / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double t = (values[r][c] - lo) / (hi - lo);
      out << "<rect x=\"" << num(kLeft + cw * static_cast<double>(c)) << "\" y=\""
          << num(kTop + h - ch * static_cast<double>(r + 1)) << "\" width=\"" << num(cw + 0.5)
          << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << color_for(t, diverging)
          << "\"/>\n";
    }
  }

  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">\n";
  for (const double tx : ticks(xr)) {
    const double px = kLeft + xr.clamp01(tx) * w;
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + h << "\" x2=\"" << px << "\" y2=\""
        << kTop + h + 5 << "\" stroke=\"#202020\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << kTop + h + 18 << "\" text-anchor=\"middle\">"
        << num(tx) << "</text>\n";
  }
  for (const double ty : ticks(yr)) {
    const double py = kTop + (1.0 - yr.clamp01(ty)) * h;
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\""
        << py << "\" stroke=\"#202020\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << num(ty)
        << "</text>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"#202020\"/>\n";
  out << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << kTop - 14
      << "\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + h / 2 << ")\">" << y_label << "</text>\n";

  // Colorbar.
  const double bar_x = kLeft + w + 16;
  const int bar_steps = 64;
  for (int s = 0; s < bar_steps; ++s) {
    const double t = (s + 0.5) / bar_steps;
    out << "<rect x=\"" << bar_x << "\" y=\"" << num(kTop + h * (1.0 - (s + 1.0) / bar_steps))
        << "\" width=\"14\" height=\"" << num(h / bar_steps + 0.5) << "\" fill=\""
        << color_for(t, diverging) << "\"/>\n";
  }
  out << "<rect x=\"" << bar_x << "\" y=\"" << kTop << "\" width=\"14\" height=\"" << h
      << "\" fill=\"none\" stroke=\"#202020\"/>\n";
  out << "<text x=\"" << bar_x - 2 << "\" y=\"" << kTop + h + 16 << "\">" << num(lo)
      << "</text>\n";
  out << "<text x=\"" << bar_x - 2 << "\" y=\"" << kTop - 4 << "\">" << num(hi) << "</text>\n";
  out << "</g>\n</svg>\n";
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace hubring::svg
