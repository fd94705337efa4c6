#include "qlattice/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace qlattice::report {

namespace {

std::string printf_double(const char *fmt, double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), fmt, v);
  return buf.data();
}

std::string escape_xml(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char *, 8> kColors = {
    "#000000", "#1f77b4", "#d62728", "#2ca02c",
    "#9467bd", "#ff7f0e", "#8c564b", "#7f7f7f"};

} // namespace

std::string format_number(double v) { return printf_double("%.12g", v); }

std::string format_exact(double v) { return printf_double("%.17g", v); }

void write_csv_row(std::ostream &out, const std::vector<std::string> &cells) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c != 0)
      out << ',';
    out << cells[c];
  }
  out << '\n';
}

void write_svg_chart(std::ostream &out, const Chart &chart) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 150, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  auto ty = [&](double y) { return chart.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!chart.log_y || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto &s : chart.series)
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!usable(s.x[k], s.y[k]))
        continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, ty(s.y[k]));
      y1 = std::max(y1, ty(s.y[k]));
    }
  if (!std::isfinite(x0)) {
    x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  }
  if (x1 == x0)
    x1 = x0 + 1;
  if (y1 == y0)
    y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
  auto py = [&](double y) { return top + (1 - (ty(y) - y0) / (y1 - y0)) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << escape_xml(chart.title) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4;
    const double yv = y0 + (y1 - y0) * t / 4;
    const double xp = left + plot_w * t / 4;
    const double yp = top + plot_h * (1 - t / 4.0);
    out << "<text x=\"" << xp << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 1000) / 1000)
        << "</text>\n";
    const double label = chart.log_y ? std::pow(10.0, yv) : yv;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", label);
    out << "<text x=\"" << left - 6 << "\" y=\"" << yp + 4
        << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">" << escape_xml(chart.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(chart.y_label)
      << (chart.log_y ? " (log)" : "") << "</text>\n";

  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const auto &s = chart.series[si];
    const char *color = kColors[si % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!usable(s.x[k], s.y[k]))
        continue;
      if (!first)
        out << ' ';
      out << px(s.x[k]) << ',' << py(s.y[k]);
      first = false;
    }
    out << "\"/>\n";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
      if (usable(s.x[k], s.y[k]))
        out << "<circle cx=\"" << px(s.x[k]) << "\" cy=\"" << py(s.y[k])
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(si);
    out << "<line x1=\"" << left + plot_w + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << left + plot_w + 30 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w + 36 << "\" y=\"" << ly << "\">"
        << escape_xml(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

} // namespace qlattice::report
