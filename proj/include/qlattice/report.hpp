#pragma once

// CSV formatting and a minimal self-contained SVG line chart.

#include <iosfwd>
#include <string>
#include <vector>

namespace qlattice::report {

/// 12 significant digits ("%.12g"); "inf", "-inf", "nan" for non-finite.
[[nodiscard]] std::string format_number(double v);
/// Round-trip precision ("%.17g").
[[nodiscard]] std::string format_exact(double v);

void write_csv_row(std::ostream &out, const std::vector<std::string> &cells);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

/// Points with non-finite coordinates (or y <= 0 on a log axis) are skipped.
void write_svg_chart(std::ostream &out, const Chart &chart);

} // namespace qlattice::report
