#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace roundness::report {

/// Shortest round-tripping decimal form ("%.17g").
std::string real17(double v);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Minimal SVG 1.1 line chart: one polyline per series, linear axes with
/// numeric tick labels, top-right legend.
void write_svg_chart(std::ostream& os, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series);

}  // namespace roundness::report
