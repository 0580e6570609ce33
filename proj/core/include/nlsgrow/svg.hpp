#pragma once

#include <string>
#include <vector>

namespace nls {

/// Minimal dependency-free SVG line plots for run reports.
struct SvgSeries {
  std::string name;
  std::vector<double> x, y;
};

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<SvgSeries>& series,
                         bool logx = false, bool logy = false);

}  // namespace nls
