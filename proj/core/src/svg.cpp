#include "nlsgrow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nls {

namespace {

constexpr int kWidth = 820, kHeight = 520;
constexpr int kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<SvgSeries>& series, bool logx,
                         bool logy) {
  auto tx = [logx](double v) { return logx ? std::log10(v) : v; };
  auto ty = [logy](double v) { return logy ? std::log10(v) : v; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((logx && !(s.x[i] > 0)) || (logy && !(s.y[i] > 0))) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - (ty(v) - ymin) / (ymax - ymin)) * ph; };

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"monospace\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\">"
      << title << "</text>\n";

  // axes and ticks
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    const double gx = kLeft + pw * i / 5.0;
    const double gy = kTop + ph - ph * i / 5.0;
    out << "<line x1=\"" << gx << "\" y1=\"" << kTop + ph << "\" x2=\"" << gx
        << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << gx << "\" y=\"" << kTop + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"11\">"
        << fmt(logx ? std::pow(10.0, fx) : fx) << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << gy << "\" x2=\"" << kLeft
        << "\" y2=\"" << gy << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << gy + 4
        << "\" text-anchor=\"end\" font-size=\"11\">"
        << fmt(logy ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
      << kTop + ph / 2 << ")\">" << ylabel << "</text>\n";

  int color = 0;
  int legend_y = kTop + 14;
  for (const auto& s : series) {
    const char* c = kPalette[color % 6];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((logx && !(s.x[i] > 0)) || (logy && !(s.y[i] > 0))) continue;
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "<polyline points=\"" << pts.str()
        << "\" fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << kLeft + pw - 8 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << c << "\">"
        << s.name << "</text>\n";
    legend_y += 16;
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace nls
