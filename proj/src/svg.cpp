#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace frozenspec::detail {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-300) {
      const double pad = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string svg_plot(const std::vector<PlotPanel>& panels, int width, int panel_height) {
  const double left = 70, right = 20, top = 30, bottom = 45;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(1, panels.size()));
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double y0 = static_cast<double>(p) * panel_height;
    const double pw = width - left - right;
    const double ph = panel_height - top - bottom;
    Range xr, yr;
    for (const auto& s : panel.series)
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
          xr.add(s.x[i]);
          yr.add(s.y[i]);
        }
    xr.settle();
    yr.settle();
    auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return y0 + top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    os << "<g>\n<text x=\"" << num(left) << "\" y=\"" << num(y0 + 18) << "\" font-size=\"13\">"
       << escape(panel.title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(y0 + top) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
      const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
      os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(y0 + top + ph + 14) << "\" text-anchor=\"middle\">"
         << tick(xv) << "</text>\n";
      os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
         << "</text>\n";
      os << "<line x1=\"" << num(left) << "\" x2=\"" << num(left + pw) << "\" y1=\"" << num(sy(yv)) << "\" y2=\""
         << num(sy(yv)) << "\" stroke=\"#ddd\"/>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(y0 + panel_height - 8)
       << "\" text-anchor=\"middle\">" << escape(panel.xlabel) << "</text>\n";
    os << "<text x=\"14\" y=\"" << num(y0 + top + ph / 2) << "\" transform=\"rotate(-90 14 " << num(y0 + top + ph / 2)
       << ")\" text-anchor=\"middle\">" << escape(panel.ylabel) << "</text>\n";

    double legend_y = y0 + top + 14;
    for (const auto& s : panel.series) {
      const std::size_t n = std::min(s.x.size(), s.y.size());
      if (s.markers) {
        for (std::size_t i = 0; i < n; ++i)
          if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
            os << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i])) << "\" r=\"3\" fill=\""
               << s.color << "\"/>\n";
      } else {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          os << (first ? "" : " ") << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
          first = false;
        }
        os << "\"/>\n";
      }
      if (!s.label.empty()) {
        os << "<text x=\"" << num(left + pw - 8) << "\" y=\"" << num(legend_y) << "\" text-anchor=\"end\" fill=\""
           << s.color << "\">" << escape(s.label) << "</text>\n";
        legend_y += 14;
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace frozenspec::detail
