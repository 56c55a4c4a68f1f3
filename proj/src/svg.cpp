#include "fieldroute/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace fieldroute {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
};

std::string escape(const std::string& s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

}  // namespace

std::string render_routes_svg(const io::PlotData& data) {
  double min_x = data.points.front().x, max_x = min_x;
  double min_y = data.points.front().y, max_y = min_y;
  for (const auto& p : data.points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  double w = max_x - min_x;
  double h = max_y - min_y;
  if (w <= 0) w = 1;
  if (h <= 0) h = 1;
  const double mx = 0.05 * w, my = 0.05 * h;
  const double vx = min_x - mx, vw = w + 2 * mx;
  const double vh = h + 2 * my;
  // Flip y: screen_y = (max_y + my) - y, so the box starts at 0.
  const double top = max_y + my;
  auto sx = [&](double x) { return num(x); };
  auto sy = [&](double y) { return num(top - y); };
  const double unit = std::max(vw, vh) / 200.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(vx) << " 0 "
      << num(vw) << ' ' << num(vh) << "\" width=\"800\" height=\""
      << static_cast<int>(800.0 * vh / vw) << "\">\n";
  svg << "<title>" << escape(data.name) << "</title>\n";

  for (std::size_t r = 0; r < data.routes.size(); ++r) {
    const char* color = kPalette[r % kPalette.size()];
    svg << "<polyline class=\"route\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << num(unit * 0.6) << "\" points=\"";
    const auto& depot = data.points.front();
    svg << sx(depot.x) << ',' << sy(depot.y);
    for (int t : data.routes[r]) {
      const auto& p = data.points[static_cast<std::size_t>(t)];
      svg << ' ' << sx(p.x) << ',' << sy(p.y);
    }
    svg << ' ' << sx(depot.x) << ',' << sy(depot.y) << "\"/>\n";
  }

  for (std::size_t i = 1; i < data.points.size(); ++i) {
    svg << "<circle class=\"task\" cx=\"" << sx(data.points[i].x) << "\" cy=\""
        << sy(data.points[i].y) << "\" r=\"" << num(unit) << "\" fill=\"#333\"/>\n";
  }
  const auto& depot = data.points.front();
  svg << "<rect class=\"depot\" x=\"" << num(depot.x - 2 * unit) << "\" y=\""
      << num(top - depot.y - 2 * unit) << "\" width=\"" << num(4 * unit) << "\" height=\""
      << num(4 * unit) << "\" fill=\"#000\"/>\n";

  svg << "<g class=\"legend\" font-size=\"" << num(unit * 4) << "\">\n";
  for (std::size_t r = 0; r < data.routes.size(); ++r) {
    const double ly = (r + 1) * unit * 5;
    svg << "<text x=\"" << num(vx + unit * 2) << "\" y=\"" << num(ly) << "\" fill=\""
        << kPalette[r % kPalette.size()] << "\">" << escape(data.machines.at(r)) << ": "
        << num(data.distances.at(r)) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace fieldroute
