#pragma once

#include <string>

#include "fieldroute/io.hpp"

namespace fieldroute {

/// Static route map: depot square, task dots, one polyline per machine and a
/// legend with each machine's distance. The viewBox is the data bounding box
/// grown by 5% on every side; y grows upward as in the source coordinates.
std::string render_routes_svg(const io::PlotData& data);

}  // namespace fieldroute
