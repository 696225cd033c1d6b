#pragma once

#include "palopt/dataset.hpp"
#include "palopt/palette.hpp"

#include <string>

namespace palopt {

// Preview of the colored chart on a background rect: one circle per
// scatter point, one polyline per line series, one rect per bar. Colors
// are the sRGB hex values of the palette. Throws SizeMismatch.
std::string render_svg(const ChartDataset &ds, const Palette &p);

} // namespace palopt
