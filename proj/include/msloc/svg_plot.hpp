#pragma once

#include <span>
#include <string>

#include "msloc/sweep_csv.hpp"

namespace msloc {

enum class PlotMetric { position, velocity };

/// Standalone SVG 1.1 line chart of sweep rows: log-scaled x (swept sigma),
/// one polyline per (channel, DOA sigma, pair count) group, legend when more
/// than one group. The y axis is logarithmic when every value is positive.
/// Throws ValidationError when there is nothing to draw.
std::string render_sweep_svg(std::span<const SweepCsvRow> rows, PlotMetric metric = PlotMetric::position);

}  // namespace msloc
