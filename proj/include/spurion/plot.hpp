#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spurion/time_series.hpp"

namespace spurion {

/// Writes a standalone SVG line chart of 1-4 series over their common index
/// range, plus a CSV sidecar of the plotted points (same path with a .csv
/// extension). The first series is drawn against the left axis; any others
/// share the right axis. Axis ranges are auto-scaled and recorded in the
/// sidecar header.
void emit_plot(const std::vector<TimeSeries>& series, const std::filesystem::path& svg_path);

}  // namespace spurion
