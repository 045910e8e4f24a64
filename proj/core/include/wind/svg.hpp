#pragma once

#include "wind/geometry.hpp"

#include <string>
#include <vector>

namespace wind {

// Minimal line/scatter plotting for experiment outputs.
struct PlotSeries {
    std::string label;
    std::vector<Vec2> points;
    bool scatter = false;  // false: polyline, true: markers
    std::string color = "#1f77b4";
};

// Renders series into a self-contained SVG document with axes and
// tick labels.  An empty series list yields a valid empty plot.
std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title = "",
                       const std::string& x_label = "",
                       const std::string& y_label = "");

// Writes the document to path; throws std::runtime_error on I/O failure.
void write_svg(const std::vector<PlotSeries>& series, const std::string& path,
               const std::string& title = "", const std::string& x_label = "",
               const std::string& y_label = "");

}  // namespace wind
