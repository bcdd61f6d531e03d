#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mdiqkd {

/// One polyline of a chart.
struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Writes a self-contained SVG line chart.  Points with non-finite
/// coordinates split the polyline.  When log_y is set the y values are
/// plotted on a log10 axis and non-positive values are dropped.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series, bool log_y);

}  // namespace mdiqkd
