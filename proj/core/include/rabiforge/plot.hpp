// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace rabiforge {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Multi-series SVG line plot with axes, ticks and a legend. Output bytes
/// depend only on the input, so identical data renders identical files.
std::string render_svg_plot(const std::vector<PlotSeries>& series,
                            const std::string& x_label, const std::string& y_label,
                            const std::string& title);

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title);

}  // namespace rabiforge
