#pragma once

#include <string>
#include <utility>
#include <vector>

namespace minecast::app {

struct ChartSeries
{
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

/// One line-chart panel.
struct ChartPanel
{
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// Renders panels on a grid (columns wide) into a standalone SVG document.
/// Output depends only on the input, so identical data gives identical bytes.
std::string render_svg(const std::string& title, const std::vector<ChartPanel>& panels, int columns = 1);

}
