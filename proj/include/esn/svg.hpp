#pragma once

#include <string>
#include <vector>

namespace esn {

/// One polyline of a panel.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// One chart panel: several series plus an optional dashed horizontal
/// baseline (the unpruned error in the prune-curve figures).
struct SvgPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    bool has_baseline = false;
    double baseline = 0.0;
};

/// Renders panels in a two-column grid as a standalone SVG file. No
/// plotting dependency; line charts are simple enough to template.
void write_svg_panels(const std::vector<SvgPanel>& panels, const std::string& path);

}  // namespace esn
