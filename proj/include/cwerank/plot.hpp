#pragma once

#include <span>
#include <string>
#include <vector>

namespace cwerank {

enum class PlotKind { Curve, Scatter };

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Standalone SVG document. Curves draw one polyline per series, scatters
/// one marker per point. Output bytes depend only on the input.
/// Empty labels fall back to the series names.
std::string render_plot(std::span<const PlotSeries> series, PlotKind kind,
                        const PlotLabels& labels = {});

} // namespace cwerank
