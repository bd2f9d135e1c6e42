#include "cwerank/plot.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include <fmt/format.h>

#include "cwerank/error.hpp"

namespace cwerank {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

constexpr std::array<std::string_view, 6> kPalette = {"#d62728", "#e6b800", "#1f77b4",
                                                      "#2ca02c", "#9467bd", "#8c564b"};

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void widen_if_flat()
    {
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

std::string coord(double v)
{
    return fmt::format("{:.2f}", v);
}

} // namespace

std::string render_plot(std::span<const PlotSeries> series, PlotKind kind, const PlotLabels& labels)
{
    Range xr, yr;
    std::size_t points = 0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw ComputationError(fmt::format("plot series '{}' has {} x values and {} y values", s.name,
                                               s.x.size(), s.y.size()));
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xr.add(s.x[i]);
            yr.add(s.y[i]);
        }
        points += s.x.size();
    }
    if (points == 0) {
        throw ComputationError("cannot plot an empty series");
    }
    xr.widen_if_flat();
    yr.widen_if_flat();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    std::string x_label = labels.x_label.empty() ? "x" : labels.x_label;
    std::string y_label = labels.y_label;
    if (y_label.empty()) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            y_label += (i > 0 ? " / " : "") + series[i].name;
        }
    }

    std::string svg;
    svg += fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)",
                       kWidth, kHeight);
    svg += '\n';
    svg += R"(<rect x="0" y="0" width="100%" height="100%" fill="white"/>)";
    svg += '\n';
    if (!labels.title.empty()) {
        svg += fmt::format(R"(<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>)",
                           coord(kLeft + plot_w / 2), xml_escape(labels.title));
        svg += '\n';
    }

    // axes
    svg += fmt::format(R"(<line class="axis" x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>)", coord(kLeft),
                       coord(kTop + plot_h), coord(kLeft + plot_w));
    svg += '\n';
    svg += fmt::format(R"(<line class="axis" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)", coord(kLeft),
                       coord(kTop), coord(kTop + plot_h));
    svg += '\n';
    for (int t = 0; t <= kTicks; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * t / kTicks;
        svg += fmt::format(R"(<text class="tick" x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>)",
                           coord(px(fx)), coord(kTop + plot_h + 16), fmt::format("{:.3g}", fx));
        svg += '\n';
        svg += fmt::format(R"(<text class="tick" x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>)",
                           coord(kLeft - 6), coord(py(fy) + 4), fmt::format("{:.3g}", fy));
        svg += '\n';
    }
    svg += fmt::format(R"(<text class="label" x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>)",
                       coord(kLeft + plot_w / 2), coord(kHeight - 16), xml_escape(x_label));
    svg += '\n';
    svg += fmt::format(R"svg(<text class="label" x="18" y="{0}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>)svg",
                       coord(kTop + plot_h / 2), xml_escape(y_label));
    svg += '\n';

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const auto color = kPalette[i % kPalette.size()];
        if (kind == PlotKind::Curve) {
            std::string pts;
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                pts += (j > 0 ? " " : "") + coord(px(s.x[j])) + "," + coord(py(s.y[j]));
            }
            svg += fmt::format(R"(<polyline class="series" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)",
                               color, pts);
            svg += '\n';
        } else {
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                svg += fmt::format(R"(<circle class="marker" cx="{}" cy="{}" r="3" fill="{}"/>)", coord(px(s.x[j])),
                                   coord(py(s.y[j])), color);
                svg += '\n';
            }
        }
        const double ly = kTop + 16.0 * static_cast<double>(i + 1);
        svg += fmt::format(R"(<rect class="legend" x="{}" y="{}" width="10" height="10" fill="{}"/>)",
                           coord(kLeft + plot_w + 12), coord(ly - 9), color);
        svg += '\n';
        svg += fmt::format(R"(<text class="legend" x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>)",
                           coord(kLeft + plot_w + 26), coord(ly), xml_escape(s.name));
        svg += '\n';
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace cwerank
