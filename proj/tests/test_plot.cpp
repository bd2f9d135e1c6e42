#include <doctest.h>

#include <string>

#include "cwerank/error.hpp"
#include "cwerank/plot.hpp"

using namespace cwerank;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("scatter of three points has three markers")
{
    std::vector<PlotSeries> s{{"points", {0.0, 0.5, 1.0}, {1.0, 0.2, 0.7}}};
    const auto svg = render_plot(s, PlotKind::Scatter);
    CHECK(count(svg, "class=\"marker\"") == 3);
    CHECK(svg.starts_with("<svg xmlns="));
    CHECK(svg.find("points") != std::string::npos);
}

TEST_CASE("set-difference style curve has three polylines")
{
    std::vector<double> x{1, 2, 3, 4};
    std::vector<PlotSeries> s{{"frequency", x, {0, 1, 1, 0}}, {"severity", x, {1, 2, 1, 0}},
                              {"theoretical max", x, {1, 2, 1, 0}}};
    const auto svg = render_plot(s, PlotKind::Curve, {"Set difference", "size", "difference"});
    CHECK(count(svg, "class=\"series\"") == 3);
    CHECK(count(svg, "<polyline") == 3);
}

TEST_CASE("scatter of 124 points")
{
    PlotSeries p{"CWE", {}, {}};
    for (int i = 0; i < 124; ++i) {
        p.x.push_back(i / 123.0);
        p.y.push_back((i * 37 % 124) / 123.0);
    }
    std::vector<PlotSeries> s{p};
    CHECK(count(render_plot(s, PlotKind::Scatter), "class=\"marker\"") == 124);
}

TEST_CASE("rendering is deterministic and escapes text")
{
    std::vector<PlotSeries> s{{"a<b & c", {1, 2}, {3, 4}}};
    const auto first = render_plot(s, PlotKind::Curve);
    CHECK(first == render_plot(s, PlotKind::Curve));
    CHECK(first.find("a&lt;b &amp; c") != std::string::npos);
    CHECK(first.find("a<b") == std::string::npos);
}

TEST_CASE("empty input is an error")
{
    CHECK_THROWS_AS(render_plot({}, PlotKind::Curve), ComputationError);
    std::vector<PlotSeries> empty{{"none", {}, {}}};
    CHECK_THROWS_AS(render_plot(empty, PlotKind::Scatter), ComputationError);
}
