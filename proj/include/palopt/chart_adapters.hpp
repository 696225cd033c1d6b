#pragma once

#include "palopt/neighbor_graph.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace palopt {

struct Canvas {
    double width = 400.0;
    double height = 400.0;
};

// Data-space rectangle mapped onto the canvas.
struct Domain {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

Domain bounding_domain(std::span<const Point2> points);

// Linear data -> pixel mapping with the y axis pointing down. A degenerate
// axis (zero extent) maps to the canvas center.
class CanvasTransform {
public:
    CanvasTransform(const Domain &domain, const Canvas &canvas);
    Point2 operator()(const Point2 &p) const;

private:
    Domain domain_;
    Canvas canvas_;
};

struct LineChartData {
    // Ordered vertices in data coordinates, one polyline per class.
    std::vector<std::vector<Point2>> series;
    Canvas canvas;
    // Defaults to the bounding box of all vertices.
    std::optional<Domain> domain;

    // Throws ValidationError: no series, fewer than two vertices, or x not
    // strictly increasing.
    void validate() const;
    CanvasTransform transform() const;
};

struct BarChartData {
    std::vector<double> values;
    Canvas canvas;
    // Fraction of each slot occupied by its bar.
    double bar_fraction = 0.8;

    // Throws ValidationError: fewer than two bars or a negative height.
    void validate() const;
};

struct BarRect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    Point2 center() const { return {x + width / 2.0, y + height / 2.0}; }
};

// Bars in pixel space: equal-width slots across the canvas, heights scaled
// so the tallest bar spans the canvas height.
std::vector<BarRect> bar_layout(const BarChartData &bc);

inline constexpr double kDefaultLineSpacing = 10.0;

// Resamples each polyline, in pixel space, at equal arc-length steps no
// shorter than `spacing`: floor(length / spacing) + 1 points including both
// endpoints. Steep segments are longer in pixels and so get more samples.
LabeledPointSet discretize_lines(const LineChartData &lc, double spacing);

// One point per bar at the bar's center, connected as a path over adjacent
// bars. Edge length is the center-to-center distance in pixels.
std::pair<LabeledPointSet, NeighborGraph> bars_to_graph(const BarChartData &bc);

} // namespace palopt
