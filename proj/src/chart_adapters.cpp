#include "palopt/chart_adapters.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace palopt {

Domain bounding_domain(std::span<const Point2> points) {
    Domain d{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto &p : points) {
        d.x_min = std::min(d.x_min, p.x);
        d.x_max = std::max(d.x_max, p.x);
        d.y_min = std::min(d.y_min, p.y);
        d.y_max = std::max(d.y_max, p.y);
    }
    if (points.empty())
        d = Domain{};
    return d;
}

CanvasTransform::CanvasTransform(const Domain &domain, const Canvas &canvas)
    : domain_(domain), canvas_(canvas) {}

Point2 CanvasTransform::operator()(const Point2 &p) const {
    const double dx = domain_.x_max - domain_.x_min;
    const double dy = domain_.y_max - domain_.y_min;
    const double x = dx > 0.0 ? (p.x - domain_.x_min) / dx * canvas_.width : canvas_.width / 2.0;
    const double y = dy > 0.0 ? canvas_.height - (p.y - domain_.y_min) / dy * canvas_.height
                              : canvas_.height / 2.0;
    return {x, y};
}

void LineChartData::validate() const {
    if (series.empty())
        throw ValidationError("line chart has no series");
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto &line = series[s];
        if (line.size() < 2)
            throw ValidationError("series " + std::to_string(s) + " needs at least two vertices");
        for (std::size_t k = 0; k < line.size(); ++k) {
            if (!std::isfinite(line[k].x) || !std::isfinite(line[k].y))
                throw ValidationError("series " + std::to_string(s) + " vertex " +
                                      std::to_string(k) + " is not finite");
            if (k > 0 && !(line[k].x > line[k - 1].x))
                throw ValidationError("series " + std::to_string(s) + ": x must be strictly "
                                      "increasing (vertex " + std::to_string(k) + ")");
        }
    }
    if (!(canvas.width > 0.0 && canvas.height > 0.0))
        throw ValidationError("canvas must have positive size");
}

CanvasTransform LineChartData::transform() const {
    if (domain)
        return {*domain, canvas};
    std::vector<Point2> all;
    for (const auto &line : series)
        all.insert(all.end(), line.begin(), line.end());
    return {bounding_domain(all), canvas};
}

void BarChartData::validate() const {
    if (values.size() < 2)
        throw ValidationError("bar chart needs at least two bars");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw ValidationError("bar " + std::to_string(i) + " has a negative or invalid height");
    if (!(canvas.width > 0.0 && canvas.height > 0.0))
        throw ValidationError("canvas must have positive size");
    if (!(bar_fraction > 0.0 && bar_fraction <= 1.0))
        throw ValidationError("bar fraction must be in (0, 1]");
}

std::vector<BarRect> bar_layout(const BarChartData &bc) {
    const double slot = bc.canvas.width / static_cast<double>(bc.values.size());
    const double top = *std::max_element(bc.values.begin(), bc.values.end());
    std::vector<BarRect> out;
    out.reserve(bc.values.size());
    for (std::size_t i = 0; i < bc.values.size(); ++i) {
        const double h = top > 0.0 ? bc.values[i] / top * bc.canvas.height : 0.0;
        const double w = slot * bc.bar_fraction;
        const double cx = (static_cast<double>(i) + 0.5) * slot;
        out.push_back({cx - w / 2.0, bc.canvas.height - h, w, h});
    }
    return out;
}

LabeledPointSet discretize_lines(const LineChartData &lc, double spacing) {
    if (!(spacing > 0.0))
        throw InvalidConfig("line sampling spacing must be positive");
    lc.validate();
    const auto to_px = lc.transform();

    LabeledPointSet ps;
    ps.class_count = lc.series.size();
    for (std::size_t s = 0; s < lc.series.size(); ++s) {
        std::vector<Point2> px;
        px.reserve(lc.series[s].size());
        for (const auto &p : lc.series[s])
            px.push_back(to_px(p));

        std::vector<double> cumulative(px.size(), 0.0);
        for (std::size_t k = 1; k < px.size(); ++k)
            cumulative[k] = cumulative[k - 1] + distance(px[k - 1], px[k]);
        const double length = cumulative.back();

        const auto steps = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(length / spacing)));
        std::size_t seg = 0;
        for (std::size_t k = 0; k <= steps; ++k) {
            const double target = length * static_cast<double>(k) / static_cast<double>(steps);
            while (seg + 2 < px.size() && cumulative[seg + 1] < target)
                ++seg;
            const double seg_len = cumulative[seg + 1] - cumulative[seg];
            const double t =
                seg_len > 0.0 ? std::clamp((target - cumulative[seg]) / seg_len, 0.0, 1.0) : 0.0;
            Point2 p{px[seg].x + t * (px[seg + 1].x - px[seg].x),
                     px[seg].y + t * (px[seg + 1].y - px[seg].y)};
            if (k == steps)
                p = px.back();
            ps.points.push_back(p);
            ps.labels.push_back(s);
        }
    }
    return ps;
}

std::pair<LabeledPointSet, NeighborGraph> bars_to_graph(const BarChartData &bc) {
    bc.validate();
    const auto rects = bar_layout(bc);
    LabeledPointSet ps;
    ps.class_count = rects.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        ps.points.push_back(rects[i].center());
        ps.labels.push_back(i);
        if (i > 0)
            edges.push_back({i - 1, i});
    }
    auto graph = NeighborGraph::from_edges(ps.points, edges, GraphKind::Path, 0.0);
    return {std::move(ps), std::move(graph)};
}

} // namespace palopt
