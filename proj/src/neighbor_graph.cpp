#include "palopt/neighbor_graph.hpp"
#include "palopt/error.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

namespace palopt {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

double distance(const Point2 &p, const Point2 &q) { return std::hypot(p.x - q.x, p.y - q.y); }

std::vector<std::size_t> LabeledPointSet::class_counts() const {
    std::vector<std::size_t> counts(class_count, 0);
    for (auto l : labels)
        if (l < class_count)
            ++counts[l];
    return counts;
}

void LabeledPointSet::validate() const {
    if (labels.size() != points.size())
        throw ValidationError("point set has " + std::to_string(points.size()) +
                              " points but " + std::to_string(labels.size()) + " labels");
    if (class_count == 0)
        throw ValidationError("point set declares no classes");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
        if (labels[i] >= class_count)
            throw ValidationError("point " + std::to_string(i) + " references class " +
                                  std::to_string(labels[i]) + " but only " +
                                  std::to_string(class_count) + " classes exist");
    }
    const auto counts = class_counts();
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (counts[j] == 0)
            throw ValidationError("class " + std::to_string(j) + " has no points");
}

std::size_t jitter_duplicates(std::vector<Point2> &points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return points[a].x < points[b].x || (points[a].x == points[b].x && points[a].y < points[b].y);
    };
    std::stable_sort(order.begin(), order.end(), less);

    constexpr double kJitter = 1e-6;
    std::size_t moved = 0;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        if (k < order.size() && points[order[k]] == points[order[run_start]])
            continue;
        for (std::size_t r = run_start + 1; r < k; ++r) {
            const double offset = kJitter * static_cast<double>(r - run_start);
            points[order[r]].x += offset;
            points[order[r]].y += offset;
            ++moved;
        }
        run_start = k;
    }
    return moved;
}

std::string graph_kind_name(GraphKind k) {
    switch (k) {
    case GraphKind::AlphaShape:
        return "alpha";
    case GraphKind::Knn:
        return "knn";
    case GraphKind::Path:
        return "path";
    }
    return "unknown";
}

std::vector<Edge> NeighborGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < neighbors.size(); ++i)
        for (const auto &nb : neighbors[i])
            if (i < nb.index)
                out.push_back({i, nb.index});
    std::sort(out.begin(), out.end());
    return out;
}

NeighborGraph NeighborGraph::from_edges(std::span<const Point2> points,
                                        std::span<const Edge> edges, GraphKind kind,
                                        double parameter) {
    NeighborGraph g;
    g.kind = kind;
    g.parameter = parameter;
    g.neighbors.resize(points.size());
    for (const auto &e : edges) {
        if (e.i == e.j)
            continue;
        const double d = distance(points[e.i], points[e.j]);
        if (!(d > 0.0))
            continue;
        g.neighbors[e.i].push_back({e.j, d});
        g.neighbors[e.j].push_back({e.i, d});
    }
    for (auto &nbs : g.neighbors) {
        std::sort(nbs.begin(), nbs.end(),
                  [](const Neighbor &a, const Neighbor &b) { return a.index < b.index; });
        nbs.erase(std::unique(nbs.begin(), nbs.end(),
                              [](const Neighbor &a, const Neighbor &b) {
                                  return a.index == b.index;
                              }),
                  nbs.end());
    }
    return g;
}

double default_alpha(std::span<const Point2> points) {
    const auto edges = delaunay(points);
    if (edges.empty())
        return 1.0;
    std::vector<double> lengths;
    lengths.reserve(edges.size());
    for (const auto &e : edges)
        lengths.push_back(distance(points[e.i], points[e.j]));
    const auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
    std::nth_element(lengths.begin(), mid, lengths.end());
    double median = *mid;
    if (lengths.size() % 2 == 0) {
        const double lower = *std::max_element(lengths.begin(), mid);
        median = 0.5 * (median + lower);
    }
    return kDefaultAlphaFactor * median;
}

NeighborGraph alpha_shape_graph(const LabeledPointSet &ps, double alpha_radius) {
    if (!(alpha_radius > 0.0))
        throw InvalidConfig("alpha radius must be positive");
    const auto all = delaunay(ps.points);
    std::vector<Edge> kept;
    kept.reserve(all.size());
    const double limit = 2.0 * alpha_radius;
    for (const auto &e : all)
        if (distance(ps.points[e.i], ps.points[e.j]) <= limit)
            kept.push_back(e);
    return NeighborGraph::from_edges(ps.points, kept, GraphKind::AlphaShape, alpha_radius);
}

NeighborGraph knn_graph(const LabeledPointSet &ps, std::size_t k) {
    const std::size_t n = ps.size();
    if (k < 1 || k >= n)
        throw InvalidK("k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                       ", n=" + std::to_string(n) + ")");

    using BPoint = bg::model::point<double, 2, bg::cs::cartesian>;
    using Value = std::pair<BPoint, std::size_t>;
    std::vector<Value> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        values.emplace_back(BPoint(ps.points[i].x, ps.points[i].y), i);
    const bgi::rtree<Value, bgi::rstar<16>> tree(values.begin(), values.end());

    std::vector<Edge> edges;
    edges.reserve(n * k);
    std::vector<Value> found;
    for (std::size_t i = 0; i < n; ++i) {
        found.clear();
        tree.query(bgi::nearest(values[i].first, static_cast<unsigned>(k + 1)),
                   std::back_inserter(found));
        // Sort by distance, then index, so ties resolve deterministically.
        std::sort(found.begin(), found.end(), [&](const Value &a, const Value &b) {
            const double da = distance(ps.points[i], ps.points[a.second]);
            const double db = distance(ps.points[i], ps.points[b.second]);
            return da < db || (da == db && a.second < b.second);
        });
        std::size_t taken = 0;
        for (const auto &v : found) {
            if (v.second == i || taken == k)
                continue;
            edges.push_back({std::min(i, v.second), std::max(i, v.second)});
            ++taken;
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return NeighborGraph::from_edges(ps.points, edges, GraphKind::Knn, static_cast<double>(k));
}

} // namespace palopt
