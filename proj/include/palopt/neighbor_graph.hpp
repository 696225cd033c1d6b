#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace palopt {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

double distance(const Point2 &p, const Point2 &q);

// Points in chart pixel coordinates with a 0-based class label each.
struct LabeledPointSet {
    std::vector<Point2> points;
    std::vector<std::size_t> labels;
    std::size_t class_count = 0;

    std::size_t size() const { return points.size(); }
    std::vector<std::size_t> class_counts() const;

    // Throws ValidationError: label out of range, empty class, non-finite
    // coordinate, or points/labels length mismatch.
    void validate() const;
};

// Moves exact duplicates apart by multiples of 1e-6 px so every graph edge
// has positive length. Returns how many points were moved.
std::size_t jitter_duplicates(std::vector<Point2> &points);

struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

using Triangle = std::array<std::size_t, 3>;

// Delaunay triangles (counter-clockwise). Empty when fewer than three
// points or when all points are collinear.
std::vector<Triangle> delaunay_triangles(std::span<const Point2> points);

// Undirected Delaunay edges with i < j, sorted. One point gives no edges;
// two points or a collinear set give the chain of consecutive points in
// (x, y) order.
std::vector<Edge> delaunay(std::span<const Point2> points);
inline std::vector<Edge> delaunay(const LabeledPointSet &ps) { return delaunay(ps.points); }

enum class GraphKind { AlphaShape, Knn, Path };

std::string graph_kind_name(GraphKind k);

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

// Per-point neighbor sets. Always symmetric, no self-loops, positive
// distances.
struct NeighborGraph {
    GraphKind kind = GraphKind::AlphaShape;
    // Alpha radius in pixels, k, or 0 for a path graph.
    double parameter = 0.0;
    std::vector<std::vector<Neighbor>> neighbors;

    std::size_t point_count() const { return neighbors.size(); }
    std::vector<Edge> edges() const;

    static NeighborGraph from_edges(std::span<const Point2> points,
                                    std::span<const Edge> edges, GraphKind kind,
                                    double parameter);
};

inline constexpr double kDefaultAlphaFactor = 1.5;

// 1.5 x the median Delaunay edge length; 1 when there are no edges.
double default_alpha(std::span<const Point2> points);

// Keeps the Delaunay edges whose endpoint balls of radius `alpha_radius`
// intersect, i.e. d <= 2 * alpha_radius. Infinity keeps every edge.
NeighborGraph alpha_shape_graph(const LabeledPointSet &ps, double alpha_radius);

// Symmetrized union of every point's k nearest neighbors. Throws InvalidK
// unless 1 <= k < n.
NeighborGraph knn_graph(const LabeledPointSet &ps, std::size_t k);

} // namespace palopt
