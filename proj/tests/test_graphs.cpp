#include "support.hpp"

#include "palopt/error.hpp"
#include "palopt/neighbor_graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace palopt;

namespace {

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({rng.uniform(0, 400), rng.uniform(0, 400)});
    return pts;
}

double cross(const Point2 &o, const Point2 &a, const Point2 &b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; collinear hull points are dropped.
std::size_t hull_size(std::vector<Point2> p) {
    std::sort(p.begin(), p.end(), [](auto &a, auto &b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point2> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0)
            --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0)
            --k;
        h[k++] = p[i - 1];
    }
    return k - 1;
}

// Positive when d lies strictly inside the circumcircle of CCW (a, b, c).
double in_circle(const Point2 &a, const Point2 &b, const Point2 &c, const Point2 &d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
           (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
           (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

LabeledPointSet unlabeled(std::vector<Point2> pts) {
    LabeledPointSet ps;
    ps.points = std::move(pts);
    ps.labels.assign(ps.points.size(), 0);
    ps.class_count = 1;
    return ps;
}

void check_graph_shape(const NeighborGraph &g) {
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        for (const auto &nb : g.neighbors[i]) {
            CHECK(nb.index != i);
            CHECK(nb.distance > 0.0);
            const auto &back = g.neighbors[nb.index];
            CHECK(std::any_of(back.begin(), back.end(),
                              [&](const Neighbor &x) { return x.index == i; }));
        }
    }
}

} // namespace

TEST_SUITE("delaunay") {

TEST_CASE("empty circumcircles and euler counts on random points") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto pts = random_points(300, seed);
        const auto tris = delaunay_triangles(pts);
        const std::size_t h = hull_size(pts);
        CHECK(tris.size() == 2 * pts.size() - 2 - h);
        CHECK(delaunay(pts).size() == 3 * pts.size() - 3 - h);
        for (const auto &t : tris) {
            const auto &a = pts[t[0]], &b = pts[t[1]], &c = pts[t[2]];
            REQUIRE(cross(a, b, c) > 0.0);
            const double scale = 400.0 * 400.0 * 400.0 * 400.0;
            for (std::size_t q = 0; q < pts.size(); ++q) {
                if (q == t[0] || q == t[1] || q == t[2])
                    continue;
                REQUIRE(in_circle(a, b, c, pts[q]) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("regular grid with cocircular quads") {
    std::vector<Point2> pts;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            pts.push_back({10.0 * i, 10.0 * j});
    CHECK(delaunay_triangles(pts).size() == 32);
    CHECK(delaunay(pts).size() == 3 * 25 - 3 - 16);
}

TEST_CASE("degenerate inputs") {
    CHECK(delaunay(std::vector<Point2>{{1, 1}}).empty());
    const auto two = delaunay(std::vector<Point2>{{5, 5}, {1, 1}});
    REQUIRE(two.size() == 1);
    CHECK(two[0] == Edge{0, 1});
    // Collinear: chain in (x, y) order.
    const std::vector<Point2> line{{3, 3}, {0, 0}, {2, 2}, {1, 1}};
    CHECK(delaunay_triangles(line).empty());
    const auto chain = delaunay(line);
    const std::vector<Edge> expected{{0, 2}, {1, 3}, {2, 3}};
    CHECK(chain == expected);
}

TEST_CASE("jitter separates duplicates") {
    std::vector<Point2> pts{{1, 1}, {1, 1}, {1, 1}, {2, 2}};
    CHECK(jitter_duplicates(pts) == 2);
    std::set<std::pair<double, double>> seen;
    for (const auto &p : pts)
        seen.insert({p.x, p.y});
    CHECK(seen.size() == 4);
    CHECK(std::abs(pts[2].x - 1.0) < 1e-5);
}

}

TEST_SUITE("graphs") {

TEST_CASE("alpha-shape graph keeps delaunay edges up to twice alpha") {
    const auto ps = unlabeled(random_points(200, 7));
    const auto del = delaunay(ps);
    for (double alpha : {5.0, 12.0, 30.0}) {
        const auto g = alpha_shape_graph(ps, alpha);
        std::vector<Edge> expected;
        for (const auto &e : del)
            if (distance(ps.points[e.i], ps.points[e.j]) <= 2.0 * alpha)
                expected.push_back(e);
        CHECK(g.edges() == expected);
        CHECK(g.kind == GraphKind::AlphaShape);
        check_graph_shape(g);
    }
    CHECK(alpha_shape_graph(ps, std::numeric_limits<double>::infinity()).edges() == del);
    CHECK_THROWS_AS(alpha_shape_graph(ps, 0.0), InvalidConfig);
}

TEST_CASE("default alpha is 1.5 times the median delaunay edge") {
    const auto ps = unlabeled(random_points(101, 8));
    std::vector<double> lengths;
    for (const auto &e : delaunay(ps))
        lengths.push_back(distance(ps.points[e.i], ps.points[e.j]));
    std::sort(lengths.begin(), lengths.end());
    const std::size_t n = lengths.size();
    const double median = n % 2 ? lengths[n / 2] : 0.5 * (lengths[n / 2 - 1] + lengths[n / 2]);
    CHECK(default_alpha(ps.points) == doctest::Approx(1.5 * median));
    CHECK(default_alpha(std::vector<Point2>{{0, 0}}) == 1.0);
}

TEST_CASE("knn graph matches a brute-force search") {
    const auto ps = unlabeled(random_points(150, 9));
    for (std::size_t k : {1u, 2u, 5u}) {
        const auto g = knn_graph(ps, k);
        check_graph_shape(g);
        std::set<Edge> expected;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::vector<std::pair<double, std::size_t>> d;
            for (std::size_t j = 0; j < ps.size(); ++j)
                if (j != i)
                    d.push_back({distance(ps.points[i], ps.points[j]), j});
            std::sort(d.begin(), d.end());
            for (std::size_t r = 0; r < k; ++r)
                expected.insert({std::min(i, d[r].second), std::max(i, d[r].second)});
        }
        const auto edges = g.edges();
        CHECK(std::set<Edge>(edges.begin(), edges.end()) == expected);
    }
    CHECK_THROWS_AS(knn_graph(ps, 0), InvalidK);
    CHECK_THROWS_AS(knn_graph(ps, 150), InvalidK);
}

TEST_CASE("label validation") {
    LabeledPointSet ps = unlabeled({{0, 0}, {1, 1}});
    ps.labels[1] = 3;
    CHECK_THROWS_AS(ps.validate(), ValidationError);
}

}
