// Sweep-hull Delaunay triangulation: points are inserted in order of
// distance from a seed triangle's circumcenter, each new point is joined to
// the visible part of the convex hull and the new triangles are legalized
// by edge flips.

#include "palopt/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace palopt {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Positive when (p, q, r) turn counter-clockwise.
double orient(const Point2 &p, const Point2 &q, const Point2 &r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

// Positive when d lies inside the circumcircle of the counter-clockwise
// triangle (a, b, c).
double in_circle(const Point2 &a, const Point2 &b, const Point2 &c, const Point2 &d) {
    const double dx = a.x - d.x, dy = a.y - d.y;
    const double ex = b.x - d.x, ey = b.y - d.y;
    const double fx = c.x - d.x, fy = c.y - d.y;
    const double ap = dx * dx + dy * dy;
    const double bp = ex * ex + ey * ey;
    const double cp = fx * fx + fy * fy;
    return dx * (ey * cp - bp * fy) - dy * (ex * cp - bp * fx) + ap * (ex * fy - ey * fx);
}

double circumradius2(const Point2 &a, const Point2 &b, const Point2 &c) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double ex = c.x - a.x, ey = c.y - a.y;
    const double bl = dx * dx + dy * dy;
    const double cl = ex * ex + ey * ey;
    const double d = 0.5 / (dx * ey - dy * ex);
    const double x = (ey * bl - dy * cl) * d;
    const double y = (dx * cl - ex * bl) * d;
    const double r = x * x + y * y;
    return std::isfinite(r) && bl > 0.0 && cl > 0.0 ? r : std::numeric_limits<double>::infinity();
}

Point2 circumcenter(const Point2 &a, const Point2 &b, const Point2 &c) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double ex = c.x - a.x, ey = c.y - a.y;
    const double bl = dx * dx + dy * dy;
    const double cl = ex * ex + ey * ey;
    const double d = 0.5 / (dx * ey - dy * ex);
    return {a.x + (ey * bl - dy * cl) * d, a.y + (dx * cl - ex * bl) * d};
}

// Monotone in the angle of (dx, dy); range [0, 1).
double pseudo_angle(double dx, double dy) {
    const double p = dx / (std::abs(dx) + std::abs(dy));
    return (dy > 0.0 ? 3.0 - p : 1.0 + p) / 4.0;
}

class SweepHull {
public:
    explicit SweepHull(std::span<const Point2> pts) : pts_(pts) {}

    // Returns false when no triangulation exists (collinear input).
    bool run();

    std::vector<std::size_t> triangles;

private:
    std::size_t hash_key(const Point2 &p) const {
        const double a = pseudo_angle(p.x - center_.x, p.y - center_.y);
        return static_cast<std::size_t>(std::floor(a * static_cast<double>(hash_size_))) %
               hash_size_;
    }

    void link(std::size_t a, std::size_t b) {
        halfedges_[a] = b;
        if (b != kNone)
            halfedges_[b] = a;
    }

    std::size_t add_triangle(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t a,
                             std::size_t b, std::size_t c) {
        const std::size_t t = triangles.size();
        triangles.insert(triangles.end(), {i0, i1, i2});
        halfedges_.insert(halfedges_.end(), {kNone, kNone, kNone});
        link(t, a);
        link(t + 1, b);
        link(t + 2, c);
        return t;
    }

    std::size_t legalize(std::size_t a);

    std::span<const Point2> pts_;
    std::vector<std::size_t> halfedges_;
    std::vector<std::size_t> hull_prev_, hull_next_, hull_tri_, hull_hash_;
    std::size_t hull_start_ = 0;
    std::size_t hash_size_ = 1;
    Point2 center_;
    std::vector<std::size_t> edge_stack_;
};

std::size_t SweepHull::legalize(std::size_t a) {
    std::size_t depth = 0;
    std::size_t ar = 0;
    edge_stack_.clear();
    while (true) {
        const std::size_t b = halfedges_[a];
        const std::size_t a0 = a - a % 3;
        ar = a0 + (a + 2) % 3;

        if (b == kNone) {
            if (depth == 0)
                break;
            a = edge_stack_[--depth];
            continue;
        }

        const std::size_t b0 = b - b % 3;
        const std::size_t al = a0 + (a + 1) % 3;
        const std::size_t bl = b0 + (b + 2) % 3;

        const std::size_t p0 = triangles[ar];
        const std::size_t pr = triangles[a];
        const std::size_t pl = triangles[al];
        const std::size_t p1 = triangles[bl];

        if (in_circle(pts_[p0], pts_[pr], pts_[pl], pts_[p1]) > 0.0) {
            triangles[a] = p1;
            triangles[b] = p0;

            const std::size_t hbl = halfedges_[bl];
            // The flipped edge was on the hull; repoint the hull triangle.
            if (hbl == kNone) {
                std::size_t e = hull_start_;
                do {
                    if (hull_tri_[e] == bl) {
                        hull_tri_[e] = a;
                        break;
                    }
                    e = hull_prev_[e];
                } while (e != hull_start_);
            }
            link(a, hbl);
            link(b, halfedges_[ar]);
            link(ar, bl);

            const std::size_t br = b0 + (b + 1) % 3;
            if (depth < edge_stack_.size())
                edge_stack_[depth] = br;
            else
                edge_stack_.push_back(br);
            ++depth;
        } else {
            if (depth == 0)
                break;
            a = edge_stack_[--depth];
        }
    }
    return ar;
}

bool SweepHull::run() {
    const std::size_t n = pts_.size();
    if (n < 3)
        return false;

    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const auto &p : pts_) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    const Point2 mid{(min_x + max_x) / 2.0, (min_y + max_y) / 2.0};

    auto d2 = [](const Point2 &p, const Point2 &q) {
        return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
    };

    std::size_t i0 = 0, i1 = kNone, i2 = kNone;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = d2(mid, pts_[i]);
        if (d < best) {
            best = d;
            i0 = i;
        }
    }
    best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == i0)
            continue;
        const double d = d2(pts_[i0], pts_[i]);
        if (d < best && d > 0.0) {
            best = d;
            i1 = i;
        }
    }
    if (i1 == kNone)
        return false;
    double min_radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == i0 || i == i1)
            continue;
        const double r = circumradius2(pts_[i0], pts_[i1], pts_[i]);
        if (r < min_radius) {
            min_radius = r;
            i2 = i;
        }
    }
    if (i2 == kNone || !std::isfinite(min_radius))
        return false;

    if (orient(pts_[i0], pts_[i1], pts_[i2]) < 0.0)
        std::swap(i1, i2);

    center_ = circumcenter(pts_[i0], pts_[i1], pts_[i2]);

    std::vector<double> dists(n);
    for (std::size_t i = 0; i < n; ++i)
        dists[i] = d2(pts_[i], center_);
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::size_t a, std::size_t b) { return dists[a] < dists[b]; });

    hash_size_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    hull_hash_.assign(hash_size_, kNone);
    hull_prev_.assign(n, 0);
    hull_next_.assign(n, 0);
    hull_tri_.assign(n, 0);

    hull_start_ = i0;
    hull_next_[i0] = hull_prev_[i2] = i1;
    hull_next_[i1] = hull_prev_[i0] = i2;
    hull_next_[i2] = hull_prev_[i1] = i0;
    hull_tri_[i0] = 0;
    hull_tri_[i1] = 1;
    hull_tri_[i2] = 2;
    hull_hash_[hash_key(pts_[i0])] = i0;
    hull_hash_[hash_key(pts_[i1])] = i1;
    hull_hash_[hash_key(pts_[i2])] = i2;

    const std::size_t max_triangles = 2 * n - 5;
    triangles.reserve(max_triangles * 3);
    halfedges_.reserve(max_triangles * 3);
    add_triangle(i0, i1, i2, kNone, kNone, kNone);

    Point2 prev{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = ids[k];
        const Point2 &p = pts_[i];

        // Exact duplicates cannot be inserted.
        if (k > 0 && p == prev)
            continue;
        prev = p;
        if (i == i0 || i == i1 || i == i2)
            continue;

        // Find a visible hull edge, starting near the point's angle.
        std::size_t start = 0;
        const std::size_t key = hash_key(p);
        for (std::size_t j = 0; j < hash_size_; ++j) {
            start = hull_hash_[(key + j) % hash_size_];
            if (start != kNone && start != hull_next_[start])
                break;
        }
        start = hull_prev_[start];
        std::size_t e = start;
        std::size_t q = hull_next_[e];
        while (orient(p, pts_[e], pts_[q]) >= 0.0) {
            e = q;
            if (e == start) {
                e = kNone;
                break;
            }
            q = hull_next_[e];
        }
        if (e == kNone)
            continue; // coincident with an existing point within rounding

        std::size_t t = add_triangle(e, i, hull_next_[e], kNone, kNone, hull_tri_[e]);
        hull_tri_[i] = legalize(t + 2);
        hull_tri_[e] = t;

        // Walk forward through the hull adding triangles.
        std::size_t nxt = hull_next_[e];
        q = hull_next_[nxt];
        while (orient(p, pts_[nxt], pts_[q]) < 0.0) {
            t = add_triangle(nxt, i, q, hull_tri_[i], kNone, hull_tri_[nxt]);
            hull_tri_[i] = legalize(t + 2);
            hull_next_[nxt] = nxt; // removed from hull
            nxt = q;
            q = hull_next_[nxt];
        }

        // Walk backward from the other side.
        if (e == start) {
            q = hull_prev_[e];
            while (orient(p, pts_[q], pts_[e]) < 0.0) {
                t = add_triangle(q, i, e, kNone, hull_tri_[e], hull_tri_[q]);
                legalize(t + 2);
                hull_tri_[q] = t;
                hull_next_[e] = e;
                e = q;
                q = hull_prev_[e];
            }
        }

        hull_start_ = hull_prev_[i] = e;
        hull_next_[e] = hull_prev_[nxt] = i;
        hull_next_[i] = nxt;

        hull_hash_[hash_key(p)] = i;
        hull_hash_[hash_key(pts_[e])] = e;
    }
    return true;
}

bool all_collinear(std::span<const Point2> pts) {
    if (pts.size() < 3)
        return true;
    double scale = 0.0;
    for (const auto &p : pts)
        scale = std::max({scale, std::abs(p.x - pts[0].x), std::abs(p.y - pts[0].y)});
    if (scale == 0.0)
        return true;
    // Farthest point from pts[0] fixes the line direction.
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = distance(pts[0], pts[i]);
        if (d > far_d) {
            far_d = d;
            far = i;
        }
    }
    const double tol = 1e-12 * scale * scale;
    return std::all_of(pts.begin(), pts.end(), [&](const Point2 &p) {
        return std::abs(orient(pts[0], pts[far], p)) <= tol;
    });
}

} // namespace

std::vector<Triangle> delaunay_triangles(std::span<const Point2> points) {
    if (points.size() < 3 || all_collinear(points))
        return {};
    SweepHull hull(points);
    if (!hull.run())
        return {};
    std::vector<Triangle> out;
    out.reserve(hull.triangles.size() / 3);
    for (std::size_t t = 0; t + 2 < hull.triangles.size(); t += 3) {
        out.push_back({hull.triangles[t], hull.triangles[t + 1], hull.triangles[t + 2]});
    }
    return out;
}

std::vector<Edge> delaunay(std::span<const Point2> points) {
    std::vector<Edge> edges;
    const auto tris = delaunay_triangles(points);
    if (tris.empty()) {
        if (points.size() < 2)
            return edges;
        std::vector<std::size_t> order(points.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return points[a].x < points[b].x ||
                   (points[a].x == points[b].x && points[a].y < points[b].y);
        });
        for (std::size_t k = 0; k + 1 < order.size(); ++k)
            edges.push_back({std::min(order[k], order[k + 1]), std::max(order[k], order[k + 1])});
    } else {
        edges.reserve(tris.size() * 3);
        for (const auto &t : tris)
            for (std::size_t k = 0; k < 3; ++k) {
                const std::size_t a = t[k], b = t[(k + 1) % 3];
                edges.push_back({std::min(a, b), std::max(a, b)});
            }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace palopt
