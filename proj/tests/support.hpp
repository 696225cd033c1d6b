#pragma once

// Fixtures shared by the unit and acceptance tests.

#include "palopt/name_model.hpp"
#include "palopt/neighbor_graph.hpp"
#include "palopt/palette.hpp"
#include "palopt/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace palopt::testing {

inline const NameCountMatrix &default_names() {
    static const NameCountMatrix m = NameCountMatrix::load(PALOPT_NAME_MATRIX);
    return m;
}

inline std::string test_data(const std::string &name) {
    return std::string(PALOPT_TEST_DATA) + "/" + name;
}

// Box-Muller on the library RNG so fixtures do not depend on the standard
// library's distributions.
inline double gaussian(Rng &rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// m Gaussian clusters on a 400 x 400 canvas, `per_class` points each.
inline LabeledPointSet gaussian_clusters(std::size_t m, std::size_t per_class,
                                         std::uint64_t seed, double sigma = 25.0) {
    Rng rng(seed);
    LabeledPointSet ps;
    ps.class_count = m;
    for (std::size_t c = 0; c < m; ++c) {
        const double cx = rng.uniform(40.0, 360.0);
        const double cy = rng.uniform(40.0, 360.0);
        for (std::size_t k = 0; k < per_class; ++k) {
            ps.points.push_back({cx + sigma * gaussian(rng), cy + sigma * gaussian(rng)});
            ps.labels.push_back(c);
        }
    }
    jitter_duplicates(ps.points);
    return ps;
}

// Minimum dE00 over all class pairs and class/background pairs.
inline double min_pairwise(const Palette &p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        best = std::min(best, ciede2000(p.colors[i], p.background));
        for (std::size_t j = i + 1; j < p.size(); ++j)
            best = std::min(best, ciede2000(p.colors[i], p.colors[j]));
    }
    return best;
}

} // namespace palopt::testing

namespace palopt::testing {

// Point distinctness evaluated point by point, straight from its
// definition: each point averages dE00 * (1 / d) over its neighbors, and
// the per-point values are summed.
inline double direct_point_distinctness(const LabeledPointSet &ps, const NeighborGraph &g,
                                        const Palette &p) {
    double total = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto &nbs = g.neighbors[i];
        if (nbs.empty())
            continue;
        double s = 0.0;
        for (const auto &nb : nbs)
            s += ciede2000(p.colors[ps.labels[i]], p.colors[ps.labels[nb.index]]) / nb.distance;
        total += s / static_cast<double>(nbs.size());
    }
    return total;
}

// Mean cosine distance over pairs, from the raw rows of the nearest bins.
inline double direct_name_difference(const NameCountMatrix &m, const Palette &p) {
    if (p.size() < 2)
        return 0.0;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const auto a = m.row(m.nearest_bin(p.colors[i]));
            const auto b = m.row(m.nearest_bin(p.colors[j]));
            double dot = 0, na = 0, nb = 0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                dot += a[k] * b[k];
                na += a[k] * a[k];
                nb += b[k] * b[k];
            }
            sum += std::clamp(1.0 - dot / std::sqrt(na * nb), 0.0, 1.0);
            ++pairs;
        }
    return sum / static_cast<double>(pairs);
}

} // namespace palopt::testing
