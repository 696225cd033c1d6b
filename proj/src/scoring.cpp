#include "palopt/scoring.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace palopt {

ClassPairWeights precompute_pair_weights(const LabeledPointSet &ps, const NeighborGraph &g) {
    if (g.point_count() != ps.size())
        throw SizeMismatch("neighbor graph has " + std::to_string(g.point_count()) +
                           " points, point set has " + std::to_string(ps.size()));
    ClassPairWeights w(ps.class_count);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto &nbs = g.neighbors[i];
        if (nbs.empty())
            continue;
        const double inv = 1.0 / static_cast<double>(nbs.size());
        const std::size_t j = ps.labels[i];
        for (const auto &nb : nbs)
            w(j, ps.labels[nb.index]) += inv * neighbor_weight(nb.distance);
    }
    return w;
}

void ScoreWeights::validate() const {
    for (double o : omega)
        if (!(o >= 0.0 && o <= 1.0))
            throw InvalidConfig("term weights must lie in [0, 1]");
    if (omega[0] == 0.0 && omega[1] == 0.0 && omega[2] == 0.0)
        throw InvalidConfig("at least one term weight must be positive");
    if (!(nd_factor > 0.0) || !(cd_factor > 0.0))
        throw InvalidConfig("term factors must be positive");
    if (!(pd_norm > 0.0))
        throw InvalidConfig("point distinctness normalizer must be positive");
}

double point_distinctness(const ClassPairWeights &w, const Palette &p) {
    const std::size_t m = w.class_count();
    if (p.size() != m)
        throw SizeMismatch("palette has " + std::to_string(p.size()) + " colors for " +
                           std::to_string(m) + " classes");
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            if (j != k && w(j, k) != 0.0)
                sum += w(j, k) * ciede2000(p.colors[j], p.colors[k]);
    return sum;
}

double color_discrimination(const Palette &p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = p.size();
    for (std::size_t i = 0; i < m; ++i) {
        best = std::min(best, ciede2000(p.colors[i], p.background));
        for (std::size_t j = i + 1; j < m; ++j)
            best = std::min(best, ciede2000(p.colors[i], p.colors[j]));
    }
    return m == 0 ? 0.0 : best;
}

EnergyBreakdown score_palette(const ClassPairWeights &w, const NameCountMatrix &nm,
                              const Palette &p, const ScoreWeights &sw) {
    EnergyBreakdown e;
    e.point_distinctness_raw = point_distinctness(w, p);
    e.point_distinctness = e.point_distinctness_raw / sw.pd_norm;
    e.name_difference = p.size() >= 2 ? palette_name_difference(nm, p) : 0.0;
    e.color_discrimination = color_discrimination(p);
    e.total = sw.omega[0] * e.point_distinctness +
              sw.omega[1] * sw.nd_factor * e.name_difference +
              sw.omega[2] * sw.cd_factor * e.color_discrimination;
    return e;
}

double total_energy(const ClassPairWeights &w, const NameCountMatrix &nm, const Palette &p,
                    const ScoreWeights &sw) {
    return score_palette(w, nm, p, sw).total;
}

PaletteScorer::PaletteScorer(const ClassPairWeights &w, const NameCountMatrix &nm,
                             const ScoreWeights &sw, Palette p)
    : w_(&w), nm_(&nm), sw_(sw), palette_(std::move(p)) {
    const std::size_t m = palette_.size();
    if (w.class_count() != m)
        throw SizeMismatch("palette has " + std::to_string(m) + " colors for " +
                           std::to_string(w.class_count()) + " classes");
    palette_.locked.resize(m, false);
    pair_w_.assign(m * m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            if (j != k)
                pair_w_[j * m + k] = w(j, k) + w(k, j);
    dist_.assign((m + 1) * (m + 1), 0.0);
    names_.assign(m * m, 0.0);
    bins_.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        bins_[i] = nm.nearest_bin(palette_.colors[i]);
    for (std::size_t i = 0; i <= m; ++i)
        refresh_row(i);
}

void PaletteScorer::refresh_row(std::size_t i) {
    const std::size_t m = size();
    const std::size_t stride = m + 1;
    const LabColor &ci = color(i);
    for (std::size_t j = 0; j <= m; ++j) {
        const double d = i == j ? 0.0 : ciede2000(ci, color(j));
        dist_[i * stride + j] = d;
        dist_[j * stride + i] = d;
    }
    if (i == m)
        return;
    for (std::size_t j = 0; j < m; ++j) {
        const double nd = nm_->bin_name_difference(bins_[i], bins_[j]);
        names_[i * m + j] = nd;
        names_[j * m + i] = nd;
    }
}

void PaletteScorer::set_color(std::size_t i, const LabColor &c) {
    palette_.colors[i] = c;
    bins_[i] = nm_->nearest_bin(c);
    refresh_row(i);
}

void PaletteScorer::swap_colors(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    const std::size_t m = size();
    const std::size_t stride = m + 1;
    std::swap(palette_.colors[i], palette_.colors[j]);
    std::swap(bins_[i], bins_[j]);
    // Permute rows and columns i <-> j of both caches.
    for (std::size_t k = 0; k <= m; ++k)
        std::swap(dist_[i * stride + k], dist_[j * stride + k]);
    for (std::size_t k = 0; k <= m; ++k)
        std::swap(dist_[k * stride + i], dist_[k * stride + j]);
    for (std::size_t k = 0; k < m; ++k)
        std::swap(names_[i * m + k], names_[j * m + k]);
    for (std::size_t k = 0; k < m; ++k)
        std::swap(names_[k * m + i], names_[k * m + j]);
}

double PaletteScorer::raw_point_distinctness() const {
    const std::size_t m = size();
    const std::size_t stride = m + 1;
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k)
            sum += pair_w_[j * m + k] * dist_[j * stride + k];
    return sum;
}

EnergyBreakdown PaletteScorer::breakdown() const {
    const std::size_t m = size();
    const std::size_t stride = m + 1;
    EnergyBreakdown e;
    e.point_distinctness_raw = raw_point_distinctness();
    e.point_distinctness = e.point_distinctness_raw / sw_.pd_norm;

    double names = 0.0;
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
        min_d = std::min(min_d, dist_[j * stride + m]);
        for (std::size_t k = j + 1; k < m; ++k) {
            names += names_[j * m + k];
            min_d = std::min(min_d, dist_[j * stride + k]);
        }
    }
    e.name_difference =
        m >= 2 ? 2.0 * names / (static_cast<double>(m) * static_cast<double>(m - 1)) : 0.0;
    e.color_discrimination = m == 0 ? 0.0 : min_d;
    e.total = sw_.omega[0] * e.point_distinctness +
              sw_.omega[1] * sw_.nd_factor * e.name_difference +
              sw_.omega[2] * sw_.cd_factor * e.color_discrimination;
    return e;
}

} // namespace palopt
