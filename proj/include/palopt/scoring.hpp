#pragma once

#include "palopt/name_model.hpp"
#include "palopt/neighbor_graph.hpp"
#include "palopt/palette.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace palopt {

// Geometry of the point-distinctness term folded into an m x m matrix:
//   w[j][k] = sum over points x of class j of
//             (1 / |neighbors(x)|) * sum over neighbors y of class k of 1 / d(x, y)
// so that E_PD = sum_{j,k} w[j][k] * dE00(c_j, c_k) costs O(m^2).
class ClassPairWeights {
public:
    ClassPairWeights() = default;
    explicit ClassPairWeights(std::size_t classes)
        : classes_(classes), w_(classes * classes, 0.0) {}

    std::size_t class_count() const { return classes_; }
    double operator()(std::size_t j, std::size_t k) const { return w_[j * classes_ + k]; }
    double &operator()(std::size_t j, std::size_t k) { return w_[j * classes_ + k]; }

private:
    std::size_t classes_ = 0;
    std::vector<double> w_;
};

// Distance weighting of neighbors, g(d) = 1 / d.
inline double neighbor_weight(double d) { return 1.0 / d; }

ClassPairWeights precompute_pair_weights(const LabeledPointSet &ps, const NeighborGraph &g);

inline constexpr double kDefaultNameFactor = 2.0;
inline constexpr double kDefaultDiscriminationFactor = 0.1;

struct ScoreWeights {
    // Point distinctness, name difference, color discrimination.
    std::array<double, 3> omega{1.0, 1.0, 1.0};
    double nd_factor = kDefaultNameFactor;
    double cd_factor = kDefaultDiscriminationFactor;
    // E_PD is divided by this; the annealer binds it to the initial
    // palette's raw E_PD.
    double pd_norm = 1.0;

    // Throws InvalidConfig.
    void validate() const;
};

struct EnergyBreakdown {
    double point_distinctness_raw = 0.0;
    double point_distinctness = 0.0; // raw / pd_norm
    double name_difference = 0.0;
    double color_discrimination = 0.0;
    double total = 0.0;
};

// Throws SizeMismatch when the palette size differs from the class count.
double point_distinctness(const ClassPairWeights &w, const Palette &p);

// Minimum pairwise dE00 over the class colors and the background.
double color_discrimination(const Palette &p);

// omega0 * E_PD / pd_norm + omega1 * nd_factor * E_ND + omega2 * cd_factor * E_CD.
// A single-color palette has no name pairs and contributes E_ND = 0.
EnergyBreakdown score_palette(const ClassPairWeights &w, const NameCountMatrix &nm,
                              const Palette &p, const ScoreWeights &sw);
double total_energy(const ClassPairWeights &w, const NameCountMatrix &nm, const Palette &p,
                    const ScoreWeights &sw);

// Scores a palette under single-color edits in O(m) plus an O(m^2) sum,
// caching pairwise color and name distances. Slot m (== size()) is the
// background. Referenced weights and matrix must outlive the scorer.
class PaletteScorer {
public:
    PaletteScorer(const ClassPairWeights &w, const NameCountMatrix &nm, const ScoreWeights &sw,
                  Palette p);

    std::size_t size() const { return palette_.size(); }
    const Palette &palette() const { return palette_; }
    const LabColor &color(std::size_t i) const {
        return i == size() ? palette_.background : palette_.colors[i];
    }
    bool fixed(std::size_t i) const { return i == size() || palette_.is_locked(i); }
    double delta(std::size_t i, std::size_t j) const { return dist_[i * (size() + 1) + j]; }

    void set_color(std::size_t i, const LabColor &c);
    void swap_colors(std::size_t i, std::size_t j);

    const ScoreWeights &weights() const { return sw_; }
    void set_pd_norm(double norm) { sw_.pd_norm = norm; }

    double raw_point_distinctness() const;
    EnergyBreakdown breakdown() const;
    double energy() const { return breakdown().total; }

private:
    void refresh_row(std::size_t i);

    const ClassPairWeights *w_;
    const NameCountMatrix *nm_;
    ScoreWeights sw_;
    Palette palette_;
    std::vector<double> pair_w_;   // w[j][k] + w[k][j], m x m
    std::vector<double> dist_;     // (m+1) x (m+1) dE00
    std::vector<double> names_;    // m x m name difference
    std::vector<std::size_t> bins_;
};

} // namespace palopt
