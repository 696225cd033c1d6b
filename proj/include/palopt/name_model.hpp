#pragma once

#include "palopt/color.hpp"
#include "palopt/palette.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace palopt {

// Counts of how often each color term was used for a color.
struct NameVector {
    std::vector<double> values;
};

// Term counts for colors binned on a regular LAB grid. Immutable once
// loaded; lookups are safe from any number of threads.
//
// File format (UTF-8, LF):
//   bins=<n>,terms=<k>,spacing=<s>
//   term_1,...,term_k
//   L,a,b,count_1,...,count_k      (n rows)
class NameCountMatrix {
public:
    // Throws ParseError (malformed text, header/row mismatch) or
    // ValidationError (negative counts, all-zero rows, off-grid bins).
    static NameCountMatrix load(const std::filesystem::path &path);
    static NameCountMatrix parse(std::string_view text);

    std::size_t bin_count() const { return bins_.size(); }
    std::size_t term_count() const { return terms_.size(); }
    double spacing() const { return spacing_; }
    const std::vector<std::string> &terms() const { return terms_; }
    const LabColor &bin_center(std::size_t i) const { return bins_[i]; }

    std::span<const double> row(std::size_t bin) const {
        return {counts_.data() + bin * terms_.size(), terms_.size()};
    }
    double row_norm(std::size_t bin) const { return norms_[bin]; }

    // Index of the bin whose center is nearest to `c` in Euclidean LAB
    // distance; ties go to the lower bin index.
    std::size_t nearest_bin(const LabColor &c) const;

    // Cosine distance between two bins' rows.
    double bin_name_difference(std::size_t i, std::size_t j) const;

private:
    std::size_t brute_force_nearest(const LabColor &c) const;
    void build_index();

    std::vector<LabColor> bins_;
    std::vector<std::string> terms_;
    std::vector<double> counts_;
    std::vector<double> norms_;
    double spacing_ = 1.0;

    // Dense grid over the bins' bounding box; -1 where no bin exists.
    std::array<double, 3> origin_{};
    std::array<std::size_t, 3> dims_{};
    std::vector<std::ptrdiff_t> cells_;
};

NameVector name_vector(const NameCountMatrix &m, const LabColor &c);

// 1 - cos(t1, t2). Throws DegenerateVector for an all-zero vector.
double name_difference(const NameVector &t1, const NameVector &t2);

// Mean name difference over all unordered pairs of class colors (the
// background is excluded). Throws TooFewColors for fewer than two colors.
double palette_name_difference(const NameCountMatrix &m, const Palette &p);

} // namespace palopt
