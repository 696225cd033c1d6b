#pragma once

#include "palopt/color.hpp"
#include "palopt/random.hpp"

#include <array>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace palopt {

// The 11 basic color terms used as the hue-filter vocabulary.
enum class ColorTerm {
    Blue,
    Brown,
    Green,
    Orange,
    Pink,
    Purple,
    Red,
    Yellow,
    Black,
    Grey,
    White,
};

inline constexpr std::size_t kColorTermCount = 11;

const std::array<ColorTerm, kColorTermCount> &all_color_terms();
std::string_view term_name(ColorTerm t);
// Throws ValidationError for an unknown name. Accepts "gray" for grey.
ColorTerm parse_term(std::string_view name);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Half-open [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = kUnbounded;

    bool contains(double x) const { return x >= lo && x < hi; }
};

// Region of LCh space covered by one term. A hue interval with lo > hi
// wraps through 0 degrees (red is [355, 20)).
struct TermRange {
    std::optional<Interval> hue;
    Interval lightness;
    Interval chroma;

    bool contains(const LabColor &c) const;
};

class HueTermTable {
public:
    static HueTermTable defaults();

    // JSON object keyed by term name; each value may carry "hue",
    // "lightness" and "chroma" pairs (null means unbounded). Terms absent
    // from the file keep their default ranges.
    static HueTermTable load(const std::filesystem::path &path);
    static HueTermTable from_json_text(std::string_view text);

    const TermRange &range(ColorTerm t) const {
        return ranges_[static_cast<std::size_t>(t)];
    }
    void set_range(ColorTerm t, const TermRange &r) {
        ranges_[static_cast<std::size_t>(t)] = r;
    }

    std::vector<ColorTerm> classify(const LabColor &c) const;

private:
    std::array<TermRange, kColorTermCount> ranges_{};
};

// Strongly disliked dark-yellow wedge: excluded when BOTH the hue and the
// lightness fall inside their closed intervals.
struct ExcludedBand {
    double hue_min = 85.0;
    double hue_max = 114.0;
    double lightness_min = 35.0;
    double lightness_max = 75.0;

    bool contains(const LabColor &c) const;
};

struct ColorFilter {
    double lightness_min = 0.0;
    double lightness_max = 100.0;
    std::optional<ExcludedBand> excluded = ExcludedBand{};
    // Empty means every hue is allowed.
    std::vector<ColorTerm> allowed_terms;
    HueTermTable terms = HueTermTable::defaults();

    // Throws ValidationError.
    void validate() const;
};

bool passes_filter(const LabColor &c, const ColorFilter &f);

// A color the optimizer may use: inside the sRGB gamut and passing the filter.
bool is_candidate(const LabColor &c, const ColorFilter &f);

inline constexpr int kSampleAttempts = 10000;

// Rejection sampling; throws FilterUnsatisfiable after kSampleAttempts.
LabColor sample_candidate(const ColorFilter &f, Rng &rng);

// Candidate lightness range for a background: dark backgrounds lift the
// lower bound, light ones lower the upper bound.
std::pair<double, double> lightness_range_for_background(const LabColor &background);

} // namespace palopt
