#pragma once

#include "palopt/color.hpp"

#include <cstddef>
#include <vector>

namespace palopt {

// One color per class plus the background. `locked[i]` marks colors the
// optimizer must leave untouched (palette completion).
struct Palette {
    std::vector<LabColor> colors;
    LabColor background{100.0, 0.0, 0.0};
    std::vector<bool> locked;

    Palette() = default;
    Palette(std::vector<LabColor> class_colors, LabColor bg)
        : colors(std::move(class_colors)), background(bg),
          locked(colors.size(), false) {}

    std::size_t size() const { return colors.size(); }
    bool is_locked(std::size_t i) const { return i < locked.size() && locked[i]; }

    friend bool operator==(const Palette &, const Palette &) = default;
};

} // namespace palopt
