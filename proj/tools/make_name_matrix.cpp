// Writes a synthetic color-name count matrix on a regular LAB grid.
//
// Each bin gets a soft membership per basic color term, computed from the
// term's LCh region in the default hue-term table: full inside the region,
// falling off smoothly with the distance to it. Counts are membership
// scaled to 1000 plus one, so every row has a usable direction.

#include "palopt/color.hpp"
#include "palopt/color_filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace palopt;

namespace {

constexpr double kSpacing = 5.0;
// Grid box; a and b span the sRGB gamut's extent.
constexpr double kAMin = -90.0, kAMax = 100.0;
constexpr double kBMin = -110.0, kBMax = 95.0;

double outside(const Interval &iv, double x) {
    if (x < iv.lo)
        return iv.lo - x;
    if (std::isfinite(iv.hi) && x >= iv.hi)
        return x - iv.hi;
    return 0.0;
}

double hue_outside(const Interval &iv, double h) {
    auto arc = [](double from, double to) { return std::fmod(to - from + 360.0, 360.0); };
    const double width = arc(iv.lo, iv.hi);
    if (arc(iv.lo, h) < width)
        return 0.0;
    return std::min(arc(h, iv.lo), arc(iv.hi, h));
}

double membership(const TermRange &r, const LabColor &c) {
    const double C = chroma(c);
    const double dl = outside(r.lightness, c.L) / 8.0;
    const double dc = outside(r.chroma, C) / 6.0;
    double m = std::exp(-(dl * dl + dc * dc));
    if (r.hue) {
        const double dh = hue_outside(*r.hue, hue_degrees(c)) / 12.0;
        // Hue is meaningless near the neutral axis.
        const double colorfulness = 1.0 - std::exp(-(C / 10.0) * (C / 10.0));
        m *= std::exp(-dh * dh) * colorfulness;
    }
    return m;
}

} // namespace

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: make_name_matrix OUTPUT.csv\n";
        return 1;
    }
    const auto table = HueTermTable::defaults();
    const auto &terms = all_color_terms();

    std::vector<LabColor> bins;
    for (double L = 0.0; L <= 100.0; L += kSpacing)
        for (double a = kAMin; a <= kAMax; a += kSpacing)
            for (double b = kBMin; b <= kBMax; b += kSpacing)
                bins.push_back({L, a, b});

    std::ofstream out(argv[1], std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << argv[1] << "\n";
        return 1;
    }
    out << "bins=" << bins.size() << ",terms=" << terms.size() << ",spacing=" << kSpacing << "\n";
    for (std::size_t t = 0; t < terms.size(); ++t)
        out << (t ? "," : "") << term_name(terms[t]);
    out << "\n";
    for (const auto &c : bins) {
        out << c.L << ',' << c.a << ',' << c.b;
        for (ColorTerm t : terms)
            out << ',' << 1 + std::lround(1000.0 * membership(table.range(t), c));
        out << "\n";
    }
    return out ? 0 : 1;
}
