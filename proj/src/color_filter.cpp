#include "palopt/color_filter.hpp"
#include "palopt/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace palopt {

namespace {

constexpr std::array<std::string_view, kColorTermCount> kTermNames = {
    "blue", "brown", "green",  "orange", "pink",  "purple",
    "red",  "yellow", "black", "grey",   "white"};

Interval parse_interval(const nlohmann::json &j, std::string_view what) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(std::string(what) + ": expected [lo, hi]");
    Interval out;
    out.lo = j[0].is_null() ? -kUnbounded : j[0].get<double>();
    out.hi = j[1].is_null() ? kUnbounded : j[1].get<double>();
    return out;
}

} // namespace

const std::array<ColorTerm, kColorTermCount> &all_color_terms() {
    static constexpr std::array<ColorTerm, kColorTermCount> terms = {
        ColorTerm::Blue,  ColorTerm::Brown,  ColorTerm::Green, ColorTerm::Orange,
        ColorTerm::Pink,  ColorTerm::Purple, ColorTerm::Red,   ColorTerm::Yellow,
        ColorTerm::Black, ColorTerm::Grey,   ColorTerm::White};
    return terms;
}

std::string_view term_name(ColorTerm t) {
    return kTermNames[static_cast<std::size_t>(t)];
}

ColorTerm parse_term(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "gray")
        lower = "grey";
    for (std::size_t i = 0; i < kTermNames.size(); ++i)
        if (kTermNames[i] == lower)
            return static_cast<ColorTerm>(i);
    throw ValidationError("unknown color term '" + std::string(name) + "'");
}

bool TermRange::contains(const LabColor &c) const {
    if (!lightness.contains(c.L) || !chroma.contains(palopt::chroma(c)))
        return false;
    if (!hue)
        return true;
    const double h = hue_degrees(c);
    if (hue->lo <= hue->hi)
        return hue->contains(h);
    return h >= hue->lo || h < hue->hi;
}

HueTermTable HueTermTable::defaults() {
    HueTermTable t;
    auto chromatic = [&](ColorTerm term, double h0, double h1,
                         Interval lightness = {}) {
        t.set_range(term, TermRange{Interval{h0, h1}, lightness, Interval{}});
    };
    chromatic(ColorTerm::Red, 355.0, 20.0);
    chromatic(ColorTerm::Orange, 20.0, 50.0);
    chromatic(ColorTerm::Brown, 20.0, 50.0, {20.0, 50.0});
    chromatic(ColorTerm::Yellow, 50.0, 90.0);
    chromatic(ColorTerm::Green, 90.0, 200.0);
    chromatic(ColorTerm::Blue, 200.0, 280.0);
    // Dark magentas read as purple, light ones as pink.
    chromatic(ColorTerm::Purple, 280.0, 355.0);
    chromatic(ColorTerm::Pink, 330.0, 355.0, {65.0, kUnbounded});
    t.set_range(ColorTerm::Black, TermRange{std::nullopt, {0.0, 20.0}, {0.0, 12.0}});
    t.set_range(ColorTerm::White, TermRange{std::nullopt, {92.0, kUnbounded}, {0.0, 10.0}});
    t.set_range(ColorTerm::Grey, TermRange{std::nullopt, {20.0, 92.0}, {0.0, 12.0}});
    return t;
}

HueTermTable HueTermTable::from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("hue-term table: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("hue-term table: expected a JSON object");
    HueTermTable table = defaults();
    for (const auto &[key, value] : doc.items()) {
        const ColorTerm term = parse_term(key);
        if (!value.is_object())
            throw ValidationError("hue-term table: entry '" + key + "' must be an object");
        TermRange r;
        if (value.contains("hue") && !value["hue"].is_null())
            r.hue = parse_interval(value["hue"], key + ".hue");
        if (value.contains("lightness"))
            r.lightness = parse_interval(value["lightness"], key + ".lightness");
        if (value.contains("chroma"))
            r.chroma = parse_interval(value["chroma"], key + ".chroma");
        table.set_range(term, r);
    }
    return table;
}

HueTermTable HueTermTable::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open hue-term table " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::vector<ColorTerm> HueTermTable::classify(const LabColor &c) const {
    std::vector<ColorTerm> out;
    for (ColorTerm t : all_color_terms())
        if (range(t).contains(c))
            out.push_back(t);
    return out;
}

bool ExcludedBand::contains(const LabColor &c) const {
    const double h = hue_degrees(c);
    return h >= hue_min && h <= hue_max && c.L >= lightness_min &&
           c.L <= lightness_max;
}

void ColorFilter::validate() const {
    if (!(lightness_min >= 0.0 && lightness_max <= 100.0 &&
          lightness_min <= lightness_max))
        throw ValidationError("lightness range must be a sub-interval of [0,100]");
}

bool passes_filter(const LabColor &c, const ColorFilter &f) {
    if (c.L < f.lightness_min || c.L > f.lightness_max)
        return false;
    if (f.excluded && f.excluded->contains(c))
        return false;
    if (f.allowed_terms.empty())
        return true;
    return std::any_of(f.allowed_terms.begin(), f.allowed_terms.end(),
                       [&](ColorTerm t) { return f.terms.range(t).contains(c); });
}

bool is_candidate(const LabColor &c, const ColorFilter &f) {
    return passes_filter(c, f) && in_srgb_gamut(c);
}

LabColor sample_candidate(const ColorFilter &f, Rng &rng) {
    for (int i = 0; i < kSampleAttempts; ++i) {
        const LabColor c{rng.uniform(f.lightness_min, f.lightness_max),
                         rng.uniform(kLabMin, kLabMax),
                         rng.uniform(kLabMin, kLabMax)};
        if (is_candidate(c, f))
            return c;
    }
    throw FilterUnsatisfiable("no color satisfies the filter after " +
                              std::to_string(kSampleAttempts) + " draws");
}

std::pair<double, double> lightness_range_for_background(const LabColor &background) {
    const double bgL = background.L;
    if (bgL < 50.0)
        return {std::max(35.0, bgL + 25.0), 95.0};
    return {15.0, std::min(75.0, bgL - 25.0)};
}

} // namespace palopt
