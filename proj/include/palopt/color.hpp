#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace palopt {

// CIELAB coordinates, D65 white point, 2 degree observer.
struct LabColor {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const LabColor &, const LabColor &) = default;
};

// 8-bit sRGB.
struct RgbColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const RgbColor &, const RgbColor &) = default;
};

struct SrgbConversion {
    RgbColor rgb;
    bool in_gamut = true;
};

// Gamma-encoded sRGB channels in [0,1] without quantization or clamping.
using SrgbUnit = std::array<double, 3>;

inline constexpr double kLabMin = -128.0;
inline constexpr double kLabMax = 128.0;

// Clamps L to [0,100] and a, b to [-128,128].
LabColor clamp_lab(const LabColor &c);

LabColor srgb_to_lab(const RgbColor &c);
LabColor srgb_unit_to_lab(const SrgbUnit &c);
SrgbUnit lab_to_srgb_unit(const LabColor &c);

// Out-of-gamut colors are clamped channel-wise; `in_gamut` reports it.
SrgbConversion lab_to_srgb(const LabColor &c);

bool in_srgb_gamut(const LabColor &c);

// Chroma and hue angle in degrees [0,360) of the LCh representation.
double chroma(const LabColor &c);
double hue_degrees(const LabColor &c);
LabColor from_lch(double L, double C, double hue_deg);

// CIEDE2000 with unit parametric factors (kL = kC = kH = 1).
double ciede2000(const LabColor &c1, const LabColor &c2);

// "#RRGGBB", case-insensitive on input, uppercase on output. Throws
// ParseError on malformed input.
RgbColor parse_hex(std::string_view hex);
std::string to_hex(const RgbColor &c);
std::string to_hex(const LabColor &c);
LabColor lab_from_hex(std::string_view hex);

} // namespace palopt
