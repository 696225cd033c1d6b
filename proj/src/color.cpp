#include "palopt/color.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace palopt {

namespace {

// D65 reference white, Y normalized to 1.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

constexpr double kGamutTolerance = 1e-7;

double to_linear(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double to_gamma(double v) {
    if (v <= 0.0031308)
        return 12.92 * v;
    return 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
    const double f3 = f * f * f;
    return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

std::array<double, 3> lab_to_linear(const LabColor &c) {
    const double fy = (c.L + 16.0) / 116.0;
    const double fx = fy + c.a / 500.0;
    const double fz = fy - c.b / 200.0;
    const double y = c.L > kKappa * kEpsilon ? fy * fy * fy : c.L / kKappa;
    const double x = lab_f_inv(fx) * kWhiteX;
    const double z = lab_f_inv(fz) * kWhiteZ;
    const double yy = y * kWhiteY;
    return {3.2404542 * x - 1.5371385 * yy - 0.4985314 * z,
            -0.9692660 * x + 1.8760108 * yy + 0.0415560 * z,
            0.0556434 * x - 0.2040259 * yy + 1.0572252 * z};
}

int hex_digit(char ch) {
    if (ch >= '0' && ch <= '9')
        return ch - '0';
    if (ch >= 'a' && ch <= 'f')
        return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F')
        return ch - 'A' + 10;
    return -1;
}

constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

} // namespace

LabColor clamp_lab(const LabColor &c) {
    return {std::clamp(c.L, 0.0, 100.0), std::clamp(c.a, kLabMin, kLabMax),
            std::clamp(c.b, kLabMin, kLabMax)};
}

LabColor srgb_unit_to_lab(const SrgbUnit &c) {
    const double r = to_linear(c[0]);
    const double g = to_linear(c[1]);
    const double b = to_linear(c[2]);
    const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / kWhiteX;
    const double y = (0.2126729 * r + 0.7151522 * g + 0.0721750 * b) / kWhiteY;
    const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / kWhiteZ;
    const double fx = lab_f(x);
    const double fy = lab_f(y);
    const double fz = lab_f(z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabColor srgb_to_lab(const RgbColor &c) {
    return srgb_unit_to_lab({c.r / 255.0, c.g / 255.0, c.b / 255.0});
}

SrgbUnit lab_to_srgb_unit(const LabColor &c) {
    const auto lin = lab_to_linear(c);
    SrgbUnit out{};
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = lin[i] < 0.0 ? -to_gamma(-lin[i]) : to_gamma(lin[i]);
    return out;
}

bool in_srgb_gamut(const LabColor &c) {
    const auto lin = lab_to_linear(c);
    return std::all_of(lin.begin(), lin.end(), [](double v) {
        return v >= -kGamutTolerance && v <= 1.0 + kGamutTolerance;
    });
}

SrgbConversion lab_to_srgb(const LabColor &c) {
    const auto unit = lab_to_srgb_unit(c);
    SrgbConversion out;
    out.in_gamut = in_srgb_gamut(c);
    auto quantize = [](double v) {
        return static_cast<std::uint8_t>(
            std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    out.rgb = {quantize(unit[0]), quantize(unit[1]), quantize(unit[2])};
    return out;
}

double chroma(const LabColor &c) { return std::hypot(c.a, c.b); }

double hue_degrees(const LabColor &c) {
    if (c.a == 0.0 && c.b == 0.0)
        return 0.0;
    double h = rad2deg(std::atan2(c.b, c.a));
    if (h < 0.0)
        h += 360.0;
    return h >= 360.0 ? h - 360.0 : h;
}

LabColor from_lch(double L, double C, double hue_deg) {
    const double h = deg2rad(hue_deg);
    return {L, C * std::cos(h), C * std::sin(h)};
}

double ciede2000(const LabColor &c1, const LabColor &c2) {
    constexpr double pow25_7 = 6103515625.0; // 25^7

    const double C1 = std::hypot(c1.a, c1.b);
    const double C2 = std::hypot(c2.a, c2.b);
    const double Cbar = 0.5 * (C1 + C2);
    const double Cbar7 = std::pow(Cbar, 7.0);
    const double G = 0.5 * (1.0 - std::sqrt(Cbar7 / (Cbar7 + pow25_7)));

    const double a1p = (1.0 + G) * c1.a;
    const double a2p = (1.0 + G) * c2.a;
    const double C1p = std::hypot(a1p, c1.b);
    const double C2p = std::hypot(a2p, c2.b);

    auto hue = [](double b, double ap) {
        if (b == 0.0 && ap == 0.0)
            return 0.0;
        double h = std::atan2(b, ap);
        if (h < 0.0)
            h += 2.0 * std::numbers::pi;
        return h;
    };
    const double h1p = hue(c1.b, a1p);
    const double h2p = hue(c2.b, a2p);

    const double dLp = c2.L - c1.L;
    const double dCp = C2p - C1p;

    const double CpProd = C1p * C2p;
    double dhp = 0.0;
    if (CpProd != 0.0) {
        dhp = h2p - h1p;
        if (dhp > std::numbers::pi)
            dhp -= 2.0 * std::numbers::pi;
        else if (dhp < -std::numbers::pi)
            dhp += 2.0 * std::numbers::pi;
    }
    const double dHp = 2.0 * std::sqrt(CpProd) * std::sin(0.5 * dhp);

    const double Lbarp = 0.5 * (c1.L + c2.L);
    const double Cbarp = 0.5 * (C1p + C2p);

    double hbarp = h1p + h2p;
    if (CpProd != 0.0) {
        if (std::abs(h1p - h2p) <= std::numbers::pi)
            hbarp *= 0.5;
        else if (h1p + h2p < 2.0 * std::numbers::pi)
            hbarp = 0.5 * (hbarp + 2.0 * std::numbers::pi);
        else
            hbarp = 0.5 * (hbarp - 2.0 * std::numbers::pi);
    }

    const double T = 1.0 - 0.17 * std::cos(hbarp - deg2rad(30.0)) +
                     0.24 * std::cos(2.0 * hbarp) +
                     0.32 * std::cos(3.0 * hbarp + deg2rad(6.0)) -
                     0.20 * std::cos(4.0 * hbarp - deg2rad(63.0));

    const double dTheta =
        deg2rad(30.0) *
        std::exp(-std::pow((rad2deg(hbarp) - 275.0) / 25.0, 2.0));
    const double Cbarp7 = std::pow(Cbarp, 7.0);
    const double RC = 2.0 * std::sqrt(Cbarp7 / (Cbarp7 + pow25_7));
    const double Lm50 = (Lbarp - 50.0) * (Lbarp - 50.0);
    const double SL = 1.0 + 0.015 * Lm50 / std::sqrt(20.0 + Lm50);
    const double SC = 1.0 + 0.045 * Cbarp;
    const double SH = 1.0 + 0.015 * Cbarp * T;
    const double RT = -std::sin(2.0 * dTheta) * RC;

    const double tL = dLp / SL;
    const double tC = dCp / SC;
    const double tH = dHp / SH;
    return std::sqrt(tL * tL + tC * tC + tH * tH + RT * tC * tH);
}

RgbColor parse_hex(std::string_view hex) {
    if (hex.size() != 7 || hex[0] != '#')
        throw ParseError("expected color of the form #RRGGBB, got '" +
                         std::string(hex) + "'");
    std::array<std::uint8_t, 3> ch{};
    for (std::size_t i = 0; i < 3; ++i) {
        const int hi = hex_digit(hex[1 + 2 * i]);
        const int lo = hex_digit(hex[2 + 2 * i]);
        if (hi < 0 || lo < 0)
            throw ParseError("invalid hex digit in '" + std::string(hex) + "'");
        ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return {ch[0], ch[1], ch[2]};
}

std::string to_hex(const RgbColor &c) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out = "#";
    for (std::uint8_t v : {c.r, c.g, c.b}) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0xF]);
    }
    return out;
}

std::string to_hex(const LabColor &c) { return to_hex(lab_to_srgb(c).rgb); }

LabColor lab_from_hex(std::string_view hex) { return srgb_to_lab(parse_hex(hex)); }

} // namespace palopt
