#include "ciede_pairs.hpp"
#include "support.hpp"

#include "palopt/color.hpp"
#include "palopt/error.hpp"

#include <doctest.h>

using namespace palopt;
using doctest::Approx;

TEST_SUITE("color") {

TEST_CASE("srgb to lab anchors") {
    const auto white = srgb_to_lab({255, 255, 255});
    CHECK(std::abs(white.L - 100.0) < 0.01);
    CHECK(std::abs(white.a) < 0.01);
    CHECK(std::abs(white.b) < 0.01);

    const auto black = srgb_to_lab({0, 0, 0});
    CHECK(std::abs(black.L) < 0.01);
    CHECK(std::abs(black.a) < 0.01);
    CHECK(std::abs(black.b) < 0.01);

    // scikit-image rgb2lab reference.
    const auto red = srgb_to_lab({255, 0, 0});
    CHECK(std::abs(red.L - 53.2406) < 0.01);
    CHECK(std::abs(red.a - 80.0923) < 0.01);
    CHECK(std::abs(red.b - 67.2028) < 0.01);
}

TEST_CASE("lab to srgb anchors and clamping") {
    CHECK(lab_to_srgb({100, 0, 0}).rgb == RgbColor{255, 255, 255});
    CHECK(lab_to_srgb({0, 0, 0}).rgb == RgbColor{0, 0, 0});
    const auto red = lab_to_srgb({53.24, 80.09, 67.20});
    CHECK(red.in_gamut);
    CHECK(std::abs(red.rgb.r - 255) <= 1);
    CHECK(red.rgb.g <= 1);
    CHECK(red.rgb.b <= 1);

    const auto wild = lab_to_srgb({50, 120, -120});
    CHECK_FALSE(wild.in_gamut);
    CHECK_FALSE(in_srgb_gamut({50, 120, -120}));
}

TEST_CASE("round trip through srgb stays within 0.01") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const SrgbUnit u{rng.uniform(), rng.uniform(), rng.uniform()};
        const LabColor lab = srgb_unit_to_lab(u);
        CHECK(in_srgb_gamut(lab));
        const SrgbUnit back = lab_to_srgb_unit(lab);
        const LabColor again = srgb_unit_to_lab(back);
        CHECK(std::abs(again.L - lab.L) < 0.01);
        CHECK(std::abs(again.a - lab.a) < 0.01);
        CHECK(std::abs(again.b - lab.b) < 0.01);
    }
}

TEST_CASE("every 8-bit color survives hex to lab to hex") {
    for (int r = 0; r < 256; r += 5)
        for (int g = 0; g < 256; g += 5)
            for (int b = 0; b < 256; b += 5) {
                const RgbColor c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                 static_cast<std::uint8_t>(b)};
                REQUIRE(lab_to_srgb(srgb_to_lab(c)).rgb == c);
            }
}

TEST_CASE("ciede2000 reference pairs") {
    for (const auto &p : testing::kCiedePairs) {
        CAPTURE(p.expected);
        CHECK(std::abs(ciede2000(p.c1, p.c2) - p.expected) < 1e-4);
        CHECK(ciede2000(p.c1, p.c2) == Approx(ciede2000(p.c2, p.c1)).epsilon(1e-12));
    }
}

TEST_CASE("ciede2000 basic properties") {
    CHECK(ciede2000({100, 0, 0}, {0, 0, 0}) == Approx(100.0).epsilon(1e-9));
    CHECK(ciede2000({42, 10, -7}, {42, 10, -7}) == 0.0);
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const LabColor a{rng.uniform(0, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const LabColor b{rng.uniform(0, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        CHECK(ciede2000(a, b) >= 0.0);
    }
}

TEST_CASE("hex parsing and formatting") {
    CHECK(parse_hex("#ff8000") == RgbColor{255, 128, 0});
    CHECK(parse_hex("#FF8000") == RgbColor{255, 128, 0});
    CHECK(to_hex(RgbColor{255, 128, 0}) == "#FF8000");
    CHECK(to_hex(LabColor{100, 0, 0}) == "#FFFFFF");
    CHECK_THROWS_AS(parse_hex("#GG0000"), ParseError);
    CHECK_THROWS_AS(parse_hex("FF0000"), ParseError);
    CHECK_THROWS_AS(parse_hex("#FFF"), ParseError);
}

TEST_CASE("lch helpers") {
    const LabColor c = from_lch(60, 40, 135);
    CHECK(chroma(c) == Approx(40));
    CHECK(hue_degrees(c) == Approx(135));
    CHECK(hue_degrees({50, 0, 0}) == 0.0);
    CHECK(hue_degrees({50, 10, -0.0001}) > 359.0);
}

TEST_CASE("clamp_lab bounds channels") {
    const auto c = clamp_lab({120, -300, 300});
    CHECK(c.L == 100);
    CHECK(c.a == -128);
    CHECK(c.b == 128);
}

}
