#include "support.hpp"

#include "palopt/error.hpp"
#include "palopt/name_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace palopt;
using doctest::Approx;

namespace {

const NameCountMatrix &tiny() {
    static const NameCountMatrix m = NameCountMatrix::load(testing::test_data("tiny_names.csv"));
    return m;
}

double cosine_distance(std::span<const double> x, std::span<const double> y) {
    double dot = 0, nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    return 1.0 - dot / std::sqrt(nx * ny);
}

} // namespace

TEST_SUITE("name_model") {

TEST_CASE("loads the tiny matrix") {
    const auto &m = tiny();
    CHECK(m.bin_count() == 4);
    CHECK(m.term_count() == 3);
    CHECK(m.spacing() == 50);
    CHECK(m.terms()[1] == "green");
    CHECK(m.bin_center(2) == LabColor{50, 50, 0});
}

TEST_CASE("nearest bin with ties to the lower index") {
    const auto &m = tiny();
    CHECK(m.nearest_bin({40, 5, 5}) == 1);
    CHECK(m.nearest_bin({50, 25, 0}) == 1);
    CHECK(m.nearest_bin({50, 49, 0}) == 2);
    CHECK(m.nearest_bin({-20, -500, 0}) == 0);
}

TEST_CASE("nearest bin agrees with a linear scan on the full matrix") {
    const auto &m = testing::default_names();
    Rng rng(21);
    for (int i = 0; i < 3000; ++i) {
        const LabColor c{rng.uniform(-5, 105), rng.uniform(-140, 140), rng.uniform(-140, 140)};
        std::size_t best = 0;
        double best_d = 1e300;
        for (std::size_t b = 0; b < m.bin_count(); ++b) {
            const auto &q = m.bin_center(b);
            const double d = (c.L - q.L) * (c.L - q.L) + (c.a - q.a) * (c.a - q.a) +
                             (c.b - q.b) * (c.b - q.b);
            if (d < best_d) {
                best_d = d;
                best = b;
            }
        }
        REQUIRE(m.nearest_bin(c) == best);
    }
}

TEST_CASE("name difference is cosine distance") {
    CHECK(name_difference({{10, 0, 0}}, {{0, 10, 0}}) == Approx(1.0));
    CHECK(name_difference({{1, 1, 1}}, {{10, 0, 0}}) == Approx(1.0 - 1.0 / std::sqrt(3.0)));
    CHECK(name_difference({{3, 4, 0}}, {{6, 8, 0}}) == Approx(0.0));
    CHECK_THROWS_AS(name_difference({{0, 0, 0}}, {{1, 0, 0}}), DegenerateVector);
    CHECK_THROWS_AS(name_difference({{1, 0}}, {{1, 0, 0}}), SizeMismatch);
}

TEST_CASE("bin name difference matches a direct cosine") {
    const auto &m = testing::default_names();
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto a = rng.index(m.bin_count());
        const auto b = rng.index(m.bin_count());
        CHECK(m.bin_name_difference(a, b) ==
              Approx(a == b ? 0.0 : cosine_distance(m.row(a), m.row(b))).epsilon(1e-12));
    }
}

TEST_CASE("palette name difference is the mean over pairs") {
    const auto &m = tiny();
    const Palette p({{50, 0, 0}, {50, 50, 0}, {0, 0, 0}}, {100, 0, 0});
    const double expected =
        (1.0 + 2.0 * (1.0 - 1.0 / std::sqrt(3.0))) / 3.0;
    CHECK(palette_name_difference(m, p) == Approx(expected));
    CHECK_THROWS_AS(palette_name_difference(m, Palette({{50, 0, 0}}, {100, 0, 0})),
                    TooFewColors);
}

TEST_CASE("malformed matrices are rejected") {
    CHECK_THROWS_AS(NameCountMatrix::parse("bins=1,terms=2,spacing=5\na,b\n0,0,0,1\n"),
                    ParseError);
    CHECK_THROWS_AS(NameCountMatrix::parse("bins=2,terms=1,spacing=5\na\n0,0,0,1\n"),
                    ParseError);
    CHECK_THROWS_AS(NameCountMatrix::parse("bins=1,terms=1,spacing=5\na\n0,0,0,-1\n"),
                    ValidationError);
    CHECK_THROWS_AS(NameCountMatrix::parse("bins=1,terms=1,spacing=5\na\n0,0,0,0\n"),
                    ValidationError);
    CHECK_THROWS_AS(
        NameCountMatrix::parse("bins=2,terms=1,spacing=5\na\n0,0,0,1\n2,0,0,1\n"),
        ValidationError);
    CHECK_THROWS_AS(NameCountMatrix::load("/nonexistent/names.csv"), ParseError);
}

}
