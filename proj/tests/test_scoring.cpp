#include "support.hpp"

#include "palopt/error.hpp"
#include "palopt/scoring.hpp"

#include <doctest.h>

using namespace palopt;
using doctest::Approx;

namespace {

Palette random_palette(std::size_t m, Rng &rng) {
    std::vector<LabColor> colors;
    for (std::size_t i = 0; i < m; ++i)
        colors.push_back({rng.uniform(0, 100), rng.uniform(-80, 80), rng.uniform(-80, 80)});
    return Palette(colors, {100, 0, 0});
}

} // namespace

TEST_SUITE("scoring") {

TEST_CASE("two mutual neighbors at distance 2") {
    LabeledPointSet ps;
    ps.points = {{0, 0}, {2, 0}};
    ps.labels = {0, 1};
    ps.class_count = 2;
    const auto g = alpha_shape_graph(ps, 10.0);
    const auto w = precompute_pair_weights(ps, g);
    CHECK(w(0, 1) == Approx(0.5));
    CHECK(w(1, 0) == Approx(0.5));
    const Palette p({{50, 40, 0}, {60, -30, 20}}, {100, 0, 0});
    CHECK(point_distinctness(w, p) == Approx(ciede2000(p.colors[0], p.colors[1])));
}

TEST_CASE("single class has zero point distinctness") {
    const auto ps = testing::gaussian_clusters(1, 50, 3);
    const auto w = precompute_pair_weights(ps, alpha_shape_graph(ps, default_alpha(ps.points)));
    const Palette p({{40, 20, 20}}, {100, 0, 0});
    CHECK(point_distinctness(w, p) == 0.0);
    ScoreWeights sw;
    sw.omega = {1, 0, 0};
    CHECK(total_energy(w, testing::default_names(), p, sw) == 0.0);
}

TEST_CASE("pair weights reproduce the per-point definition") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + rng.index(6);
        const auto ps = testing::gaussian_clusters(m, 5 + rng.index(30), 100 + trial, 40.0);
        for (const auto &g : {alpha_shape_graph(ps, default_alpha(ps.points)), knn_graph(ps, 3)}) {
            const auto w = precompute_pair_weights(ps, g);
            const Palette p = random_palette(m, rng);
            const double direct = testing::direct_point_distinctness(ps, g, p);
            CHECK(std::abs(point_distinctness(w, p) - direct) <= 1e-9 * std::max(1.0, direct));
        }
    }
}

TEST_CASE("color discrimination includes the background") {
    Palette p({{50, 0, 0}, {95, 0, 0}}, {100, 0, 0});
    CHECK(color_discrimination(p) == Approx(ciede2000({95, 0, 0}, {100, 0, 0})));
    p.colors[1] = p.colors[0];
    CHECK(color_discrimination(p) == 0.0);
}

TEST_CASE("breakdown recombines to the total") {
    Rng rng(2);
    const auto ps = testing::gaussian_clusters(5, 20, 8);
    const auto w = precompute_pair_weights(ps, alpha_shape_graph(ps, default_alpha(ps.points)));
    ScoreWeights sw;
    sw.omega = {0.3, 0.7, 0.9};
    sw.pd_norm = 12.5;
    const auto e = score_palette(w, testing::default_names(), random_palette(5, rng), sw);
    CHECK(e.point_distinctness == Approx(e.point_distinctness_raw / 12.5));
    const double total = 0.3 * e.point_distinctness + 0.7 * 2.0 * e.name_difference +
                         0.9 * 0.1 * e.color_discrimination;
    CHECK(std::abs(total - e.total) < 1e-9);
}

TEST_CASE("one color has no name pairs") {
    const ClassPairWeights w(1);
    const auto e = score_palette(w, testing::default_names(), Palette({{50, 30, 30}}, {100, 0, 0}),
                                 ScoreWeights{});
    CHECK(e.name_difference == 0.0);
}

TEST_CASE("swapping classes with symmetric weights keeps point distinctness") {
    ClassPairWeights w(3);
    w(0, 1) = w(1, 0) = 2.0;
    w(0, 2) = w(2, 0) = 1.0;
    w(1, 2) = w(2, 1) = 1.0;
    Palette p({{30, 10, 10}, {60, -40, 5}, {80, 5, 60}}, {100, 0, 0});
    const double before = point_distinctness(w, p);
    std::swap(p.colors[0], p.colors[1]);
    CHECK(point_distinctness(w, p) == Approx(before));
}

TEST_CASE("incremental scorer tracks the full evaluation") {
    Rng rng(5);
    const std::size_t m = 8;
    const auto ps = testing::gaussian_clusters(m, 15, 44);
    const auto w = precompute_pair_weights(ps, alpha_shape_graph(ps, default_alpha(ps.points)));
    ScoreWeights sw;
    sw.pd_norm = 3.0;
    const auto &names = testing::default_names();
    PaletteScorer scorer(w, names, sw, random_palette(m, rng));
    for (int step = 0; step < 300; ++step) {
        if (rng.uniform() < 0.3) {
            scorer.swap_colors(rng.index(m), rng.index(m));
        } else {
            scorer.set_color(rng.index(m),
                             {rng.uniform(0, 100), rng.uniform(-80, 80), rng.uniform(-80, 80)});
        }
        const auto full = score_palette(w, names, scorer.palette(), sw);
        const auto inc = scorer.breakdown();
        REQUIRE(std::abs(inc.total - full.total) < 1e-9);
        REQUIRE(std::abs(inc.name_difference - full.name_difference) < 1e-12);
        REQUIRE(inc.color_discrimination == Approx(full.color_discrimination));
    }
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j)
            CHECK(scorer.delta(i, j) == Approx(ciede2000(scorer.color(i), scorer.color(j))));
}

TEST_CASE("score weights validation") {
    ScoreWeights sw;
    CHECK_NOTHROW(sw.validate());
    sw.omega = {0, 0, 0};
    CHECK_THROWS_AS(sw.validate(), InvalidConfig);
    sw.omega = {1.5, 0, 0};
    CHECK_THROWS_AS(sw.validate(), InvalidConfig);
    sw.omega = {1, 1, 1};
    sw.pd_norm = 0;
    CHECK_THROWS_AS(sw.validate(), InvalidConfig);
}

TEST_CASE("size mismatch") {
    const ClassPairWeights w(3);
    CHECK_THROWS_AS(point_distinctness(w, Palette({{50, 0, 0}}, {100, 0, 0})), SizeMismatch);
}

}
