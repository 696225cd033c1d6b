#include "support.hpp"

#include "palopt/error.hpp"
#include "palopt/palette_io.hpp"
#include "palopt/pipeline.hpp"
#include "palopt/render.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>

using namespace palopt;
using nlohmann::json;

namespace {

std::size_t count(const std::string &text, const std::string &needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "palopt_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

RunConfig quick_config() {
    RunConfig rc;
    rc.anneal.t_start = 10;
    rc.anneal.t_end = 0.01;
    rc.anneal.cooling = 0.95;
    return rc;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("minimal scatter dataset") {
    const auto ds = parse_dataset(R"({"kind": "scatter", "classes": ["a", "b"],
                                      "points": [[0, 0, 0], [1, 2, 1]]})");
    CHECK(ds.kind == ChartKind::Scatter);
    CHECK(ds.scatter.size() == 2);
    CHECK(ds.class_count() == 2);
    CHECK(ds.class_name(1) == "b");
    // Bounding box mapped onto the default canvas with y pointing down.
    CHECK(ds.scatter.points[0] == Point2{0, 400});
    CHECK(ds.scatter.points[1] == Point2{400, 0});
}

TEST_CASE("dataset validation errors name the field") {
    try {
        parse_dataset(R"({"classes": ["a"], "points": [[0, 0, 0], [1, 1, 1]]})");
        FAIL("expected ValidationError");
    } catch (const ValidationError &e) {
        CHECK(std::string(e.what()).find("points[1][2]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dataset(R"({"series": [[[0, 0], [0, 1]]]})"), ValidationError);
    CHECK_THROWS_AS(parse_dataset(R"({"bars": [1, -1]})"), ValidationError);
    CHECK_THROWS_AS(parse_dataset(R"({"kind": "pie", "points": []})"), ValidationError);
    CHECK_THROWS_AS(parse_dataset(R"({"points": [[0, 0, 1]]})"), ValidationError);
    try {
        parse_dataset("{\n  \"points\": [\n    [0, 0, 0],,\n  ]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    CHECK_THROWS_AS(load_dataset("/nonexistent.json"), ParseError);
}

TEST_CASE("line and bar datasets") {
    const auto line = parse_dataset(R"({"series": [[[0, 1], [1, 2]], [[0, 2], [2, 0]]]})");
    CHECK(line.kind == ChartKind::Line);
    CHECK(line.class_count() == 2);
    const auto bar = parse_dataset(R"({"kind": "bar", "bars": [3, 1, 2], "canvas": [300, 100]})");
    CHECK(bar.class_count() == 3);
    CHECK(bar.bar.canvas.width == 300);
}

TEST_CASE("run config parsing") {
    const auto rc = run_config_from_json(json::parse(R"({
        "weights": [0.5, 1, 0],
        "background": "#000000",
        "filter": {"hue_terms": ["green", "blue"], "lightness": "auto"},
        "graph": {"kind": "knn", "k": 4},
        "anneal": {"tau": 12},
        "seed": 99,
        "locked": {"b": "#FF0000"}
    })"));
    CHECK(rc.weights.omega[0] == 0.5);
    CHECK(rc.background.L < 0.01);
    CHECK(rc.filter.allowed_terms.size() == 2);
    CHECK(rc.effective_filter().lightness_min == 35);
    CHECK(rc.graph.kind == GraphKind::Knn);
    CHECK(rc.graph.k == 4);
    CHECK(rc.anneal.tau == 12);
    CHECK(rc.anneal.seed == 99);
    REQUIRE(rc.locks.size() == 1);

    const auto ds = parse_dataset(R"({"classes": ["a", "b"], "points": [[0, 0, 0], [1, 1, 1]]})");
    const auto locks = resolve_locks(rc, ds);
    CHECK_FALSE(locks[0]);
    CHECK(to_hex(*locks[1]) == "#FF0000");

    CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"wieghts": [1, 1, 1]})")),
                    ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"filter": {"hue_terms": ["teal"]}})")),
                    ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"background": "#12345"})")),
                    ValidationError);
    RunConfig bad;
    bad.locks = {{"zzz", {50, 0, 0}}};
    CHECK_THROWS_AS(resolve_locks(bad, ds), ValidationError);
}

TEST_CASE("palette json round trip") {
    Palette p({{53.2, 80.1, 67.2}, {31.123456789012345, -10.5, 20.25}}, {95.5, 0.5, -0.5});
    p.locked = {false, true};
    const auto text = format_json(palette_to_json(p, {"x", "y"}));
    const auto back = palette_from_json(json::parse(text));
    CHECK(back == p);
    const auto j = json::parse(text);
    CHECK(j["colors"][0]["class"] == "x");
    CHECK(j["colors"][1]["locked"] == true);
    CHECK(j["colors"][0]["hex"] == to_hex(p.colors[0]));
    std::regex hex("^#[0-9A-F]{6}$");
    CHECK(std::regex_match(j["background"].get<std::string>(), hex));
}

TEST_CASE("svg rendering") {
    const auto one = parse_dataset(R"({"points": [[5, 5, 0]]})");
    const Palette p1({{50, 40, 20}}, {100, 0, 0});
    const auto svg1 = render_svg(one, p1);
    CHECK(count(svg1, "<circle") == 1);
    CHECK(svg1.find(to_hex(p1.colors[0])) != std::string::npos);

    const auto bars = parse_dataset(R"({"bars": [1, 2, 3]})");
    const Palette p3({{50, 40, 20}, {70, -30, 20}, {30, 10, -40}}, {20, 0, 0});
    const auto svg3 = render_svg(bars, p3);
    CHECK(count(svg3, "<rect") == 4);
    for (const auto &c : p3.colors)
        CHECK(svg3.find("fill=\"" + to_hex(c) + "\"") != std::string::npos);
    CHECK(svg3.find("fill=\"" + to_hex(p3.background) + "\"") != std::string::npos);

    const auto lines = parse_dataset(R"({"series": [[[0, 1], [1, 2]], [[0, 2], [2, 0]]]})");
    CHECK(count(render_svg(lines, Palette({{50, 40, 20}, {70, -30, 20}}, {100, 0, 0})),
                "<polyline") == 2);
    CHECK_THROWS_AS(render_svg(bars, p1), SizeMismatch);
}

TEST_CASE("pipeline on the bundled examples") {
    const auto &names = testing::default_names();
    for (const char *file : {"scatter.json", "line.json", "bar.json"}) {
        CAPTURE(file);
        const auto ds = load_dataset(std::string(PALOPT_EXAMPLES) + "/" + file);
        const auto res = run_pipeline(ds, quick_config(), names);
        CHECK(res.anneal.best_palette.size() == ds.class_count());
        CHECK(testing::min_pairwise(res.anneal.best_palette) >= 10.0);
    }
}

TEST_CASE("pipeline guards a degenerate objective") {
    const auto ds = parse_dataset(R"({"points": [[0, 0, 0], [1, 1, 1]]})");
    RunConfig rc = quick_config();
    rc.weights.omega = {0, 0, 0};
    CHECK_THROWS_AS(run_pipeline(ds, rc, testing::default_names()), InvalidConfig);
}

TEST_CASE("duplicate points produce a warning, not a failure") {
    const auto ds = parse_dataset(R"({"points": [[0, 0, 0], [0, 0, 1], [1, 1, 0], [2, 0, 1]]})");
    const auto res = run_pipeline(ds, quick_config(), testing::default_names());
    CHECK(res.warnings.size() == 1);
}

TEST_CASE("score_dataset uses raw point distinctness") {
    const auto ds = parse_dataset(R"({"points": [[0, 0, 0], [1, 0, 1]]})");
    const Palette p({{50, 40, 20}, {70, -30, 20}}, {100, 0, 0});
    const auto e = score_dataset(ds, RunConfig{}, testing::default_names(), p);
    CHECK(e.point_distinctness == e.point_distinctness_raw);
    // Two mutual neighbors 400 px apart, each contributing dE/400.
    CHECK(e.point_distinctness_raw == doctest::Approx(ciede2000(p.colors[0], p.colors[1]) / 200.0));
}

TEST_CASE("cli runs are reproducible and report exit codes") {
    const std::string cli = PALOPT_CLI;
    const std::string data = std::string(PALOPT_EXAMPLES) + "/scatter.json";
    const auto a = scratch("a.json"), b = scratch("b.json"), svg = scratch("a.svg"),
               trace = scratch("trace.csv");
    const std::string run = cli + " optimize -q -d " + data + " --seed 7 -o ";
    REQUIRE(std::system((run + a.string() + " --svg " + svg.string() + " --trace " +
                         trace.string()).c_str()) == 0);
    REQUIRE(std::system((run + b.string()).c_str()) == 0);
    CHECK(read_text_file(a) == read_text_file(b));

    const auto p = load_palette(a);
    CHECK(p.size() == 6);
    CHECK(testing::min_pairwise(p) >= 10.0);
    CHECK(read_text_file(trace).rfind("iteration,current_energy,best_energy\n", 0) == 0);
    CHECK(count(read_text_file(svg), "<circle") == 240);

    auto exit_code = [](const std::string &cmd) {
        const int status = std::system((cmd + " 2>/dev/null >/dev/null").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(exit_code(cli + " score -d " + data + " -p " + a.string()) == 0);
    CHECK(exit_code(cli + " graph -d " + data) == 0);
    CHECK(exit_code(cli + " render -d " + data + " -p " + a.string()) == 0);
    CHECK(exit_code(cli + " optimize -d /nonexistent.json") == 1);
    CHECK(exit_code(cli + " optimize -d " + data + " --weights 0 0 0") == 1);
    CHECK(exit_code(cli + " optimize -d " + data + " --lock 0=#FFFFFF") == 2);
    CHECK(exit_code(cli + " frobnicate") == 1);
}

}
