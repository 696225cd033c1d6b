// palopt: optimize, score, inspect and render categorical palettes.
//
// Exit codes: 0 ok, 1 bad input, 2 the color constraints cannot be met.

#include "palopt/error.hpp"
#include "palopt/palette_io.hpp"
#include "palopt/pipeline.hpp"
#include "palopt/render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace palopt;
using nlohmann::json;

namespace {

struct Options {
    std::string data;
    std::string config;
    std::string names;
    std::string palette;
    std::string out;
    std::string svg;
    std::string trace;
    std::uint64_t seed = 7;
    std::vector<double> weights;
    std::string background;
    std::vector<std::string> hue_terms;
    std::vector<double> lightness;
    bool auto_lightness = false;
    bool keep_disliked = false;
    std::string graph;
    double alpha = 0.0;
    std::size_t k = 2;
    double spacing = kDefaultLineSpacing;
    double tau = 10.0;
    std::size_t restarts = 1;
    std::vector<std::string> locks;
    bool quiet = false;
};

std::string default_names_path() {
    if (const char *env = std::getenv("PALOPT_NAMES"))
        return env;
#ifdef PALOPT_DEFAULT_NAMES
    return PALOPT_DEFAULT_NAMES;
#else
    return "color_names.csv";
#endif
}

// Config file first, then any flag the user actually passed.
RunConfig build_config(const Options &o, const CLI::App &app) {
    RunConfig rc = o.config.empty() ? RunConfig{} : load_run_config(o.config);
    auto given = [&](const char *flag) { return app.count(flag) > 0; };
    if (given("--seed"))
        rc.anneal.seed = o.seed;
    if (given("--weights"))
        for (std::size_t i = 0; i < 3; ++i)
            rc.weights.omega[i] = o.weights[i];
    if (given("--background"))
        rc.background = color_from_json(json(o.background), "--background");
    if (given("--hue-terms")) {
        rc.filter.allowed_terms.clear();
        for (const auto &t : o.hue_terms)
            rc.filter.allowed_terms.push_back(parse_term(t));
    }
    if (given("--lightness")) {
        rc.filter.lightness_min = o.lightness[0];
        rc.filter.lightness_max = o.lightness[1];
        rc.auto_lightness = false;
    }
    if (o.auto_lightness)
        rc.auto_lightness = true;
    if (o.keep_disliked)
        rc.filter.excluded.reset();
    if (given("--graph"))
        rc.graph.kind = o.graph == "knn" ? GraphKind::Knn : GraphKind::AlphaShape;
    if (given("--alpha"))
        rc.graph.alpha = o.alpha;
    if (given("--k"))
        rc.graph.k = o.k;
    if (given("--spacing"))
        rc.graph.spacing = o.spacing;
    if (given("--tau"))
        rc.anneal.tau = o.tau;
    if (given("--restarts"))
        rc.restarts = o.restarts;
    for (const auto &lock : o.locks) {
        const auto eq = lock.rfind('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("--lock: expected CLASS=#RRGGBB, got \"" + lock + "\"");
        rc.locks.push_back(
            {lock.substr(0, eq), color_from_json(json(lock.substr(eq + 1)), "--lock")});
    }
    return rc;
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

void add_run_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("-d,--data", o.data, "Dataset JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("-c,--config", o.config, "Run configuration JSON")->check(CLI::ExistingFile);
    cmd->add_option("--names", o.names, "Color-name count matrix CSV");
    cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    cmd->add_option("--weights", o.weights, "Term weights w0 w1 w2 in [0,1]")->expected(3);
    cmd->add_option("--background", o.background, "Background color #RRGGBB");
    cmd->add_option("--hue-terms", o.hue_terms, "Allowed basic color terms");
    cmd->add_option("--lightness", o.lightness, "Lightness range LO HI")->expected(2);
    cmd->add_flag("--auto-lightness", o.auto_lightness,
                  "Derive the lightness range from the background");
    cmd->add_flag("--keep-disliked", o.keep_disliked, "Do not exclude the disliked hue band");
    cmd->add_option("--graph", o.graph, "Neighbor graph")
        ->check(CLI::IsMember({"alpha", "knn"}));
    cmd->add_option("--alpha", o.alpha, "Alpha radius in pixels")->check(CLI::PositiveNumber);
    cmd->add_option("--k", o.k, "Neighbors per point for the knn graph");
    cmd->add_option("--spacing", o.spacing, "Line-chart sampling step in pixels")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tau", o.tau, "Minimum CIEDE2000 distance")->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", o.restarts, "Independent runs, best kept")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--lock", o.locks, "Lock a class color, CLASS=#RRGGBB (repeatable)");
}

NameCountMatrix load_names(const Options &o) {
    return NameCountMatrix::load(o.names.empty() ? default_names_path() : o.names);
}

int run(int argc, char **argv) {
    CLI::App app{"Data-aware categorical palette optimizer"};
    app.require_subcommand(1);
    Options o;

    auto *optimize_cmd = app.add_subcommand("optimize", "Search for a palette");
    add_run_flags(optimize_cmd, o);
    optimize_cmd->add_option("-o,--out", o.out, "Palette JSON (default stdout)");
    optimize_cmd->add_option("--svg", o.svg, "Also write an SVG preview");
    optimize_cmd->add_option("--trace", o.trace, "Also write the energy trace CSV");
    optimize_cmd->add_flag("-q,--quiet", o.quiet, "No summary on stderr");

    auto *score_cmd = app.add_subcommand("score", "Score a palette (raw point distinctness)");
    add_run_flags(score_cmd, o);
    score_cmd->add_option("-p,--palette", o.palette, "Palette JSON")
        ->required()
        ->check(CLI::ExistingFile);

    auto *graph_cmd = app.add_subcommand("graph", "Dump the neighbor graph as JSON");
    add_run_flags(graph_cmd, o);
    graph_cmd->add_option("-o,--out", o.out, "Output JSON (default stdout)");

    auto *render_cmd = app.add_subcommand("render", "Render a palette onto the chart as SVG");
    render_cmd->add_option("-d,--data", o.data, "Dataset JSON")
        ->required()
        ->check(CLI::ExistingFile);
    render_cmd->add_option("-p,--palette", o.palette, "Palette JSON")
        ->required()
        ->check(CLI::ExistingFile);
    render_cmd->add_option("-o,--out", o.out, "SVG file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const ChartDataset ds = load_dataset(o.data);

    if (render_cmd->parsed()) {
        emit(o.out, render_svg(ds, load_palette(o.palette)));
        return 0;
    }

    CLI::App &cmd = *app.get_subcommands().front();
    const RunConfig rc = build_config(o, cmd);

    if (graph_cmd->parsed()) {
        const Problem pr = build_problem(ds, rc.graph);
        json points = json::array();
        for (std::size_t i = 0; i < pr.points.size(); ++i)
            points.push_back({pr.points.points[i].x, pr.points.points[i].y, pr.points.labels[i]});
        json edges = json::array();
        for (const auto &e : pr.graph.edges())
            edges.push_back({e.i, e.j, distance(pr.points.points[e.i], pr.points.points[e.j])});
        json out = {{"kind", graph_kind_name(pr.graph.kind)},
                    {"parameter", pr.graph.parameter},
                    {"points", points},
                    {"edges", edges}};
        emit(o.out, format_json(out));
        return 0;
    }

    const NameCountMatrix names = load_names(o);

    if (score_cmd->parsed()) {
        const Palette p = load_palette(o.palette);
        emit("", format_json({{"energy", energy_to_json(score_dataset(ds, rc, names, p))},
                              {"pd_norm", 1.0}}));
        return 0;
    }

    const PipelineResult res = run_pipeline(ds, rc, names);
    const AnnealResult &a = res.anneal;
    emit(o.out, format_json(palette_to_json(a.best_palette, ds.class_names, a.best_breakdown)));
    if (!o.svg.empty())
        write_text_file(o.svg, render_svg(ds, a.best_palette));
    if (!o.trace.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, a.energy_trace);
        write_text_file(o.trace, csv.str());
    }
    for (const auto &w : res.warnings)
        std::cerr << "warning: " << w << "\n";
    if (!o.quiet)
        std::cerr << "classes " << a.best_palette.size() << ", proposals " << a.iterations
                  << ", energy " << a.best_energy << ", min dE00 "
                  << a.best_breakdown.color_discrimination << ", " << a.wall_time << " s\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const Error &e) {
        std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return is_infeasible(e) ? 2 : 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
