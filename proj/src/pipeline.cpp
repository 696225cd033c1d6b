#include "palopt/pipeline.hpp"
#include "palopt/error.hpp"

namespace palopt {

Problem build_problem(const ChartDataset &ds, const GraphSettings &g) {
    Problem pr;
    if (ds.kind == ChartKind::Bar) {
        auto [ps, graph] = bars_to_graph(ds.bar);
        pr.points = std::move(ps);
        pr.graph = std::move(graph);
    } else {
        pr.points = ds.kind == ChartKind::Scatter ? ds.scatter : discretize_lines(ds.line, g.spacing);
        if (const auto moved = jitter_duplicates(pr.points.points); moved > 0)
            pr.warnings.push_back(std::to_string(moved) +
                                  " duplicate points were moved apart by 1e-6 px");
        if (g.kind == GraphKind::Knn) {
            pr.graph = knn_graph(pr.points, g.k);
        } else {
            const double alpha = g.alpha ? *g.alpha : default_alpha(pr.points.points);
            pr.graph = alpha_shape_graph(pr.points, alpha);
        }
    }
    pr.weights = precompute_pair_weights(pr.points, pr.graph);
    return pr;
}

namespace {

InitialPalette initial_for(const ChartDataset &ds, const RunConfig &rc) {
    InitialPalette init;
    init.background = rc.background;
    init.locked = resolve_locks(rc, ds);
    init.start = rc.initial;
    if (!init.start.empty() && init.start.size() != ds.class_count())
        throw ValidationError("initial: " + std::to_string(init.start.size()) +
                              " colors for " + std::to_string(ds.class_count()) + " classes");
    return init;
}

} // namespace

PipelineResult run_pipeline(const ChartDataset &ds, const RunConfig &rc,
                            const NameCountMatrix &names,
                            std::optional<std::chrono::steady_clock::time_point> deadline) {
    rc.weights.validate();
    const ColorFilter filter = rc.effective_filter();
    filter.validate();
    const InitialPalette init = initial_for(ds, rc);
    Problem pr = build_problem(ds, rc.graph);

    AnnealConfig cfg = rc.anneal;
    cfg.deadline = deadline;
    PipelineResult out;
    out.warnings = std::move(pr.warnings);
    out.anneal = optimize_restarts(pr.weights, names, rc.weights, cfg, filter, rc.seeds(), init);
    if (out.anneal.truncated)
        out.warnings.push_back("truncated: time budget reached after " +
                               std::to_string(out.anneal.temperature_steps) + " of " +
                               std::to_string(cfg.temperature_steps()) +
                               " temperature steps; returning the best palette so far");
    return out;
}

EnergyBreakdown score_dataset(const ChartDataset &ds, const RunConfig &rc,
                              const NameCountMatrix &names, const Palette &p) {
    ScoreWeights sw = rc.weights;
    sw.pd_norm = 1.0;
    sw.validate();
    if (p.size() != ds.class_count())
        throw SizeMismatch("palette has " + std::to_string(p.size()) + " colors for " +
                           std::to_string(ds.class_count()) + " classes");
    const Problem pr = build_problem(ds, rc.graph);
    return score_palette(pr.weights, names, p, sw);
}

} // namespace palopt
