#pragma once

#include "palopt/annealer.hpp"
#include "palopt/dataset.hpp"
#include "palopt/name_model.hpp"
#include "palopt/run_config.hpp"
#include "palopt/scoring.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace palopt {

// Geometry of a dataset reduced to what the scorer needs.
struct Problem {
    LabeledPointSet points;
    NeighborGraph graph;
    ClassPairWeights weights;
    std::vector<std::string> warnings;
};

// Scatter: the points; line: resampled series; bar: bar centers on a path
// graph. Scatter and line points get the alpha-shape or KNN graph from `g`.
Problem build_problem(const ChartDataset &ds, const GraphSettings &g);

struct PipelineResult {
    AnnealResult anneal;
    std::vector<std::string> warnings;
};

// Builds the problem, resolves locks and runs the annealer (with restarts
// when configured). A `deadline` truncates the run to the best palette so far.
PipelineResult run_pipeline(const ChartDataset &ds, const RunConfig &rc,
                            const NameCountMatrix &names,
                            std::optional<std::chrono::steady_clock::time_point> deadline = {});

// Scores a given palette with pd_norm = 1, so point distinctness is raw.
EnergyBreakdown score_dataset(const ChartDataset &ds, const RunConfig &rc,
                              const NameCountMatrix &names, const Palette &p);

} // namespace palopt
