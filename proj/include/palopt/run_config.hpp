#pragma once

#include "palopt/annealer.hpp"
#include "palopt/color_filter.hpp"
#include "palopt/dataset.hpp"
#include "palopt/neighbor_graph.hpp"
#include "palopt/scoring.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace palopt {

struct GraphSettings {
    // AlphaShape or Knn; bar charts always use the path graph.
    GraphKind kind = GraphKind::AlphaShape;
    // Pixels; default_alpha() of the points when unset.
    std::optional<double> alpha;
    std::size_t k = 2;
    // Line-chart resampling step in pixels.
    double spacing = kDefaultLineSpacing;
};

// A locked color, keyed by class name or class index (as text).
struct LockSpec {
    std::string key;
    LabColor color;
};

// Everything a run needs besides the dataset and the name matrix.
//
// JSON keys, all optional:
//   weights [w0, w1, w2]; factors {"name", "discrimination"};
//   background "#RRGGBB" | [L, a, b];
//   filter {"hue_terms": [...], "lightness": [lo, hi] | "auto",
//           "exclude_disliked": bool, "term_table": {...}};
//   graph {"kind": "alpha" | "knn", "alpha", "k", "spacing"};
//   anneal {"cooling", "t_start", "t_end", "tau", "proposals_per_temperature",
//           "perturb", "swap_probability", "refine_max_attempts"};
//   seed; restarts;
//   locked {class: color} | [color | null, ...]; initial [color, ...]
struct RunConfig {
    ScoreWeights weights;
    LabColor background{100.0, 0.0, 0.0};
    ColorFilter filter;
    // Derive the filter's lightness range from the background.
    bool auto_lightness = false;
    GraphSettings graph;
    AnnealConfig anneal;
    std::size_t restarts = 1;
    std::vector<LockSpec> locks;
    std::vector<LabColor> initial;

    // Filter with the background-derived lightness range applied.
    ColorFilter effective_filter() const;
    // Seeds of the restarts: seed, seed + 1, ...
    std::vector<std::uint64_t> seeds() const;
};

// Throws ParseError or ValidationError naming the offending field. Unknown
// keys are rejected so typos do not silently fall back to defaults.
RunConfig run_config_from_json(const nlohmann::json &j);
RunConfig load_run_config(const std::filesystem::path &path);

// "#RRGGBB" or [L, a, b].
LabColor color_from_json(const nlohmann::json &j, const std::string &field);

// Per-class lock list for `ds`. Keys match class names first, then
// indices. Throws ValidationError for unknown or repeated classes.
std::vector<std::optional<LabColor>> resolve_locks(const RunConfig &rc, const ChartDataset &ds);

} // namespace palopt
