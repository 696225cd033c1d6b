#pragma once

#include "palopt/chart_adapters.hpp"
#include "palopt/neighbor_graph.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace palopt {

enum class ChartKind { Scatter, Line, Bar };

std::string chart_kind_name(ChartKind k);

// A chart to color. Only the payload matching `kind` is populated.
//
// JSON forms ("kind" may be omitted when the payload key is unambiguous;
// "classes" and "canvas": [w, h] are optional):
//   {"kind": "scatter", "classes": [...], "points": [[x, y, classIndex], ...]}
//   {"kind": "line", "classes": [...], "series": [[[x, y], ...], ...]}
//   {"kind": "bar", "classes": [...], "bars": [v1, ...]}
struct ChartDataset {
    ChartKind kind = ChartKind::Scatter;
    // Scatter points already mapped to canvas pixels (y down).
    LabeledPointSet scatter;
    LineChartData line;
    BarChartData bar;
    std::vector<std::string> class_names;
    Canvas canvas;

    std::size_t class_count() const;
    // Declared name, or the class index as text.
    std::string class_name(std::size_t i) const;
    // Raw input size: scatter points, line vertices or bars.
    std::size_t input_size() const;
};

// Throws ParseError (with line and column) or ValidationError (with the
// offending field path).
ChartDataset load_dataset(const std::filesystem::path &path);
ChartDataset parse_dataset(std::string_view text);
ChartDataset dataset_from_json(const nlohmann::json &j);

// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path &path);
// Parses JSON text, turning syntax errors into ParseError with a line and
// column.
nlohmann::json parse_json_text(std::string_view text, const std::string &source);

} // namespace palopt
