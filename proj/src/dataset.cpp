#include "palopt/dataset.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace palopt {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string &field, const std::string &msg) {
    throw ValidationError(field + ": " + msg);
}

double number_at(const json &j, const std::string &field) {
    if (!j.is_number())
        invalid(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        invalid(field, "must be finite");
    return v;
}

std::size_t index_at(const json &j, const std::string &field) {
    if (!j.is_number_integer() && !(j.is_number_float() && std::floor(j.get<double>()) == j.get<double>()))
        invalid(field, "expected an integer class index");
    const double v = j.get<double>();
    if (v < 0)
        invalid(field, "class index must be non-negative");
    return static_cast<std::size_t>(v);
}

Point2 point_at(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2)
        invalid(field, "expected [x, y]");
    return {number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]")};
}

Canvas canvas_at(const json &j) {
    if (!j.is_array() || j.size() != 2)
        invalid("canvas", "expected [width, height]");
    Canvas c{number_at(j[0], "canvas[0]"), number_at(j[1], "canvas[1]")};
    if (!(c.width > 0.0 && c.height > 0.0))
        invalid("canvas", "width and height must be positive");
    return c;
}

ChartKind infer_kind(const json &j) {
    if (j.contains("kind")) {
        if (!j["kind"].is_string())
            invalid("kind", "expected \"scatter\", \"line\" or \"bar\"");
        const auto k = j["kind"].get<std::string>();
        if (k == "scatter")
            return ChartKind::Scatter;
        if (k == "line")
            return ChartKind::Line;
        if (k == "bar")
            return ChartKind::Bar;
        invalid("kind", "unknown chart kind \"" + k + "\"");
    }
    const int found = int(j.contains("points")) + int(j.contains("series")) + int(j.contains("bars"));
    if (found != 1)
        invalid("kind", "missing, and exactly one of \"points\", \"series\", \"bars\" is required "
                        "to infer it");
    if (j.contains("points"))
        return ChartKind::Scatter;
    return j.contains("series") ? ChartKind::Line : ChartKind::Bar;
}

void require_key(const json &j, const char *key) {
    if (!j.contains(key))
        invalid(key, "missing");
    if (!j[key].is_array())
        invalid(key, "expected an array");
}

} // namespace

std::string chart_kind_name(ChartKind k) {
    switch (k) {
    case ChartKind::Scatter:
        return "scatter";
    case ChartKind::Line:
        return "line";
    case ChartKind::Bar:
        return "bar";
    }
    return "scatter";
}

std::size_t ChartDataset::class_count() const {
    switch (kind) {
    case ChartKind::Scatter:
        return scatter.class_count;
    case ChartKind::Line:
        return line.series.size();
    case ChartKind::Bar:
        return bar.values.size();
    }
    return 0;
}

std::string ChartDataset::class_name(std::size_t i) const {
    return i < class_names.size() ? class_names[i] : std::to_string(i);
}

std::size_t ChartDataset::input_size() const {
    switch (kind) {
    case ChartKind::Scatter:
        return scatter.size();
    case ChartKind::Line: {
        std::size_t n = 0;
        for (const auto &s : line.series)
            n += s.size();
        return n;
    }
    case ChartKind::Bar:
        return bar.values.size();
    }
    return 0;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(std::string_view text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < end; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": invalid JSON");
    }
}

ChartDataset dataset_from_json(const json &j) {
    if (!j.is_object())
        invalid("dataset", "expected a JSON object");
    ChartDataset ds;
    ds.kind = infer_kind(j);
    if (j.contains("canvas"))
        ds.canvas = canvas_at(j["canvas"]);

    std::optional<std::size_t> declared;
    if (j.contains("classes")) {
        if (!j["classes"].is_array())
            invalid("classes", "expected an array of names");
        for (std::size_t i = 0; i < j["classes"].size(); ++i) {
            const auto &c = j["classes"][i];
            if (!c.is_string())
                invalid("classes[" + std::to_string(i) + "]", "expected a string");
            ds.class_names.push_back(c.get<std::string>());
        }
        declared = ds.class_names.size();
        if (*declared == 0)
            invalid("classes", "at least one class is required");
    }

    switch (ds.kind) {
    case ChartKind::Scatter: {
        require_key(j, "points");
        const auto &pts = j["points"];
        if (pts.empty())
            invalid("points", "at least one point is required");
        std::vector<Point2> raw;
        std::size_t max_label = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string field = "points[" + std::to_string(i) + "]";
            if (!pts[i].is_array() || pts[i].size() != 3)
                invalid(field, "expected [x, y, classIndex]");
            raw.push_back({number_at(pts[i][0], field + "[0]"), number_at(pts[i][1], field + "[1]")});
            const std::size_t label = index_at(pts[i][2], field + "[2]");
            if (declared && label >= *declared)
                invalid(field + "[2]", "class " + std::to_string(label) + " is not declared (" +
                                           std::to_string(*declared) + " classes)");
            max_label = std::max(max_label, label);
            ds.scatter.labels.push_back(label);
        }
        ds.scatter.class_count = declared ? *declared : max_label + 1;
        const CanvasTransform to_px(bounding_domain(raw), ds.canvas);
        for (const auto &p : raw)
            ds.scatter.points.push_back(to_px(p));
        const auto counts = ds.scatter.class_counts();
        for (std::size_t c = 0; c < counts.size(); ++c)
            if (counts[c] == 0)
                invalid("points", "class " + std::to_string(c) + " (" + ds.class_name(c) +
                                      ") has no points");
        ds.scatter.validate();
        break;
    }
    case ChartKind::Line: {
        require_key(j, "series");
        const auto &series = j["series"];
        for (std::size_t s = 0; s < series.size(); ++s) {
            const std::string field = "series[" + std::to_string(s) + "]";
            if (!series[s].is_array())
                invalid(field, "expected an array of [x, y] vertices");
            std::vector<Point2> line;
            for (std::size_t k = 0; k < series[s].size(); ++k)
                line.push_back(point_at(series[s][k], field + "[" + std::to_string(k) + "]"));
            ds.line.series.push_back(std::move(line));
        }
        ds.line.canvas = ds.canvas;
        if (declared && *declared != ds.line.series.size())
            invalid("classes", std::to_string(*declared) + " names for " +
                                   std::to_string(ds.line.series.size()) + " series");
        ds.line.validate();
        break;
    }
    case ChartKind::Bar: {
        require_key(j, "bars");
        const auto &bars = j["bars"];
        for (std::size_t i = 0; i < bars.size(); ++i)
            ds.bar.values.push_back(number_at(bars[i], "bars[" + std::to_string(i) + "]"));
        ds.bar.canvas = ds.canvas;
        if (declared && *declared != ds.bar.values.size())
            invalid("classes", std::to_string(*declared) + " names for " +
                                   std::to_string(ds.bar.values.size()) + " bars");
        ds.bar.validate();
        break;
    }
    }
    return ds;
}

ChartDataset parse_dataset(std::string_view text) {
    return dataset_from_json(parse_json_text(text, "dataset"));
}

ChartDataset load_dataset(const std::filesystem::path &path) {
    const auto text = read_text_file(path);
    return dataset_from_json(parse_json_text(text, path.string()));
}

} // namespace palopt
