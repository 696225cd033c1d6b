#include "palopt/palette_io.hpp"
#include "palopt/dataset.hpp"
#include "palopt/error.hpp"
#include "palopt/run_config.hpp"

#include <fstream>

namespace palopt {

using nlohmann::json;

namespace {

json lab_json(const LabColor &c) { return json::array({c.L, c.a, c.b}); }

} // namespace

json energy_to_json(const EnergyBreakdown &e) {
    return {{"point_distinctness", e.point_distinctness},
            {"point_distinctness_raw", e.point_distinctness_raw},
            {"name_difference", e.name_difference},
            {"color_discrimination", e.color_discrimination},
            {"total", e.total}};
}

json palette_to_json(const Palette &p, const std::vector<std::string> &class_names,
                     const std::optional<EnergyBreakdown> &energy) {
    json colors = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        colors.push_back({{"class", i < class_names.size() ? class_names[i] : std::to_string(i)},
                          {"hex", to_hex(p.colors[i])},
                          {"lab", lab_json(p.colors[i])},
                          {"locked", p.is_locked(i)}});
    }
    json out = {{"background", to_hex(p.background)},
                {"background_lab", lab_json(p.background)},
                {"colors", colors}};
    if (energy)
        out["energy"] = energy_to_json(*energy);
    return out;
}

Palette palette_from_json(const json &j) {
    if (!j.is_object())
        throw ValidationError("palette: expected a JSON object");
    Palette p;
    if (j.contains("background_lab"))
        p.background = color_from_json(j["background_lab"], "background_lab");
    else if (j.contains("background"))
        p.background = color_from_json(j["background"], "background");
    if (!j.contains("colors") || !j["colors"].is_array())
        throw ValidationError("colors: expected an array");
    const auto &colors = j["colors"];
    for (std::size_t i = 0; i < colors.size(); ++i) {
        const std::string field = "colors[" + std::to_string(i) + "]";
        const auto &c = colors[i];
        if (c.is_string() || c.is_array()) {
            p.colors.push_back(color_from_json(c, field));
            p.locked.push_back(false);
            continue;
        }
        if (!c.is_object())
            throw ValidationError(field + ": expected an object, \"#RRGGBB\" or [L, a, b]");
        if (c.contains("lab"))
            p.colors.push_back(color_from_json(c["lab"], field + ".lab"));
        else if (c.contains("hex"))
            p.colors.push_back(color_from_json(c["hex"], field + ".hex"));
        else
            throw ValidationError(field + ": needs \"lab\" or \"hex\"");
        bool locked = false;
        if (c.contains("locked")) {
            if (!c["locked"].is_boolean())
                throw ValidationError(field + ".locked: expected true or false");
            locked = c["locked"].get<bool>();
        }
        p.locked.push_back(locked);
    }
    return p;
}

std::string format_json(const json &j) { return j.dump(2) + "\n"; }

Palette load_palette(const std::filesystem::path &path) {
    return palette_from_json(parse_json_text(read_text_file(path), path.string()));
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write " + path.string());
    out << text;
    if (!out)
        throw ParseError("error writing " + path.string());
}

} // namespace palopt
