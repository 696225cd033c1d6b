#pragma once

#include "palopt/palette.hpp"
#include "palopt/scoring.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace palopt {

// {"background": "#RRGGBB", "background_lab": [L, a, b],
//  "colors": [{"class": name, "hex": "#RRGGBB", "lab": [L, a, b], "locked": bool}],
//  "energy": {...}}
// "lab" carries the exact optimizer values; "hex" is the display color.
nlohmann::json palette_to_json(const Palette &p, const std::vector<std::string> &class_names,
                               const std::optional<EnergyBreakdown> &energy = std::nullopt);
nlohmann::json energy_to_json(const EnergyBreakdown &e);

// Accepts the format above. A color without "lab" is taken from "hex".
// Throws ValidationError.
Palette palette_from_json(const nlohmann::json &j);

// Pretty-printed with a trailing newline; identical inputs give identical
// bytes.
std::string format_json(const nlohmann::json &j);

Palette load_palette(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace palopt
