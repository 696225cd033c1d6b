#include "palopt/run_config.hpp"
#include "palopt/error.hpp"

#include <cmath>

namespace palopt {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string &field, const std::string &msg) {
    throw ValidationError(field + ": " + msg);
}

void only_keys(const json &j, const std::string &field, std::initializer_list<const char *> keys) {
    if (!j.is_object())
        invalid(field, "expected an object");
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (const char *key : keys)
            known = known || k == key;
        if (!known)
            invalid(field.empty() ? k : field + "." + k, "unknown key");
    }
}

double number(const json &j, const std::string &field) {
    if (!j.is_number())
        invalid(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        invalid(field, "must be finite");
    return v;
}

std::uint64_t unsigned_integer(const json &j, const std::string &field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        invalid(field, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

void read_filter(const json &j, RunConfig &rc) {
    only_keys(j, "filter", {"hue_terms", "lightness", "exclude_disliked", "term_table"});
    if (j.contains("term_table")) {
        try {
            rc.filter.terms = HueTermTable::from_json_text(j["term_table"].dump());
        } catch (const Error &e) {
            invalid("filter.term_table", e.what());
        }
    }
    if (j.contains("hue_terms")) {
        if (!j["hue_terms"].is_array())
            invalid("filter.hue_terms", "expected an array of term names");
        for (const auto &t : j["hue_terms"]) {
            if (!t.is_string())
                invalid("filter.hue_terms", "expected term names");
            try {
                rc.filter.allowed_terms.push_back(parse_term(t.get<std::string>()));
            } catch (const Error &e) {
                invalid("filter.hue_terms", e.what());
            }
        }
    }
    if (j.contains("lightness")) {
        const auto &l = j["lightness"];
        if (l.is_string() && l.get<std::string>() == "auto") {
            rc.auto_lightness = true;
        } else if (l.is_array() && l.size() == 2) {
            rc.filter.lightness_min = number(l[0], "filter.lightness[0]");
            rc.filter.lightness_max = number(l[1], "filter.lightness[1]");
        } else {
            invalid("filter.lightness", "expected [lo, hi] or \"auto\"");
        }
    }
    if (j.contains("exclude_disliked")) {
        if (!j["exclude_disliked"].is_boolean())
            invalid("filter.exclude_disliked", "expected true or false");
        if (!j["exclude_disliked"].get<bool>())
            rc.filter.excluded.reset();
    }
}

void read_graph(const json &j, GraphSettings &g) {
    only_keys(j, "graph", {"kind", "alpha", "k", "spacing"});
    if (j.contains("kind")) {
        const auto kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
        if (kind == "alpha")
            g.kind = GraphKind::AlphaShape;
        else if (kind == "knn")
            g.kind = GraphKind::Knn;
        else
            invalid("graph.kind", "expected \"alpha\" or \"knn\"");
    }
    if (j.contains("alpha") && !j["alpha"].is_null()) {
        g.alpha = number(j["alpha"], "graph.alpha");
        if (!(*g.alpha > 0.0))
            invalid("graph.alpha", "must be positive");
    }
    if (j.contains("k"))
        g.k = unsigned_integer(j["k"], "graph.k");
    if (j.contains("spacing")) {
        g.spacing = number(j["spacing"], "graph.spacing");
        if (!(g.spacing > 0.0))
            invalid("graph.spacing", "must be positive");
    }
}

void read_anneal(const json &j, AnnealConfig &a) {
    only_keys(j, "anneal", {"cooling", "t_start", "t_end", "tau", "proposals_per_temperature",
                            "perturb", "swap_probability", "refine_max_attempts"});
    if (j.contains("cooling"))
        a.cooling = number(j["cooling"], "anneal.cooling");
    if (j.contains("t_start"))
        a.t_start = number(j["t_start"], "anneal.t_start");
    if (j.contains("t_end"))
        a.t_end = number(j["t_end"], "anneal.t_end");
    if (j.contains("tau"))
        a.tau = number(j["tau"], "anneal.tau");
    if (j.contains("proposals_per_temperature"))
        a.proposals_per_temperature =
            unsigned_integer(j["proposals_per_temperature"], "anneal.proposals_per_temperature");
    if (j.contains("perturb"))
        a.perturb_sigma = number(j["perturb"], "anneal.perturb");
    if (j.contains("swap_probability"))
        a.swap_probability = number(j["swap_probability"], "anneal.swap_probability");
    if (j.contains("refine_max_attempts"))
        a.refine_max_attempts = static_cast<int>(
            std::min<std::uint64_t>(unsigned_integer(j["refine_max_attempts"],
                                                     "anneal.refine_max_attempts"),
                                    1u << 30));
}

} // namespace

LabColor color_from_json(const json &j, const std::string &field) {
    if (j.is_string()) {
        try {
            return lab_from_hex(j.get<std::string>());
        } catch (const Error &e) {
            invalid(field, e.what());
        }
    }
    if (j.is_array() && j.size() == 3) {
        const LabColor c{number(j[0], field + "[0]"), number(j[1], field + "[1]"),
                         number(j[2], field + "[2]")};
        if (!(c.L >= 0.0 && c.L <= 100.0 && std::abs(c.a) <= 128.0 && std::abs(c.b) <= 128.0))
            invalid(field, "LAB color out of range (L in [0,100], a and b in [-128,128])");
        return c;
    }
    invalid(field, "expected \"#RRGGBB\" or [L, a, b]");
}

ColorFilter RunConfig::effective_filter() const {
    ColorFilter f = filter;
    if (auto_lightness) {
        const auto [lo, hi] = lightness_range_for_background(background);
        f.lightness_min = lo;
        f.lightness_max = hi;
    }
    return f;
}

std::vector<std::uint64_t> RunConfig::seeds() const {
    std::vector<std::uint64_t> out;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r)
        out.push_back(anneal.seed + r);
    return out;
}

RunConfig run_config_from_json(const json &j) {
    RunConfig rc;
    if (j.is_null())
        return rc;
    only_keys(j, "", {"weights", "factors", "background", "filter", "graph", "anneal", "seed",
                      "restarts", "locked", "initial"});
    if (j.contains("weights")) {
        const auto &w = j["weights"];
        if (!w.is_array() || w.size() != 3)
            invalid("weights", "expected [w0, w1, w2]");
        for (std::size_t i = 0; i < 3; ++i)
            rc.weights.omega[i] = number(w[i], "weights[" + std::to_string(i) + "]");
    }
    if (j.contains("factors")) {
        only_keys(j["factors"], "factors", {"name", "discrimination"});
        if (j["factors"].contains("name"))
            rc.weights.nd_factor = number(j["factors"]["name"], "factors.name");
        if (j["factors"].contains("discrimination"))
            rc.weights.cd_factor =
                number(j["factors"]["discrimination"], "factors.discrimination");
    }
    if (j.contains("background"))
        rc.background = color_from_json(j["background"], "background");
    if (j.contains("filter"))
        read_filter(j["filter"], rc);
    if (j.contains("graph"))
        read_graph(j["graph"], rc.graph);
    if (j.contains("anneal"))
        read_anneal(j["anneal"], rc.anneal);
    if (j.contains("seed"))
        rc.anneal.seed = unsigned_integer(j["seed"], "seed");
    if (j.contains("restarts")) {
        rc.restarts = unsigned_integer(j["restarts"], "restarts");
        if (rc.restarts < 1 || rc.restarts > 64)
            invalid("restarts", "must be between 1 and 64");
    }
    if (j.contains("locked")) {
        const auto &l = j["locked"];
        if (l.is_object()) {
            for (const auto &[k, v] : l.items())
                rc.locks.push_back({k, color_from_json(v, "locked." + k)});
        } else if (l.is_array()) {
            for (std::size_t i = 0; i < l.size(); ++i)
                if (!l[i].is_null())
                    rc.locks.push_back(
                        {std::to_string(i),
                         color_from_json(l[i], "locked[" + std::to_string(i) + "]")});
        } else {
            invalid("locked", "expected an object keyed by class or an array");
        }
    }
    if (j.contains("initial")) {
        if (!j["initial"].is_array())
            invalid("initial", "expected an array of colors");
        for (std::size_t i = 0; i < j["initial"].size(); ++i)
            rc.initial.push_back(
                color_from_json(j["initial"][i], "initial[" + std::to_string(i) + "]"));
    }
    return rc;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    return run_config_from_json(parse_json_text(read_text_file(path), path.string()));
}

std::vector<std::optional<LabColor>> resolve_locks(const RunConfig &rc, const ChartDataset &ds) {
    const std::size_t m = ds.class_count();
    std::vector<std::optional<LabColor>> out;
    if (rc.locks.empty())
        return out;
    out.assign(m, std::nullopt);
    for (const auto &lock : rc.locks) {
        std::optional<std::size_t> slot;
        for (std::size_t i = 0; i < ds.class_names.size() && !slot; ++i)
            if (ds.class_names[i] == lock.key)
                slot = i;
        if (!slot) {
            std::size_t pos = 0;
            try {
                const auto v = std::stoul(lock.key, &pos);
                if (pos == lock.key.size())
                    slot = v;
            } catch (const std::exception &) {
            }
        }
        if (!slot || *slot >= m)
            invalid("locked." + lock.key, "no such class");
        if (out[*slot])
            invalid("locked." + lock.key, "class locked twice");
        out[*slot] = lock.color;
    }
    return out;
}

} // namespace palopt
