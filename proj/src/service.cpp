#include "palopt/service.hpp"
#include "palopt/error.hpp"
#include "palopt/palette_io.hpp"
#include "palopt/pipeline.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace palopt {

using nlohmann::json;

namespace {

Reply json_reply(int status, const json &body) {
    return {status, format_json(body), {}};
}

Reply error_reply(int status, const std::string &kind, const std::string &message) {
    return json_reply(status, {{"error", kind}, {"message", message}});
}

// Runs a handler body and maps failures onto status codes.
template <class F>
Reply guarded(F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        return error_reply(is_infeasible(e) ? 422 : 400, e.kind(), e.what());
    } catch (const std::exception &e) {
        return error_reply(500, "InternalError", e.what());
    }
}

json request_object(std::string_view body, std::initializer_list<const char *> keys) {
    json j = parse_json_text(body, "request");
    if (!j.is_object())
        throw ValidationError("request: expected a JSON object");
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (const char *key : keys)
            known = known || k == key;
        if (!known)
            throw ValidationError(k + ": unknown key");
    }
    if (!j.contains("dataset"))
        throw ValidationError("dataset: missing");
    return j;
}

json bound(double v) {
    return std::isinf(v) ? json(nullptr) : json(v);
}

json interval_json(const Interval &i) { return json::array({bound(i.lo), bound(i.hi)}); }

} // namespace

PaletteService::PaletteService(std::shared_ptr<const NameCountMatrix> names,
                               ServiceOptions options)
    : names_(std::move(names)), options_(std::move(options)) {
    if (!names_)
        throw InvalidConfig("service needs a name matrix");
    if (!(options_.time_budget > 0.0))
        throw InvalidConfig("time budget must be positive");
}

Reply PaletteService::palette(std::string_view body) const {
    return guarded([&] {
        const auto started = std::chrono::steady_clock::now();
        const json req = request_object(body, {"dataset", "config"});
        const ChartDataset ds = dataset_from_json(req["dataset"]);
        if (ds.input_size() > options_.max_points)
            throw ValidationError("dataset: " + std::to_string(ds.input_size()) +
                                  " points exceed the limit of " +
                                  std::to_string(options_.max_points) +
                                  "; pre-aggregate or sample the data");
        if (ds.class_count() > options_.max_classes)
            throw ValidationError("dataset: " + std::to_string(ds.class_count()) +
                                  " classes exceed the limit of " +
                                  std::to_string(options_.max_classes) + "; merge classes");
        const RunConfig rc = run_config_from_json(req.value("config", json(nullptr)));
        const auto deadline =
            started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(options_.time_budget));
        const PipelineResult res = run_pipeline(ds, rc, *names_, deadline);
        const auto &a = res.anneal;

        json out = {{"palette", palette_to_json(a.best_palette, ds.class_names, a.best_breakdown)},
                    {"energy", energy_to_json(a.best_breakdown)},
                    {"trace",
                     {{"iterations", a.iterations},
                      {"temperature_steps", a.temperature_steps},
                      {"best_energy", a.best_energy},
                      {"pd_norm", a.pd_norm},
                      {"truncated", a.truncated}}},
                    {"warnings", res.warnings}};
        Reply r = json_reply(200, out);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
        r.headers.emplace_back("X-Wall-Time-Ms", std::to_string(std::lround(ms)));
        return r;
    });
}

Reply PaletteService::score(std::string_view body) const {
    return guarded([&] {
        const json req = request_object(body, {"dataset", "palette", "config"});
        if (!req.contains("palette"))
            throw ValidationError("palette: missing");
        const ChartDataset ds = dataset_from_json(req["dataset"]);
        if (ds.input_size() > options_.max_points)
            throw ValidationError("dataset: too many points (limit " +
                                  std::to_string(options_.max_points) + ")");
        const RunConfig rc = run_config_from_json(req.value("config", json(nullptr)));
        const Palette p = palette_from_json(req["palette"]);
        const EnergyBreakdown e = score_dataset(ds, rc, *names_, p);
        json out = {{"energy", energy_to_json(e)},
                    {"pd_norm", 1.0},
                    {"factors",
                     {{"name", rc.weights.nd_factor},
                      {"discrimination", rc.weights.cd_factor}}},
                    {"weights", rc.weights.omega}};
        return json_reply(200, out);
    });
}

json PaletteService::meta_document() const {
    const AnnealConfig a;
    const ScoreWeights sw;
    const GraphSettings g;
    const ColorFilter f;
    json terms = json::array();
    for (ColorTerm t : all_color_terms()) {
        const TermRange &r = f.terms.range(t);
        terms.push_back({{"name", std::string(term_name(t))},
                         {"hue", r.hue ? interval_json(*r.hue) : json(nullptr)},
                         {"lightness", interval_json(r.lightness)},
                         {"chroma", interval_json(r.chroma)}});
    }
    const ExcludedBand band;
    return {{"tau", a.tau},
            {"cooling", a.cooling},
            {"t_start", a.t_start},
            {"t_end", a.t_end},
            {"temperature_steps", a.temperature_steps()},
            {"perturb", a.perturb_sigma},
            {"swap_probability", a.swap_probability},
            {"refine_max_attempts", a.refine_max_attempts},
            {"seed", a.seed},
            {"weights", sw.omega},
            {"factors", {{"name", sw.nd_factor}, {"discrimination", sw.cd_factor}}},
            {"graph",
             {{"kind", graph_kind_name(g.kind)},
              {"alpha_factor", kDefaultAlphaFactor},
              {"k", g.k},
              {"spacing", g.spacing}}},
            {"hue_terms", terms},
            {"excluded_band",
             {{"hue", {band.hue_min, band.hue_max}},
              {"lightness", {band.lightness_min, band.lightness_max}}}},
            {"limits",
             {{"max_points", options_.max_points},
              {"max_classes", options_.max_classes},
              {"time_budget", options_.time_budget}}}};
}

Reply PaletteService::meta() const {
    return guarded([&] { return json_reply(200, meta_document()); });
}

struct HttpServer::Impl {
    const PaletteService &service;
    httplib::Server server;

    explicit Impl(const PaletteService &s) : service(s) {
        const std::string origin = service.options().cors_origin;
        server.set_payload_max_length(256u << 20);
        server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"},
                                    {"Access-Control-Expose-Headers", "X-Wall-Time-Ms"}});
        auto send = [](httplib::Response &res, const Reply &r) {
            res.status = r.status;
            for (const auto &[k, v] : r.headers)
                res.set_header(k, v);
            res.set_content(r.body, "application/json");
        };
        server.Post("/api/palette", [this, send](const httplib::Request &req,
                                                 httplib::Response &res) {
            send(res, service.palette(req.body));
        });
        server.Post("/api/score", [this, send](const httplib::Request &req,
                                               httplib::Response &res) {
            send(res, service.score(req.body));
        });
        server.Get("/api/meta", [this, send](const httplib::Request &, httplib::Response &res) {
            send(res, service.meta());
        });
        server.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res) {
            res.status = 204;
        });
    }
};

HttpServer::HttpServer(const PaletteService &service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string &host, int port) {
    const int bound_port =
        port == 0 ? impl_->server.bind_to_any_port(host) : impl_->server.bind_to_port(host, port)
                                                               ? port
                                                               : -1;
    if (bound_port < 0)
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound_port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_)
        impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

} // namespace palopt
