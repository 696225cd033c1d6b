#pragma once

#include "palopt/name_model.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace palopt {

struct ServiceOptions {
    // Seconds per request before the best palette so far is returned.
    double time_budget = 30.0;
    std::size_t max_points = 100000;
    std::size_t max_classes = 64;
    std::string cors_origin = "*";
};

struct Reply {
    int status = 200;
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;
};

// Stateless request handlers, independent of the HTTP layer. Safe to call
// from many threads at once; the name matrix is shared read-only.
//
//   POST /api/palette {"dataset": {...}, "config": {...}}
//   POST /api/score   {"dataset": {...}, "palette": {...}, "config": {...}}
//   GET  /api/meta
//
// Errors come back as {"error": kind, "message": text} with 400 for bad
// input, 422 when the color constraints cannot be met and 500 otherwise.
class PaletteService {
public:
    PaletteService(std::shared_ptr<const NameCountMatrix> names, ServiceOptions options = {});

    Reply palette(std::string_view body) const;
    Reply score(std::string_view body) const;
    Reply meta() const;

    const ServiceOptions &options() const { return options_; }
    nlohmann::json meta_document() const;

private:
    std::shared_ptr<const NameCountMatrix> names_;
    ServiceOptions options_;
};

// HTTP/1.1 front end for a PaletteService.
class HttpServer {
public:
    explicit HttpServer(const PaletteService &service);
    ~HttpServer();
    HttpServer(const HttpServer &) = delete;
    HttpServer &operator=(const HttpServer &) = delete;

    // Returns the bound port; port 0 picks a free one. Throws on failure.
    int bind(const std::string &host, int port);
    // Serves until stop(); call after bind().
    void listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace palopt
