// palopt-server: HTTP JSON API for palette generation.
//
// Flags override the environment: PALOPT_PORT, PALOPT_NAMES,
// PALOPT_TIME_BUDGET (seconds), PALOPT_CORS_ORIGIN.

#include "palopt/error.hpp"
#include "palopt/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>

using namespace palopt;

namespace {

HttpServer *g_server = nullptr;

void on_signal(int) {
    if (g_server)
        g_server->stop();
}

std::string env_or(const char *name, std::string fallback) {
    const char *v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Palette optimizer HTTP service"};
    std::string host = "127.0.0.1";
#ifdef PALOPT_DEFAULT_NAMES
    std::string names = env_or("PALOPT_NAMES", PALOPT_DEFAULT_NAMES);
#else
    std::string names = env_or("PALOPT_NAMES", "color_names.csv");
#endif
    int port = 8080;
    ServiceOptions opts;
    opts.cors_origin = env_or("PALOPT_CORS_ORIGIN", opts.cors_origin);
    try {
        port = std::stoi(env_or("PALOPT_PORT", "8080"));
        opts.time_budget = std::stod(env_or("PALOPT_TIME_BUDGET", "30"));
    } catch (const std::exception &) {
        std::cerr << "error: PALOPT_PORT and PALOPT_TIME_BUDGET must be numbers\n";
        return 1;
    }

    app.add_option("--host", host, "Address to listen on")->capture_default_str();
    app.add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
    app.add_option("--names", names, "Color-name count matrix CSV")->capture_default_str();
    app.add_option("--time-budget", opts.time_budget, "Seconds per palette request")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--cors-origin", opts.cors_origin, "Allowed browser origin")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        auto matrix = std::make_shared<const NameCountMatrix>(NameCountMatrix::load(names));
        PaletteService service(matrix, opts);
        HttpServer server(service);
        const int bound = server.bind(host, port);
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cerr << "listening on http://" << host << ":" << bound << "\n";
        server.listen();
        g_server = nullptr;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
