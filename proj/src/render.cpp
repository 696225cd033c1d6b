#include "palopt/render.hpp"
#include "palopt/error.hpp"

#include <cstdio>
#include <sstream>

namespace palopt {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::string render_svg(const ChartDataset &ds, const Palette &p) {
    const std::size_t m = ds.class_count();
    if (p.size() != m)
        throw SizeMismatch("palette has " + std::to_string(p.size()) + " colors for " +
                           std::to_string(m) + " classes");
    const Canvas &cv = ds.canvas;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cv.width)
        << "\" height=\"" << num(cv.height) << "\" viewBox=\"0 0 " << num(cv.width) << ' '
        << num(cv.height) << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << num(cv.width) << "\" height=\""
        << num(cv.height) << "\" fill=\"" << to_hex(p.background) << "\"/>\n";

    switch (ds.kind) {
    case ChartKind::Scatter:
        for (std::size_t i = 0; i < ds.scatter.size(); ++i) {
            const auto &pt = ds.scatter.points[i];
            svg << "  <circle cx=\"" << num(pt.x) << "\" cy=\"" << num(pt.y)
                << "\" r=\"3\" fill=\"" << to_hex(p.colors[ds.scatter.labels[i]]) << "\"/>\n";
        }
        break;
    case ChartKind::Line: {
        const auto to_px = ds.line.transform();
        for (std::size_t s = 0; s < ds.line.series.size(); ++s) {
            svg << "  <polyline fill=\"none\" stroke-width=\"2\" stroke=\""
                << to_hex(p.colors[s]) << "\" points=\"";
            bool first = true;
            for (const auto &v : ds.line.series[s]) {
                const auto px = to_px(v);
                svg << (first ? "" : " ") << num(px.x) << ',' << num(px.y);
                first = false;
            }
            svg << "\"/>\n";
        }
        break;
    }
    case ChartKind::Bar: {
        const auto rects = bar_layout(ds.bar);
        for (std::size_t i = 0; i < rects.size(); ++i) {
            const auto &r = rects[i];
            svg << "  <rect x=\"" << num(r.x) << "\" y=\"" << num(r.y) << "\" width=\""
                << num(r.width) << "\" height=\"" << num(r.height) << "\" fill=\""
                << to_hex(p.colors[i]) << "\"/>\n";
        }
        break;
    }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace palopt
