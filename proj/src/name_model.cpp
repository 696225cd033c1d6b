#include "palopt/name_model.hpp"
#include "palopt/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace palopt {

namespace {

constexpr double kGridTolerance = 1e-6;
constexpr std::size_t kMaxIndexCells = std::size_t{1} << 26;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos
                                             ? std::string_view::npos
                                             : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double to_double(std::string_view s, std::size_t line_no) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("name matrix line " + std::to_string(line_no) +
                         ": not a number '" + std::string(s) + "'");
    return v;
}

long long to_integer(std::string_view s, std::size_t line_no) {
    s = trim(s);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("name matrix line " + std::to_string(line_no) +
                         ": not an integer count '" + std::string(s) + "'");
    return v;
}

double squared_distance(const LabColor &x, const LabColor &y) {
    const double dl = x.L - y.L;
    const double da = x.a - y.a;
    const double db = x.b - y.b;
    return dl * dl + da * da + db * db;
}

} // namespace

NameCountMatrix NameCountMatrix::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open name matrix " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

NameCountMatrix NameCountMatrix::parse(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (!line.empty())
            lines.push_back(line);
    }
    if (lines.size() < 2)
        throw ParseError("name matrix: missing header or term line");

    std::size_t n_bins = 0;
    std::size_t n_terms = 0;
    double spacing = 0.0;
    bool have_bins = false, have_terms = false, have_spacing = false;
    for (auto field : split(lines[0], ',')) {
        field = trim(field);
        const auto eq = field.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("name matrix header: expected key=value, got '" +
                             std::string(field) + "'");
        const auto key = trim(field.substr(0, eq));
        const auto value = field.substr(eq + 1);
        if (key == "bins") {
            n_bins = static_cast<std::size_t>(std::max(0LL, to_integer(value, 1)));
            have_bins = true;
        } else if (key == "terms") {
            n_terms = static_cast<std::size_t>(std::max(0LL, to_integer(value, 1)));
            have_terms = true;
        } else if (key == "spacing") {
            spacing = to_double(value, 1);
            have_spacing = true;
        } else {
            throw ParseError("name matrix header: unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_bins || !have_terms || !have_spacing)
        throw ParseError("name matrix header must define bins, terms and spacing");
    if (n_bins == 0 || n_terms == 0 || !(spacing > 0.0))
        throw ValidationError("name matrix header: bins, terms and spacing must be positive");

    NameCountMatrix m;
    m.spacing_ = spacing;
    for (auto t : split(lines[1], ','))
        m.terms_.emplace_back(trim(t));
    if (m.terms_.size() != n_terms)
        throw ParseError("name matrix: header declares " + std::to_string(n_terms) +
                         " terms but term line has " + std::to_string(m.terms_.size()));
    if (lines.size() - 2 != n_bins)
        throw ParseError("name matrix: header declares " + std::to_string(n_bins) +
                         " bins but file has " + std::to_string(lines.size() - 2) + " rows");

    m.bins_.reserve(n_bins);
    m.counts_.reserve(n_bins * n_terms);
    m.norms_.reserve(n_bins);
    for (std::size_t r = 0; r < n_bins; ++r) {
        const std::size_t line_no = r + 3;
        const auto fields = split(lines[r + 2], ',');
        if (fields.size() != 3 + n_terms)
            throw ParseError("name matrix line " + std::to_string(line_no) + ": expected " +
                             std::to_string(3 + n_terms) + " fields, got " +
                             std::to_string(fields.size()));
        m.bins_.push_back({to_double(fields[0], line_no), to_double(fields[1], line_no),
                           to_double(fields[2], line_no)});
        double norm2 = 0.0;
        for (std::size_t k = 0; k < n_terms; ++k) {
            const long long v = to_integer(fields[3 + k], line_no);
            if (v < 0)
                throw ValidationError("name matrix line " + std::to_string(line_no) +
                                      ": negative count");
            m.counts_.push_back(static_cast<double>(v));
            norm2 += static_cast<double>(v) * static_cast<double>(v);
        }
        if (norm2 == 0.0)
            throw ValidationError("name matrix line " + std::to_string(line_no) +
                                  ": row has no positive count");
        m.norms_.push_back(std::sqrt(norm2));
    }
    m.build_index();
    return m;
}

void NameCountMatrix::build_index() {
    std::array<double, 3> lo{kInf, kInf, kInf};
    std::array<double, 3> hi{-kInf, -kInf, -kInf};
    auto coords = [](const LabColor &c) { return std::array<double, 3>{c.L, c.a, c.b}; };
    for (const auto &b : bins_) {
        const auto x = coords(b);
        for (std::size_t k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], x[k]);
            hi[k] = std::max(hi[k], x[k]);
        }
    }
    origin_ = lo;
    for (std::size_t k = 0; k < 3; ++k)
        dims_[k] = static_cast<std::size_t>(std::llround((hi[k] - lo[k]) / spacing_)) + 1;
    const std::size_t total = dims_[0] * dims_[1] * dims_[2];
    cells_.clear();
    // Very sparse grids skip the dense index; lookups then scan all bins.
    if (total <= kMaxIndexCells)
        cells_.assign(total, -1);

    for (std::size_t i = 0; i < bins_.size(); ++i) {
        const auto x = coords(bins_[i]);
        std::array<std::size_t, 3> idx{};
        for (std::size_t k = 0; k < 3; ++k) {
            const double u = (x[k] - origin_[k]) / spacing_;
            const double r = std::round(u);
            if (std::abs(u - r) > kGridTolerance)
                throw ValidationError("name matrix: bin " + std::to_string(i) +
                                      " is not on the declared grid");
            idx[k] = static_cast<std::size_t>(r);
        }
        if (cells_.empty())
            continue;
        auto &cell = cells_[(idx[0] * dims_[1] + idx[1]) * dims_[2] + idx[2]];
        if (cell < 0)
            cell = static_cast<std::ptrdiff_t>(i);
    }
}

std::size_t NameCountMatrix::brute_force_nearest(const LabColor &c) const {
    std::size_t best = 0;
    double best_d = squared_distance(c, bins_[0]);
    for (std::size_t i = 1; i < bins_.size(); ++i) {
        const double d = squared_distance(c, bins_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::size_t NameCountMatrix::nearest_bin(const LabColor &c) const {
    // On a regular grid the nearest bin is among the 8 cells surrounding c,
    // provided the cell nearest along every axis exists.
    const std::array<double, 3> x{c.L, c.a, c.b};
    std::array<std::array<std::size_t, 2>, 3> cand{};
    std::array<std::size_t, 3> rounded{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double max_u = static_cast<double>(dims_[k] - 1);
        const double u = std::clamp((x[k] - origin_[k]) / spacing_, 0.0, max_u);
        const double f = std::floor(u);
        cand[k] = {static_cast<std::size_t>(f),
                   static_cast<std::size_t>(std::min(f + 1.0, max_u))};
        rounded[k] = u - f < 0.5 ? cand[k][0] : cand[k][1];
    }
    auto cell = [&](std::size_t i, std::size_t j, std::size_t l) {
        return cells_[(i * dims_[1] + j) * dims_[2] + l];
    };
    if (cells_.empty() || cell(rounded[0], rounded[1], rounded[2]) < 0)
        return brute_force_nearest(c);

    std::ptrdiff_t best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i : cand[0])
        for (std::size_t j : cand[1])
            for (std::size_t l : cand[2]) {
                const std::ptrdiff_t b = cell(i, j, l);
                if (b < 0)
                    continue;
                const double d = squared_distance(c, bins_[static_cast<std::size_t>(b)]);
                if (d < best_d || (d == best_d && b < best)) {
                    best_d = d;
                    best = b;
                }
            }
    return static_cast<std::size_t>(best);
}

double NameCountMatrix::bin_name_difference(std::size_t i, std::size_t j) const {
    if (i == j)
        return 0.0;
    const auto ri = row(i);
    const auto rj = row(j);
    double dot = 0.0;
    for (std::size_t k = 0; k < ri.size(); ++k)
        dot += ri[k] * rj[k];
    return std::clamp(1.0 - dot / (norms_[i] * norms_[j]), 0.0, 1.0);
}

NameVector name_vector(const NameCountMatrix &m, const LabColor &c) {
    const auto r = m.row(m.nearest_bin(c));
    return {std::vector<double>(r.begin(), r.end())};
}

double name_difference(const NameVector &t1, const NameVector &t2) {
    if (t1.values.size() != t2.values.size())
        throw SizeMismatch("name vectors have different lengths");
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (std::size_t k = 0; k < t1.values.size(); ++k) {
        dot += t1.values[k] * t2.values[k];
        n1 += t1.values[k] * t1.values[k];
        n2 += t2.values[k] * t2.values[k];
    }
    if (n1 == 0.0 || n2 == 0.0)
        throw DegenerateVector("name vector is all zero");
    return std::clamp(1.0 - dot / (std::sqrt(n1) * std::sqrt(n2)), 0.0, 1.0);
}

double palette_name_difference(const NameCountMatrix &m, const Palette &p) {
    const std::size_t n = p.size();
    if (n < 2)
        throw TooFewColors("name difference needs at least two class colors");
    std::vector<std::size_t> bins(n);
    for (std::size_t i = 0; i < n; ++i)
        bins[i] = m.nearest_bin(p.colors[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            sum += m.bin_name_difference(bins[i], bins[j]);
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

} // namespace palopt
