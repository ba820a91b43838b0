#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arithmos {

// All reals in reports are formatted with %.12g so that CSV output is
// byte-identical across runs with the same config.
inline std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Sampled values of an asymptotic residual plus its empirical envelope.
// `normalizer` documents the division already applied to the raw quantity.
struct ResidualReport {
    std::string label;
    std::vector<double> grid;
    std::vector<double> values;
    double envelope = 0.0; // max over grid of |values|
    std::string normalizer;
};

// Column-oriented report buffer; cells are preformatted tokens. Text columns
// are quoted in JSON and emitted as-is in CSV (no token ever contains a
// comma or a quote).
struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::uint8_t> is_text; // per column, 1 = quote in JSON
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns.size())
            throw std::invalid_argument("ReportTable: row width mismatch");
        rows.push_back(std::move(cells));
    }
};

inline void write_csv(const ReportTable& t, std::ostream& os) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << '\n';
    }
}

// JSON is an array of row objects with the same column names and the same
// number tokens as the CSV.
inline void write_json(const ReportTable& t, std::ostream& os) {
    os << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << "  {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            os << (c ? ", " : "") << '"' << t.columns[c] << "\": ";
            if (t.is_text[c])
                os << '"' << t.rows[r][c] << '"';
            else
                os << t.rows[r][c];
        }
        os << '}' << (r + 1 < t.rows.size() ? "," : "") << '\n';
    }
    os << "]\n";
}

inline ReportTable residual_report_table(const ResidualReport& r) {
    ReportTable t;
    t.columns = {"label", "x", "value", "normalizer"};
    t.is_text = {1, 0, 0, 1};
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        t.add_row({r.label, g12(r.grid[i]), g12(r.values[i]), r.normalizer});
    return t;
}

// --- sample grids ------------------------------------------------------------

// Log-spaced grid "lo:hi:points_per_decade"; spacing is multiplicative to
// match the asymptotic structure of everything sampled on it.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int points_per_decade = 0;
};

inline GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    char trailing = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi,
                    &g.points_per_decade, &trailing) != 3)
        throw std::invalid_argument("grid spec must be lo:hi:points_per_decade");
    if (!(g.lo > 0.0) || !(g.hi >= g.lo) || g.points_per_decade < 1)
        throw std::invalid_argument("grid spec out of range: " + spec);
    return g;
}

inline std::vector<double> log_grid(const GridSpec& g) {
    std::vector<double> xs;
    const double l0 = std::log10(g.lo);
    for (int i = 0;; ++i) {
        double x = std::pow(10.0, l0 + static_cast<double>(i) / g.points_per_decade);
        if (x > g.hi * (1.0 + 1e-12)) break;
        xs.push_back(std::min(x, g.hi));
    }
    if (xs.empty() || xs.back() < g.hi * (1.0 - 1e-12)) xs.push_back(g.hi);
    return xs;
}

inline std::vector<double> log_grid(const std::string& spec) {
    return log_grid(parse_grid(spec));
}

} // namespace arithmos
