// io.hpp — CSV and JSON serialization with shortest round-trip number
// formatting, so emitted spectra parse back bit-exactly.

#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/steady_state.hpp"

namespace cascade {

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("parse_double: invalid number '" + std::string(s) + "'");
    }
    return v;
}

// Column-oriented numeric table with '#'-prefixed metadata lines, the CSV
// shape every subcommand emits.
struct CsvTable {
    std::vector<std::string> comments; // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; // data[c][row]
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
    for (const auto& c : t.comments) os << "# " << c << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        os << (c ? "," : "") << t.columns[c];
    }
    os << "\n";
    const std::size_t rows = t.data.empty() ? 0 : t.data.front().size();
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t c = 0; c < t.data.size(); ++c) {
            os << (c ? "," : "") << format_double(t.data[c][row]);
        }
        os << "\n";
    }
    if (!os) throw IoError("write_csv: stream failure");
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::size_t off = 1;
            if (off < line.size() && line[off] == ' ') ++off;
            t.comments.push_back(line.substr(off));
            continue;
        }
        if (!have_header) {
            t.columns = split_fields(line);
            t.data.assign(t.columns.size(), {});
            have_header = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != t.columns.size()) {
            throw IoError("read_csv: row width does not match header");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            t.data[c].push_back(parse_double(fields[c]));
        }
    }
    if (!have_header) throw IoError("read_csv: missing header row");
    return t;
}

inline CsvTable csv_from_series(const SpectrumSeries& s, const std::string& axis,
                                std::vector<std::string> comments = {}) {
    validate_series(s);
    CsvTable t;
    t.comments = std::move(comments);
    t.columns = {axis, s.label.empty() ? std::string("value") : s.label};
    t.data = {s.grid, s.values};
    return t;
}

inline SpectrumSeries series_from_csv(const CsvTable& t) {
    if (t.columns.size() != 2) throw IoError("series_from_csv: expected 2 columns");
    SpectrumSeries s;
    s.grid = t.data[0];
    s.values = t.data[1];
    s.label = t.columns[1];
    validate_series(s);
    return s;
}

inline std::string to_csv_string(const CsvTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

inline CsvTable csv_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

} // namespace cascade
