#pragma once

// Column tables for the CLI: CSV with a metadata comment line, or JSON as a
// flat array of objects.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "glab/errors.hpp"
#include "glab/version.hpp"

namespace glab::cli {

struct Cell {
    std::variant<double, long long, std::string, bool> v;
    const char* fmt = "%.12g";
};

inline Cell num(double x, const char* fmt = "%.12g") { return {x, fmt}; }
inline Cell integer(long long i) { return {i}; }
inline Cell text(std::string s) { return {std::move(s)}; }
inline Cell flag(bool b) { return {b}; }

struct Meta {
    std::optional<double> n, s, tol;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Meta meta;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
        rows.push_back(std::move(row));
    }
};

inline std::string format_double(double x, const char* fmt) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

inline std::string csv_field(const Cell& c) {
    if (auto d = std::get_if<double>(&c.v)) return format_double(*d, c.fmt);
    if (auto i = std::get_if<long long>(&c.v)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&c.v)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(c.v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

inline std::string meta_line(const Meta& m) {
    auto f = [](const std::optional<double>& v) { return v ? format_double(*v, "%.12g") : std::string("-"); };
    return "# n=" + f(m.n) + ", s=" + f(m.s) + ", tol=" + f(m.tol) + ", version=" + kVersion;
}

inline void write_csv(std::ostream& os, const Table& t) {
    os << meta_line(t.meta) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (auto d = std::get_if<double>(&c.v))
                obj[t.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d)
                                                      : nlohmann::ordered_json(nullptr);
            else if (auto n = std::get_if<long long>(&c.v)) obj[t.columns[i]] = *n;
            else if (auto b = std::get_if<bool>(&c.v)) obj[t.columns[i]] = *b;
            else obj[t.columns[i]] = std::get<std::string>(c.v);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

/// Writes to `path` ("" or "-" = stdout). JSON carries the metadata line on stderr.
inline void emit(const Table& t, const std::string& format, const std::string& path) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) throw IoError("cannot open output file: " + path);
        os = &file;
    }
    if (format == "json") {
        std::cerr << meta_line(t.meta) << '\n';
        write_json(*os, t);
    } else {
        write_csv(*os, t);
    }
    os->flush();
    if (!*os) throw IoError("write failed: " + (path.empty() ? std::string("stdout") : path));
}

}  // namespace glab::cli
