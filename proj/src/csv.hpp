// Minimal CSV reading helpers for the fixed-schema files this library reads.
#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "memdecide/error.hpp"

namespace memdecide::csv {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(std::string_view field, std::size_t line_no)
{
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw FormatError("line " + std::to_string(line_no) + ": cannot parse number '" +
                          std::string(field) + "'");
    }
    return v;
}

/// Reads the header line and checks it matches `expected` exactly (after
/// trimming trailing CR/whitespace). Returns the data rows, each split into
/// exactly expected-column-count fields; blank lines are skipped.
inline std::vector<std::vector<std::string>> read_table(std::istream& in,
                                                         std::string_view expected)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty CSV, expected header '" + std::string(expected) + "'");
    }
    if (trim(line) != expected) {
        throw FormatError("CSV header mismatch: expected '" + std::string(expected) +
                          "', got '" + std::string(trim(line)) + "'");
    }
    const std::size_t columns = split(expected).size();
    std::vector<std::vector<std::string>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns) + " fields");
        }
        rows.emplace_back(fields.begin(), fields.end());
        rows.back().push_back(std::to_string(line_no));
    }
    return rows;
}

}  // namespace memdecide::csv
