// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "league_ledger/csv.hpp"
#include "league_ledger/errors.hpp"

namespace ledger {

enum class ReportFormat { csv, json, markdown };

inline ReportFormat parse_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    if (text == "markdown" || text == "md") return ReportFormat::markdown;
    fail(ErrorKind::invalid_argument,
         "format must be one of {csv, json, markdown}, got \"" + std::string(text) +
             "\"");
}

/// Where and how a report is emitted. precision applies to average-rank
/// columns; weights always print as plain integers.
struct ReportSpec {
    ReportFormat format = ReportFormat::markdown;
    int precision = 2;
    std::optional<std::filesystem::path> destination;  // stdout when absent

    void validate() const {
        if (precision < 0 || precision > 10) {
            fail(ErrorKind::invalid_argument,
                 "precision must be in [0, 10], got " + std::to_string(precision));
        }
    }
};

/// Fixed-point with half-up rounding (half away from zero), locale-free.
/// printf's default half-even rounding would not be stable across platforms
/// for presentation purposes.
inline std::string format_fixed(double value, int precision) {
    if (precision < 0 || precision > 10) {
        fail(ErrorKind::invalid_argument, "precision must be in [0, 10]");
    }
    long double scale = 1.0L;
    for (int i = 0; i < precision; ++i) scale *= 10.0L;
    bool negative = value < 0.0;
    long double magnitude = negative ? -static_cast<long double>(value)
                                     : static_cast<long double>(value);
    long long scaled = static_cast<long long>(std::floor(magnitude * scale + 0.5L));
    long long den = static_cast<long long>(scale);
    std::string out = negative && scaled != 0 ? "-" : "";
    out += std::to_string(scaled / den);
    if (precision > 0) {
        std::string frac = std::to_string(scaled % den);
        out += '.';
        out += std::string(static_cast<std::size_t>(precision) - frac.size(), '0');
        out += frac;
    }
    return out;
}

/// One table cell: pre-formatted text for csv/markdown plus the typed value
/// used in JSON output, so every format carries the same data.
struct Cell {
    std::string text;
    nlohmann::ordered_json value;
};

inline Cell cell(const std::string& s) { return {s, s}; }
inline Cell cell(long long v) { return {std::to_string(v), v}; }
inline Cell cell(int v) { return {std::to_string(v), v}; }

/// Fixed-point cell; the JSON value is the rounded number re-parsed, so JSON
/// and text agree digit for digit.
inline Cell cell_fixed(double v, int precision) {
    std::string text = format_fixed(v, precision);
    return {text, nlohmann::ordered_json::parse(text)};
}

/// Format-independent report: title + meta, one table, free-form note lines
/// (text formats), and extra structured blocks (JSON format).
struct Report {
    std::string title;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::string align;  // one char per column: 'l' or 'r'
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> notes;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

namespace detail {

inline std::string meta_text(const nlohmann::ordered_json& value) {
    return value.is_string() ? value.get<std::string>() : value.dump();
}

}  // namespace detail

inline std::string render_csv(const Report& report) {
    std::string out;
    if (!report.title.empty()) out += "# " + report.title + "\n";
    for (const auto& [key, value] : report.meta.items()) {
        out += "# " + key + ": " + detail::meta_text(value) + "\n";
    }
    out += csv::join_row(report.columns) + "\n";
    for (const auto& row : report.rows) {
        std::vector<std::string> fields;
        fields.reserve(row.size());
        for (const auto& c : row) fields.push_back(c.text);
        out += csv::join_row(fields) + "\n";
    }
    for (const auto& [label, value] : report.notes) {
        out += "# " + label + ": " + value + "\n";
    }
    return out;
}

inline std::string render_markdown(const Report& report) {
    std::string out;
    if (!report.title.empty()) out += "# " + report.title + "\n\n";
    for (const auto& [key, value] : report.meta.items()) {
        out += "- **" + key + ":** " + detail::meta_text(value) + "\n";
    }
    if (!report.meta.empty()) out += "\n";

    std::vector<std::size_t> widths(report.columns.size());
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        widths[i] = report.columns[i].size();
    }
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].text.size());
        }
    }
    auto pad = [&](const std::string& text, std::size_t i) {
        std::string padding(widths[i] - std::min(widths[i], text.size()), ' ');
        char a = i < report.align.size() ? report.align[i] : 'l';
        return a == 'r' ? padding + text : text + padding;
    };
    out += "|";
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out += " " + pad(report.columns[i], i) + " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        char a = i < report.align.size() ? report.align[i] : 'l';
        std::string rule(widths[i] > 0 ? widths[i] - 1 : 0, '-');
        out += a == 'r' ? " " + rule + ": |" : " :" + rule + " |";
    }
    out += "\n";
    for (const auto& row : report.rows) {
        out += "|";
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += " " + pad(row[i].text, i) + " |";
        }
        out += "\n";
    }
    if (!report.notes.empty()) {
        out += "\n";
        for (const auto& [label, value] : report.notes) {
            out += "**" + label + ":** " + value + "\n";
        }
    }
    return out;
}

inline std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["meta"] = report.meta;
    if (!report.title.empty()) doc["meta"]["title"] = report.title;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
            obj[report.columns[i]] = row[i].value;
        }
        doc["rows"].push_back(std::move(obj));
    }
    for (const auto& [key, value] : report.extra.items()) {
        doc[key] = value;
    }
    return doc.dump(2) + "\n";
}

inline std::string render(const Report& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::csv: return render_csv(report);
        case ReportFormat::json: return render_json(report);
        case ReportFormat::markdown: return render_markdown(report);
    }
    fail(ErrorKind::invalid_argument, "unknown report format");
}

/// Emit to stdout, or atomically to a file (write a sibling temp file, then
/// rename), so a failed run never leaves a partial destination behind.
inline void write_output(const std::string& text,
                         const std::optional<std::filesystem::path>& destination) {
    if (!destination.has_value()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    fs::path dest = *destination;
    fs::path tmp = dest;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorKind::io, "cannot write to " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            fail(ErrorKind::io, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, dest, ec);
    if (ec) {
        fs::remove(tmp);
        fail(ErrorKind::io, "cannot move report into place at " + dest.string() +
                                ": " + ec.message());
    }
}

inline void emit(const Report& report, const ReportSpec& spec) {
    spec.validate();
    write_output(render(report, spec.format), spec.destination);
}

}  // namespace ledger
