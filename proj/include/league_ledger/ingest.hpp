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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "league_ledger/alias.hpp"
#include "league_ledger/csv.hpp"
#include "league_ledger/errors.hpp"
#include "league_ledger/model.hpp"

namespace ledger {

/// Accepted header spellings for each required snapshot column. The first
/// accepted name found in the header wins.
struct ColumnSchema {
    std::vector<std::string> rank_columns{"rank"};
    std::vector<std::string> name_columns{"name", "university", "institution"};
    std::vector<std::string> country_columns{"country"};
};

struct IngestReport {
    std::size_t parsed_rows = 0;
    std::size_t rejected_rows = 0;
    // (raw name as written, physical line number)
    std::vector<std::pair<std::string, std::size_t>> unmapped_names;
    std::vector<std::string> warnings;

    bool clean() const noexcept {
        return rejected_rows == 0 && unmapped_names.empty();
    }
};

struct ParseOptions {
    ColumnSchema schema;
    /// List size; defaults to the maximum rank seen. Rows ranked beyond an
    /// explicit override are rejected, not truncated silently.
    std::optional<int> m_override;
    /// Park unmapped countries under the synthetic ZZZ bucket instead of
    /// rejecting their rows. They are still listed in unmapped_names.
    bool include_unmapped = false;
};

namespace detail {

inline std::optional<int> parse_positive_int(std::string_view text) {
    std::string t = trim(text);
    if (t.empty() || t.size() > 9) return std::nullopt;
    int value = 0;
    for (char c : t) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return value;
}

inline std::size_t find_column(const std::vector<std::string>& header,
                               const std::vector<std::string>& accepted,
                               const std::string& role, const std::string& origin) {
    for (const auto& name : accepted) {
        std::size_t found = header.size();
        int hits = 0;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (collapse_name(header[i]) == collapse_name(name)) {
                found = i;
                ++hits;
            }
        }
        if (hits > 1) {
            fail(ErrorKind::schema,
                 origin + ": column \"" + name + "\" appears more than once");
        }
        if (hits == 1) return found;
    }
    fail(ErrorKind::schema, origin + ": missing required column for " + role +
                                " (accepted: " + accepted.front() + ")");
}

}  // namespace detail

/// Parse one snapshot CSV. Every row with a parseable positive-integer rank
/// and a mappable country becomes an entry; everything else is counted and
/// explained in the report. Deterministic: identical bytes give identical
/// snapshots and reports.
inline std::pair<RankingSnapshot, IngestReport> parse_snapshot(
    std::string_view csv_text, const std::string& source, const std::string& edition,
    const AliasTable& aliases, const ParseOptions& options = {},
    const std::string& origin = "<memory>") {
    csv::Document doc = csv::parse(csv_text);
    if (doc.rows.empty()) {
        fail(ErrorKind::schema, origin + ": missing header row");
    }
    const auto& header = doc.rows.front();
    std::size_t rank_col = detail::find_column(header, options.schema.rank_columns,
                                               "rank", origin);
    std::size_t name_col = detail::find_column(header, options.schema.name_columns,
                                               "university name", origin);
    std::size_t country_col = detail::find_column(
        header, options.schema.country_columns, "country", origin);
    std::size_t width = std::max({rank_col, name_col, country_col}) + 1;

    IngestReport report;
    std::vector<UniversityEntry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    int max_rank = 0;

    auto reject = [&](std::size_t line, const std::string& why) {
        ++report.rejected_rows;
        report.warnings.push_back("line " + std::to_string(line) + ": " + why);
    };

    for (std::size_t i = 1; i < doc.rows.size(); ++i) {
        const auto& row = doc.rows[i];
        std::size_t line = doc.lines[i];
        bool blank = std::all_of(row.begin(), row.end(), [](const std::string& f) {
            return trim(f).empty();
        });
        if (blank) continue;
        if (row.size() < width) {
            reject(line, "expected at least " + std::to_string(width) +
                             " fields, got " + std::to_string(row.size()));
            continue;
        }
        std::optional<int> rank = detail::parse_positive_int(row[rank_col]);
        if (!rank.has_value()) {
            reject(line, "rank is not an integer: \"" + trim(row[rank_col]) + "\"");
            continue;
        }
        if (*rank < 1) {
            reject(line, "rank must be >= 1");
            continue;
        }
        if (options.m_override.has_value() && *rank > *options.m_override) {
            reject(line, "rank " + std::to_string(*rank) + " exceeds list size " +
                             std::to_string(*options.m_override));
            continue;
        }
        std::string name = trim(row[name_col]);
        if (name.empty()) {
            reject(line, "university name is empty");
            continue;
        }
        std::string raw_country = trim(row[country_col]);
        if (collapse_name(raw_country).empty()) {
            reject(line, "country is empty");
            continue;
        }
        std::optional<CountryCode> country = aliases.lookup(raw_country);
        if (!country.has_value()) {
            report.unmapped_names.emplace_back(raw_country, line);
            if (!options.include_unmapped) {
                ++report.rejected_rows;
                continue;
            }
            country = unmapped_bucket();
        }
        if (!seen.emplace(name, country->code()).second) {
            report.warnings.push_back("line " + std::to_string(line) +
                                      ": duplicate university \"" + name + "\" (" +
                                      country->code() + ")");
        }
        max_rank = std::max(max_rank, *rank);
        entries.emplace_back(*rank, std::move(name), std::move(*country));
        ++report.parsed_rows;
    }

    if (entries.empty()) {
        fail(ErrorKind::empty_snapshot,
             origin + ": no parseable rows for " + source + "/" + edition);
    }
    int m = options.m_override.value_or(max_rank);
    return {RankingSnapshot(source, edition, m, std::move(entries)),
            std::move(report)};
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::io, "cannot read file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::pair<RankingSnapshot, IngestReport> parse_snapshot_file(
    const std::filesystem::path& path, const std::string& source,
    const std::string& edition, const AliasTable& aliases,
    const ParseOptions& options = {}) {
    return parse_snapshot(read_file(path), source, edition, aliases, options,
                          path.string());
}

// ---------------------------------------------------------------------------
// Snapshot stores: a directory tree <root>/<source>/<YYYY-MM>.csv.

struct StoreFile {
    std::string source;
    std::string edition;
    std::filesystem::path path;
};

struct StoreListing {
    std::vector<StoreFile> files;        // source asc, edition asc
    std::vector<std::string> warnings;   // skipped entries
};

/// Enumerate snapshot files without parsing them. Regular files directly
/// under the root (e.g. aliases.csv) are not snapshots and are ignored.
inline StoreListing list_store(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root)) {
        fail(ErrorKind::io, "store root does not exist: " + root.string());
    }
    StoreListing listing;
    std::vector<fs::path> sources;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) sources.push_back(entry.path());
    }
    std::sort(sources.begin(), sources.end());
    for (const auto& dir : sources) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::string rel = dir.filename().string() + "/" + path.filename().string();
            if (!fs::is_regular_file(path) || path.extension() != ".csv") {
                listing.warnings.push_back("skipped " + rel +
                                           ": not a snapshot file");
                continue;
            }
            std::string edition = path.stem().string();
            if (!valid_edition(edition) || edition.find('@') != std::string::npos) {
                listing.warnings.push_back("skipped " + rel +
                                           ": file name is not a YYYY-MM edition");
                continue;
            }
            listing.files.push_back({dir.filename().string(), edition, path});
        }
    }
    return listing;
}

struct StoreEntry {
    RankingSnapshot snapshot;
    IngestReport report;
};

struct StoreLoad {
    std::vector<StoreEntry> entries;     // source asc, edition asc
    std::vector<std::string> warnings;
};

/// Parse every snapshot in the store. Unreadable or malformed files raise
/// an error naming the path; oddly named files are skipped with a warning.
inline StoreLoad load_store(const std::filesystem::path& root,
                            const AliasTable& aliases,
                            const ParseOptions& options = {}) {
    StoreListing listing = list_store(root);
    StoreLoad load;
    load.warnings = std::move(listing.warnings);
    for (const auto& file : listing.files) {
        auto [snapshot, report] =
            parse_snapshot_file(file.path, file.source, file.edition, aliases, options);
        load.entries.push_back({std::move(snapshot), std::move(report)});
    }
    return load;
}

/// Load one (source, edition) snapshot from the store.
inline std::pair<RankingSnapshot, IngestReport> load_snapshot(
    const std::filesystem::path& root, const std::string& source,
    const std::string& edition, const AliasTable& aliases,
    const ParseOptions& options = {}) {
    std::filesystem::path path = root / source / (edition + ".csv");
    if (!std::filesystem::exists(path)) {
        fail(ErrorKind::missing_snapshot,
             "no snapshot " + source + "/" + edition + " under " + root.string());
    }
    return parse_snapshot_file(path, source, edition, aliases, options);
}

}  // namespace ledger
