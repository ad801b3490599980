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

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "league_ledger/country.hpp"
#include "league_ledger/csv.hpp"
#include "league_ledger/errors.hpp"

namespace ledger {

/// Trim, collapse internal whitespace runs to single spaces, and lowercase
/// (ASCII). This is the lookup key for alias matching.
inline std::string collapse_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    }
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n\f\v");
    return std::string(s.substr(b, e - b + 1));
}

/// Many-to-one mapping from free-text country spellings to canonical codes.
/// Matching is case-insensitive after whitespace collapse. The first alias
/// loaded for a code doubles as the code's display name. Read-only once
/// loaded; safe to share across threads.
class AliasTable {
  public:
    AliasTable() = default;

    /// Input: CSV with header `alias,code`; lines whose first field starts
    /// with '#' are comments.
    static AliasTable from_csv(std::string_view text,
                               const std::string& origin = "<memory>") {
        csv::Document doc = csv::parse(text);
        AliasTable table;
        bool saw_header = false;
        for (std::size_t i = 0; i < doc.rows.size(); ++i) {
            const auto& row = doc.rows[i];
            if (!row.empty() && !row[0].empty() && row[0][0] == '#') continue;
            if (row.size() == 1 && trim(row[0]).empty()) continue;
            if (!saw_header) {
                if (row.size() < 2 || collapse_name(row[0]) != "alias" ||
                    collapse_name(row[1]) != "code") {
                    fail(ErrorKind::schema,
                         origin + ": alias file must start with header alias,code");
                }
                saw_header = true;
                continue;
            }
            if (row.size() < 2) {
                fail(ErrorKind::schema, origin + " line " +
                                            std::to_string(doc.lines[i]) +
                                            ": expected alias,code");
            }
            table.add(row[0], row[1], origin, doc.lines[i]);
        }
        if (!saw_header) {
            fail(ErrorKind::schema,
                 origin + ": alias file must start with header alias,code");
        }
        return table;
    }

    static AliasTable from_csv_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            fail(ErrorKind::io, "cannot read alias file: " + path.string());
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_csv(buf.str(), path.string());
    }

    void add(std::string_view alias, std::string_view code_text,
             const std::string& origin = "<memory>", std::size_t line = 0) {
        std::string key = collapse_name(alias);
        std::string code = trim(code_text);
        if (key.empty()) {
            fail(ErrorKind::schema, origin + " line " + std::to_string(line) +
                                        ": empty alias");
        }
        CountryCode validated(code);  // enforces [A-Z]{3}
        auto [it, inserted] = alias_to_code_.emplace(key, code);
        if (!inserted && it->second != code) {
            fail(ErrorKind::schema, origin + " line " + std::to_string(line) +
                                        ": alias \"" + std::string(alias) +
                                        "\" maps to both " + it->second + " and " +
                                        code);
        }
        display_.emplace(code, trim(alias));  // first alias wins
    }

    /// Canonical code for a raw spelling, or nullopt when unmapped.
    std::optional<CountryCode> lookup(std::string_view raw) const {
        auto it = alias_to_code_.find(collapse_name(raw));
        if (it == alias_to_code_.end()) return std::nullopt;
        return code_for(it->second);
    }

    /// CountryCode carrying the display name registered for `code`.
    CountryCode code_for(const std::string& code) const {
        auto d = display_.find(code);
        return CountryCode(code, d == display_.end() ? code : d->second);
    }

    std::size_t size() const noexcept { return alias_to_code_.size(); }

  private:
    std::map<std::string, std::string> alias_to_code_;
    std::map<std::string, std::string> display_;
};

/// Resolve a raw country spelling. Unmapped names are a value, not an error;
/// only empty/whitespace-only input is rejected.
inline std::optional<CountryCode> normalize_country(std::string_view raw,
                                                    const AliasTable& aliases) {
    if (collapse_name(raw).empty()) {
        fail(ErrorKind::invalid_name, "country name is empty");
    }
    return aliases.lookup(raw);
}

}  // namespace ledger
