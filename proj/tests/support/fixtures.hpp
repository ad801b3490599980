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

// Shared helpers for the test binaries: bundled-table loaders, random
// snapshot generation, the per-definition scoring oracle, and subprocess
// plumbing for CLI tests.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "league_ledger.hpp"

namespace testsupport {

using namespace ledger;

inline std::filesystem::path fixtures_dir() {
    return std::filesystem::path(LEDGER_FIXTURES_DIR);
}

inline std::filesystem::path tests_data_dir() {
    return std::filesystem::path(LEDGER_TESTS_DATA_DIR);
}

inline std::filesystem::path store_dir() { return fixtures_dir() / "store"; }

inline const AliasTable& aliases() {
    static const AliasTable table =
        AliasTable::from_csv_file(store_dir() / "aliases.csv");
    return table;
}

inline const std::array<std::string, 4>& editions() {
    static const std::array<std::string, 4> eds{"2012-01", "2012-07", "2013-01",
                                                "2013-07"};
    return eds;
}

// ---------------------------------------------------------------- tables

/// country code -> one value per edition column
template <class T>
using EditionTable = std::map<std::string, std::array<T, 4>>;

inline csv::Document read_table(const std::string& name) {
    return csv::parse(read_file(fixtures_dir() / "tables" / name));
}

/// Tables shaped rank,country,<4 edition columns>; table 6 has no rank column.
template <class T, class Parse>
EditionTable<T> load_edition_table(const std::string& name, std::size_t country_col,
                                   Parse parse) {
    csv::Document doc = read_table(name);
    EditionTable<T> out;
    for (std::size_t i = 1; i < doc.rows.size(); ++i) {
        const auto& row = doc.rows[i];
        auto code = normalize_country(row.at(country_col), aliases());
        if (!code.has_value()) {
            throw std::runtime_error("unmapped fixture country: " + row[country_col]);
        }
        std::array<T, 4> values;
        for (std::size_t e = 0; e < 4; ++e) {
            values[e] = parse(row.at(country_col + 1 + e));
        }
        out.emplace(code->code(), values);
    }
    return out;
}

inline const EditionTable<int>& table1_counts() {
    static const auto t = load_edition_table<int>(
        "table1_university_counts.csv", 1,
        [](const std::string& s) { return std::stoi(s); });
    return t;
}

/// Average ranks kept as printed strings (some cells have no decimals).
inline const EditionTable<std::string>& table4_ar_text() {
    static const auto t = load_edition_table<std::string>(
        "table4_average_rank.csv", 1, [](const std::string& s) { return s; });
    return t;
}

inline const EditionTable<long long>& table5_weights() {
    static const auto t = load_edition_table<long long>(
        "table5_weights.csv", 1, [](const std::string& s) { return std::stoll(s); });
    return t;
}

inline const EditionTable<int>& table6_positions() {
    static const auto t = load_edition_table<int>(
        "table6_positions.csv", 0, [](const std::string& s) { return std::stoi(s); });
    return t;
}

struct TopTableRow {
    int position;
    std::string code;
    int universities;
    long long weight;
};

/// Tables 2/3/7/8: rank,country,universities[,weight] in printed order.
inline std::vector<TopTableRow> load_top_table(const std::string& name) {
    csv::Document doc = csv::parse(read_file(fixtures_dir() / "tables" / name));
    std::vector<TopTableRow> rows;
    for (std::size_t i = 1; i < doc.rows.size(); ++i) {
        const auto& row = doc.rows[i];
        auto code = normalize_country(row.at(1), aliases());
        if (!code.has_value()) {
            throw std::runtime_error("unmapped fixture country: " + row[1]);
        }
        long long w = row.size() > 3 ? std::stoll(row.at(3)) : 0;
        rows.push_back({std::stoi(row.at(0)), code->code(), std::stoi(row.at(2)), w});
    }
    return rows;
}

inline const std::vector<TopTableRow>& table7_qs() {
    static const auto t = load_top_table("table7_qs_top500.csv");
    return t;
}

inline const std::vector<TopTableRow>& table8_wr() {
    static const auto t = load_top_table("table8_wr_top500.csv");
    return t;
}

/// CountryScores for one edition column of Table 5 (weights + Table 1 counts).
inline std::vector<CountryScore> table5_scores(std::size_t edition_index) {
    std::vector<CountryScore> scores;
    for (const auto& [code, weights] : table5_weights()) {
        int count = table1_counts().at(code).at(edition_index);
        scores.emplace_back(aliases().code_for(code), count, std::nullopt,
                            weights.at(edition_index));
    }
    return scores;
}

/// CountryRanking rebuilt from a top-500 table transcription (positions and
/// weights exactly as printed).
inline CountryRanking top_table_ranking(const std::vector<TopTableRow>& rows,
                                        const std::string& source) {
    std::vector<RankedScore> ranked;
    for (const auto& r : rows) {
        ranked.push_back({r.position, CountryScore(aliases().code_for(r.code),
                                                   r.universities, std::nullopt,
                                                   r.weight)});
    }
    return CountryRanking(Method::weight, {source, "2012-01@top500", 500},
                          std::move(ranked));
}

// ------------------------------------------------------- random snapshots

struct RandomSnapshotConfig {
    int max_m = 50;
    int max_countries = 10;
    int max_entries_per_country = 8;
    /// Sample ranks without replacement. Tied ranks are legal in the model,
    /// but the W upper bound and the top-N rescale premise assume one
    /// institution per rank, so those properties use distinct draws.
    bool distinct_ranks = false;
};

inline std::string synthetic_code(int i) {
    std::string code = "AAA";
    code[2] = static_cast<char>('A' + i % 26);
    code[1] = static_cast<char>('A' + (i / 26) % 26);
    return code;
}

/// Random snapshot: up to max_countries countries, ranks drawn uniformly in
/// [1, m] (with duplicates - tied institutions - unless configured away).
inline RankingSnapshot random_snapshot(std::mt19937& rng,
                                       const RandomSnapshotConfig& config = {}) {
    std::uniform_int_distribution<int> m_dist(1, config.max_m);
    int m = m_dist(rng);
    std::uniform_int_distribution<int> country_dist(1, config.max_countries);
    int countries = country_dist(rng);
    std::vector<int> pool;
    if (config.distinct_ranks) {
        pool.resize(static_cast<std::size_t>(m));
        std::iota(pool.begin(), pool.end(), 1);
        std::shuffle(pool.begin(), pool.end(), rng);
    }
    std::vector<UniversityEntry> entries;
    std::uniform_int_distribution<int> rank_dist(1, m);
    int serial = 0;
    for (int c = 0; c < countries; ++c) {
        CountryCode code(synthetic_code(c));
        std::uniform_int_distribution<int> n_dist(0, config.max_entries_per_country);
        int n = n_dist(rng);
        for (int i = 0; i < n; ++i) {
            if (entries.size() >= static_cast<std::size_t>(m)) break;
            int rank;
            if (config.distinct_ranks) {
                if (pool.empty()) break;
                rank = pool.back();
                pool.pop_back();
            } else {
                rank = rank_dist(rng);
            }
            entries.emplace_back(rank, "u" + std::to_string(++serial), code);
        }
    }
    if (entries.empty()) {
        entries.emplace_back(1, "u0", CountryCode("AAA"));
    }
    return RankingSnapshot("rand", "2012-01", m, std::move(entries));
}

// ------------------------------------------------------------ naive oracle

/// Per-definition recomputation of count, AR and W for one country:
/// a plain loop over the entries, independent of score_all's bookkeeping.
struct NaiveScore {
    int count = 0;
    double ar = 0.0;
    long long w = 0;
};

inline NaiveScore naive_country_score(const RankingSnapshot& snapshot,
                                      const CountryCode& country) {
    NaiveScore result;
    long long rank_sum = 0;
    for (const auto& e : snapshot.entries()) {
        if (e.country == country) {
            ++result.count;
            rank_sum += e.rank;
            result.w += snapshot.m() - e.rank + 1;
        }
    }
    if (result.count > 0) {
        result.ar = static_cast<double>(rank_sum) / static_cast<double>(result.count);
    }
    return result;
}

// ------------------------------------------------------------- subprocess

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out += "'";
    return out;
}

#ifdef LEDGER_CLI_BIN
inline CliResult run_cli(const std::vector<std::string>& args,
                         bool quiet_stderr = true,
                         const std::string& env_prefix = "") {
    std::string command = env_prefix.empty() ? "" : env_prefix + " ";
    command += shell_quote(LEDGER_CLI_BIN);
    for (const auto& a : args) {
        command += " " + shell_quote(a);
    }
    if (quiet_stderr) command += " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        throw std::runtime_error("popen failed for: " + command);
    }
    CliResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}
#endif

/// Self-cleaning unique temp directory.
class TempDir {
  public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        static std::atomic<int> counter{0};
        path_ = base / ("league_ledger_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/// Rows of a rank/diff/compare CSV emission, comment lines stripped.
inline std::vector<std::vector<std::string>> csv_data_rows(const std::string& text) {
    std::string without_comments;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        without_comments += line + "\n";
    }
    return csv::parse(without_comments).rows;
}

}  // namespace testsupport
