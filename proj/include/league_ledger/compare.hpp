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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "league_ledger/correlation.hpp"
#include "league_ledger/errors.hpp"
#include "league_ledger/model.hpp"

namespace ledger {

/// Per-country deltas between two rankings plus the countries that appear on
/// one side only (those never become deltas).
struct DiffResult {
    std::vector<RankDiff> diffs;  // ordered by position_before ascending
    std::vector<CountryCode> only_in_before;
    std::vector<CountryCode> only_in_after;
};

/// Diff two rankings produced by the same method. delta = before - after,
/// so a positive delta is a move toward position 1.
inline DiffResult edition_diff(const CountryRanking& before,
                               const CountryRanking& after) {
    if (before.method() != after.method()) {
        fail(ErrorKind::method_mismatch,
             "edition_diff: cannot diff a " + to_string(before.method()) +
                 " ranking against a " + to_string(after.method()) + " ranking");
    }
    std::map<std::string, std::pair<int, CountryCode>> after_pos;
    for (const auto& row : after.rows()) {
        after_pos.emplace(row.score.country().code(),
                          std::make_pair(row.position, row.score.country()));
    }
    DiffResult result;
    std::map<std::string, bool> matched;
    for (const auto& row : before.rows()) {
        auto it = after_pos.find(row.score.country().code());
        if (it == after_pos.end()) {
            result.only_in_before.push_back(row.score.country());
        } else {
            matched[it->first] = true;
            result.diffs.emplace_back(row.score.country(), row.position,
                                      it->second.first);
        }
    }
    for (const auto& [code, pos] : after_pos) {
        if (!matched.count(code)) {
            result.only_in_after.push_back(pos.second);
        }
    }
    std::sort(result.only_in_before.begin(), result.only_in_before.end());
    std::sort(result.only_in_after.begin(), result.only_in_after.end());
    return result;
}

/// The biggest climber and the biggest faller. Ties break toward the
/// alphabetically first country code.
inline std::pair<RankDiff, RankDiff> extreme_movers(std::span<const RankDiff> diffs) {
    if (diffs.empty()) {
        fail(ErrorKind::empty_input, "extreme_movers: no diffs");
    }
    const RankDiff* gain = &diffs.front();
    const RankDiff* drop = &diffs.front();
    for (const auto& d : diffs) {
        if (d.delta > gain->delta ||
            (d.delta == gain->delta && d.country < gain->country)) {
            gain = &d;
        }
        if (d.delta < drop->delta ||
            (d.delta == drop->delta && d.country < drop->country)) {
            drop = &d;
        }
    }
    return {*gain, *drop};
}

/// Countries by university count, descending, truncated to k; ties break on
/// country code ascending. Returns fewer than k when fewer countries exist.
inline std::vector<std::pair<CountryCode, int>> select_top_countries(
    const RankingSnapshot& snapshot, int k) {
    if (k < 1) {
        fail(ErrorKind::invalid_argument, "select_top_countries: k must be >= 1");
    }
    std::map<std::string, std::pair<CountryCode, int>> counts;
    for (const auto& e : snapshot.entries()) {
        auto it = counts.find(e.country.code());
        if (it == counts.end()) {
            counts.emplace(e.country.code(), std::make_pair(e.country, 1));
        } else {
            ++it->second.second;
        }
    }
    std::vector<std::pair<CountryCode, int>> out;
    out.reserve(counts.size());
    for (auto& [code, entry] : counts) {
        out.push_back(entry);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > static_cast<std::size_t>(k)) {
        out.erase(out.begin() + k, out.end());
    }
    return out;
}

/// Agreement between two rankings over their common countries.
struct SimilarityResult {
    double spearman_rho = 0.0;
    double kendall_tau_b = 0.0;
    int common_countries = 0;
    std::vector<CountryCode> only_in_a;
    std::vector<CountryCode> only_in_b;
};

/// Restrict both rankings to their common countries, re-rank each side
/// 1..c preserving relative order, and correlate the re-ranked positions.
/// Countries absent from one side are reported, never imputed.
inline SimilarityResult similarity(const CountryRanking& a, const CountryRanking& b) {
    if (a.rows().empty() || b.rows().empty()) {
        fail(ErrorKind::empty_input, "similarity: empty ranking");
    }
    std::map<std::string, std::pair<int, CountryCode>> pos_b;
    for (const auto& row : b.rows()) {
        pos_b.emplace(row.score.country().code(),
                      std::make_pair(row.position, row.score.country()));
    }
    // common countries with their original positions, keyed by code
    std::map<std::string, std::pair<int, int>> common;
    SimilarityResult result;
    for (const auto& row : a.rows()) {
        auto it = pos_b.find(row.score.country().code());
        if (it == pos_b.end()) {
            result.only_in_a.push_back(row.score.country());
        } else {
            common.emplace(it->first,
                           std::make_pair(row.position, it->second.first));
        }
    }
    for (const auto& [code, pos] : pos_b) {
        if (!common.count(code)) {
            result.only_in_b.push_back(pos.second);
        }
    }
    std::sort(result.only_in_a.begin(), result.only_in_a.end());
    std::sort(result.only_in_b.begin(), result.only_in_b.end());
    result.common_countries = static_cast<int>(common.size());
    if (common.size() < 2) {
        fail(ErrorKind::insufficient_overlap,
             "similarity: only " + std::to_string(common.size()) +
                 " common countries (need at least 2)");
    }
    // re-rank both sides 1..c preserving relative order
    std::vector<std::pair<int, std::string>> side_a;
    std::vector<std::pair<int, std::string>> side_b;
    for (const auto& [code, positions] : common) {
        side_a.emplace_back(positions.first, code);
        side_b.emplace_back(positions.second, code);
    }
    std::sort(side_a.begin(), side_a.end());
    std::sort(side_b.begin(), side_b.end());
    std::map<std::string, int> rerank_a;
    std::map<std::string, int> rerank_b;
    for (std::size_t i = 0; i < side_a.size(); ++i) {
        rerank_a[side_a[i].second] = static_cast<int>(i) + 1;
        rerank_b[side_b[i].second] = static_cast<int>(i) + 1;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(common.size());
    ys.reserve(common.size());
    for (const auto& [code, positions] : common) {
        xs.push_back(rerank_a[code]);
        ys.push_back(rerank_b[code]);
    }
    result.spearman_rho = spearman_rho(xs, ys);
    result.kendall_tau_b = kendall_tau_b(xs, ys);
    return result;
}

}  // namespace ledger
