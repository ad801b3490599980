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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "league_ledger/errors.hpp"
#include "league_ledger/model.hpp"

namespace ledger {

// Country scoring over one snapshot.
//
//   AR(country) = (sum of the country's university ranks) / n
//   W(country)  = sum over the country's universities of (m - rank + 1)
//
// AR rewards low ranks (lower is better); W is a Borda-style weight where a
// rank-1 university contributes m points (higher is better). W is 0 exactly
// when the country has no university in the list, and at most m*(m+1)/2
// (one country holding every rank). Rank sums are accumulated in integers,
// so results do not depend on entry order.

/// Average rank, or nullopt when the country has no entries.
inline std::optional<double> average_rank(const RankingSnapshot& snapshot,
                                          const CountryCode& country) {
    long long sum = 0;
    long long n = 0;
    for (const auto& e : snapshot.entries()) {
        if (e.country == country) {
            sum += e.rank;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return static_cast<double>(sum) / static_cast<double>(n);
}

/// Borda-style weight; 0 when the country has no entries.
inline long long weight(const RankingSnapshot& snapshot, const CountryCode& country) {
    long long w = 0;
    for (const auto& e : snapshot.entries()) {
        if (e.country == country) {
            w += snapshot.m() - e.rank + 1;
        }
    }
    return w;
}

/// One CountryScore per country appearing in the snapshot, sorted by
/// country code. count, ar and w are mutually consistent with snapshot.m.
inline std::vector<CountryScore> score_all(const RankingSnapshot& snapshot) {
    struct Agg {
        int count = 0;
        long long rank_sum = 0;
        std::string display;
    };
    std::map<std::string, Agg> by_code;
    for (const auto& e : snapshot.entries()) {
        Agg& agg = by_code[e.country.code()];
        if (agg.count == 0) agg.display = e.country.display_name();
        ++agg.count;
        agg.rank_sum += e.rank;
    }
    std::vector<CountryScore> scores;
    scores.reserve(by_code.size());
    long long m = snapshot.m();
    for (const auto& [code, agg] : by_code) {
        double ar = static_cast<double>(agg.rank_sum) / static_cast<double>(agg.count);
        long long w = agg.count * (m + 1) - agg.rank_sum;
        scores.emplace_back(CountryCode(code, agg.display), agg.count, ar, w);
    }
    return scores;
}

namespace detail {

inline bool better_score(const CountryScore& a, const CountryScore& b, Method method) {
    if (method == Method::weight) {
        if (a.w() != b.w()) return a.w() > b.w();
    } else {
        if (*a.ar() != *b.ar()) return *a.ar() < *b.ar();
    }
    // deterministic tie-break: higher university count, then code ascending
    if (a.count() != b.count()) return a.count() > b.count();
    return a.country() < b.country();
}

}  // namespace detail

/// Order scores into a league table. Method W sorts by weight descending,
/// method AR by average rank ascending; ties break on university count,
/// then country code.
inline CountryRanking rank_countries(std::span<const CountryScore> scores,
                                     Method method, RankingBasis basis) {
    if (scores.empty()) {
        fail(ErrorKind::empty_input, "rank_countries: no scores to rank");
    }
    if (method == Method::average_rank) {
        for (const auto& s : scores) {
            if (!s.ar().has_value()) {
                fail(ErrorKind::undefined_score,
                     "rank_countries: no average rank for " + s.country().code());
            }
        }
    }
    std::vector<CountryScore> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end(),
              [method](const CountryScore& a, const CountryScore& b) {
                  return detail::better_score(a, b, method);
              });
    std::vector<RankedScore> rows;
    rows.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        rows.push_back({static_cast<int>(i) + 1, std::move(sorted[i])});
    }
    return CountryRanking(method, std::move(basis), std::move(rows));
}

inline CountryRanking rank_countries(const std::vector<CountryScore>& scores,
                                     Method method, RankingBasis basis) {
    return rank_countries(std::span<const CountryScore>(scores), method,
                          std::move(basis));
}

/// Restrict a snapshot to universities ranked <= n and rescale m so that
/// subsequent scoring uses M = n. When n >= m this is an identity copy
/// (entry set and m untouched); the edition is tagged `@top<n>` either way.
/// Heavily tied lists can hold more than n entries within the top n; the
/// rescaled snapshot cannot represent that and the call is rejected.
inline RankingSnapshot top_n_filter(const RankingSnapshot& snapshot, int n) {
    if (n < 1) {
        fail(ErrorKind::invalid_argument, "top_n_filter: n must be >= 1");
    }
    std::vector<UniversityEntry> kept;
    for (const auto& e : snapshot.entries()) {
        if (e.rank <= n) kept.push_back(e);
    }
    int m = std::min(n, snapshot.m());
    if (kept.size() > static_cast<std::size_t>(m)) {
        fail(ErrorKind::invalid_argument,
             "top_n_filter: " + std::to_string(kept.size()) +
                 " tied entries within the top " + std::to_string(n) +
                 " cannot rescale to m = " + std::to_string(n));
    }
    return RankingSnapshot(snapshot.source(),
                           snapshot.edition() + "@top" + std::to_string(n), m,
                           std::move(kept));
}

}  // namespace ledger
