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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "league_ledger/country.hpp"
#include "league_ledger/errors.hpp"

namespace ledger {

/// Ranking method for country league tables.
enum class Method { average_rank, weight };

inline std::string to_string(Method m) {
    return m == Method::average_rank ? "AR" : "W";
}

inline Method parse_method(std::string_view text) {
    if (text == "ar" || text == "AR") return Method::average_rank;
    if (text == "w" || text == "W") return Method::weight;
    fail(ErrorKind::invalid_argument,
         "method must be one of {ar, w}, got \"" + std::string(text) + "\"");
}

/// `YYYY-MM`, optionally suffixed by one or more `@top<n>` markers left by
/// top-N filtering.
inline bool valid_edition(std::string_view label) {
    if (label.size() < 7) return false;
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    for (int i : {0, 1, 2, 3}) {
        if (!digit(label[static_cast<std::size_t>(i)])) return false;
    }
    if (label[4] != '-' || !digit(label[5]) || !digit(label[6])) return false;
    int month = (label[5] - '0') * 10 + (label[6] - '0');
    if (month < 1 || month > 12) return false;
    std::string_view rest = label.substr(7);
    while (!rest.empty()) {
        if (rest.size() < 5 || rest.substr(0, 4) != "@top" || !digit(rest[4])) {
            return false;
        }
        rest.remove_prefix(5);
        while (!rest.empty() && digit(rest.front())) rest.remove_prefix(1);
    }
    return true;
}

/// One ranked institution. rank is a dimensionless position, 1 = best.
struct UniversityEntry {
    UniversityEntry(int rank, std::string name, CountryCode country)
        : rank(rank), name(std::move(name)), country(std::move(country)) {
        if (this->rank < 1) {
            fail(ErrorKind::invalid_model, "UniversityEntry: rank must be >= 1");
        }
    }

    int rank;
    std::string name;
    CountryCode country;

    friend bool operator==(const UniversityEntry&, const UniversityEntry&) = default;
};

/// One edition of one ranking system. Entries are kept sorted by ascending
/// rank; the list may be sparse (m >= number of entries) and may contain
/// tied ranks. Immutable after construction.
class RankingSnapshot {
  public:
    RankingSnapshot(std::string source, std::string edition, int m,
                    std::vector<UniversityEntry> entries)
        : source_(std::move(source)), edition_(std::move(edition)), m_(m),
          entries_(std::move(entries)) {
        if (source_.empty()) {
            fail(ErrorKind::invalid_model, "RankingSnapshot: source must be non-empty");
        }
        if (!valid_edition(edition_)) {
            fail(ErrorKind::invalid_model,
                 "RankingSnapshot: edition must be YYYY-MM, got \"" + edition_ + "\"");
        }
        if (m_ < 1) {
            fail(ErrorKind::invalid_model, "RankingSnapshot: m must be >= 1");
        }
        if (entries_.size() > static_cast<std::size_t>(m_)) {
            fail(ErrorKind::invalid_model,
                 "RankingSnapshot: m must be >= number of entries");
        }
        for (const auto& e : entries_) {
            if (e.rank > m_) {
                fail(ErrorKind::invalid_model,
                     "RankingSnapshot: entry rank " + std::to_string(e.rank) +
                         " exceeds list size m=" + std::to_string(m_));
            }
        }
        std::stable_sort(entries_.begin(), entries_.end(),
                         [](const UniversityEntry& a, const UniversityEntry& b) {
                             return a.rank < b.rank;
                         });
    }

    const std::string& source() const noexcept { return source_; }
    const std::string& edition() const noexcept { return edition_; }
    int m() const noexcept { return m_; }
    const std::vector<UniversityEntry>& entries() const noexcept { return entries_; }

    friend bool operator==(const RankingSnapshot&, const RankingSnapshot&) = default;

  private:
    std::string source_;
    std::string edition_;
    int m_;
    std::vector<UniversityEntry> entries_;
};

/// Per-country aggregate over one snapshot. The average rank may be absent
/// for weight-only data (e.g. league tables rebuilt from published weights).
class CountryScore {
  public:
    CountryScore(CountryCode country, int count, std::optional<double> ar,
                 long long w)
        : country_(std::move(country)), count_(count), ar_(ar), w_(w) {
        if (count_ < 0) {
            fail(ErrorKind::invalid_model, "CountryScore: count must be >= 0");
        }
        if (count_ == 0) {
            if (w_ != 0) {
                fail(ErrorKind::invalid_model,
                     "CountryScore: count 0 requires w = 0");
            }
            if (ar_.has_value()) {
                fail(ErrorKind::invalid_model,
                     "CountryScore: count 0 requires ar to be absent");
            }
        } else {
            if (w_ < 1) {
                fail(ErrorKind::invalid_model,
                     "CountryScore: w must be >= 1 when count >= 1");
            }
            if (ar_.has_value() && *ar_ < 1.0) {
                fail(ErrorKind::invalid_model, "CountryScore: ar must be >= 1");
            }
        }
    }

    const CountryCode& country() const noexcept { return country_; }
    int count() const noexcept { return count_; }
    const std::optional<double>& ar() const noexcept { return ar_; }
    long long w() const noexcept { return w_; }

    friend bool operator==(const CountryScore&, const CountryScore&) = default;

  private:
    CountryCode country_;
    int count_;
    std::optional<double> ar_;
    long long w_;
};

/// Identifies the snapshot a ranking was derived from.
struct RankingBasis {
    std::string source;
    std::string edition;
    int m = 0;

    friend bool operator==(const RankingBasis&, const RankingBasis&) = default;
};

struct RankedScore {
    int position;
    CountryScore score;

    friend bool operator==(const RankedScore&, const RankedScore&) = default;
};

/// Ordered league table of country scores. Positions run 1..k without gaps;
/// scores are weakly ordered according to the method.
class CountryRanking {
  public:
    CountryRanking(Method method, RankingBasis basis, std::vector<RankedScore> rows)
        : method_(method), basis_(std::move(basis)), rows_(std::move(rows)) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i].position != static_cast<int>(i) + 1) {
                fail(ErrorKind::invalid_model,
                     "CountryRanking: positions must be 1..k without gaps");
            }
        }
        for (std::size_t i = 1; i < rows_.size(); ++i) {
            const CountryScore& prev = rows_[i - 1].score;
            const CountryScore& cur = rows_[i].score;
            if (method_ == Method::weight) {
                if (prev.w() < cur.w()) {
                    fail(ErrorKind::invalid_model,
                         "CountryRanking: w must be weakly decreasing");
                }
            } else {
                if (!prev.ar().has_value() || !cur.ar().has_value()) {
                    fail(ErrorKind::invalid_model,
                         "CountryRanking: ar required for method AR");
                }
                if (*prev.ar() > *cur.ar()) {
                    fail(ErrorKind::invalid_model,
                         "CountryRanking: ar must be weakly increasing");
                }
            }
        }
        if (!rows_.empty() && method_ == Method::average_rank &&
            !rows_.front().score.ar().has_value()) {
            fail(ErrorKind::invalid_model, "CountryRanking: ar required for method AR");
        }
    }

    Method method() const noexcept { return method_; }
    const RankingBasis& basis() const noexcept { return basis_; }
    const std::vector<RankedScore>& rows() const noexcept { return rows_; }

    /// Position of a country, if ranked.
    std::optional<int> position_of(const CountryCode& country) const {
        for (const auto& row : rows_) {
            if (row.score.country() == country) return row.position;
        }
        return std::nullopt;
    }

    friend bool operator==(const CountryRanking&, const CountryRanking&) = default;

  private:
    Method method_;
    RankingBasis basis_;
    std::vector<RankedScore> rows_;
};

/// Position movement of one country between two rankings. delta is
/// before - after: positive means the country moved toward position 1.
struct RankDiff {
    RankDiff(CountryCode country, int position_before, int position_after)
        : country(std::move(country)), position_before(position_before),
          position_after(position_after), delta(position_before - position_after) {
        if (position_before < 1 || position_after < 1) {
            fail(ErrorKind::invalid_model, "RankDiff: positions must be >= 1");
        }
    }

    CountryCode country;
    int position_before;
    int position_after;
    int delta;

    friend bool operator==(const RankDiff&, const RankDiff&) = default;
};

template <class J>
void to_json(J& j, const RankingBasis& b) {
    j = J{{"source", b.source}, {"edition", b.edition}, {"m", b.m}};
}

template <class J>
void from_json(const J& j, RankingBasis& b) {
    b.source = j.at("source").template get<std::string>();
    b.edition = j.at("edition").template get<std::string>();
    b.m = j.at("m").template get<int>();
}

}  // namespace ledger

// ---------------------------------------------------------------------------
// JSON round-trips. The model types validate on construction, so they are not
// default-constructible and deserialization goes through adl_serializer;
// every from_json re-validates through the constructors.

namespace nlohmann {

template <>
struct adl_serializer<ledger::CountryCode> {
    template <class J>
    static void to_json(J& j, const ledger::CountryCode& c) {
        j = J{{"code", c.code()}, {"name", c.display_name()}};
    }
    template <class J>
    static ledger::CountryCode from_json(const J& j) {
        return ledger::CountryCode(j.at("code").template get<std::string>(),
                                   j.value("name", std::string{}));
    }
};

template <>
struct adl_serializer<ledger::UniversityEntry> {
    template <class J>
    static void to_json(J& j, const ledger::UniversityEntry& e) {
        j = J{{"rank", e.rank}, {"name", e.name}, {"country", e.country}};
    }
    template <class J>
    static ledger::UniversityEntry from_json(const J& j) {
        return ledger::UniversityEntry(
            j.at("rank").template get<int>(),
            j.at("name").template get<std::string>(),
            j.at("country").template get<ledger::CountryCode>());
    }
};

template <>
struct adl_serializer<ledger::RankingSnapshot> {
    template <class J>
    static void to_json(J& j, const ledger::RankingSnapshot& s) {
        j = J{{"source", s.source()},
              {"edition", s.edition()},
              {"m", s.m()},
              {"entries", s.entries()}};
    }
    template <class J>
    static ledger::RankingSnapshot from_json(const J& j) {
        return ledger::RankingSnapshot(
            j.at("source").template get<std::string>(),
            j.at("edition").template get<std::string>(),
            j.at("m").template get<int>(),
            j.at("entries").template get<std::vector<ledger::UniversityEntry>>());
    }
};

template <>
struct adl_serializer<ledger::CountryScore> {
    template <class J>
    static void to_json(J& j, const ledger::CountryScore& s) {
        j = J{{"country", s.country()}, {"count", s.count()}, {"w", s.w()}};
        if (s.ar().has_value()) {
            j["ar"] = *s.ar();
        } else {
            j["ar"] = nullptr;
        }
    }
    template <class J>
    static ledger::CountryScore from_json(const J& j) {
        std::optional<double> ar;
        if (j.contains("ar") && !j.at("ar").is_null()) {
            ar = j.at("ar").template get<double>();
        }
        return ledger::CountryScore(
            j.at("country").template get<ledger::CountryCode>(),
            j.at("count").template get<int>(), ar,
            j.at("w").template get<long long>());
    }
};

template <>
struct adl_serializer<ledger::RankedScore> {
    template <class J>
    static void to_json(J& j, const ledger::RankedScore& r) {
        j = J{{"position", r.position}, {"score", r.score}};
    }
    template <class J>
    static ledger::RankedScore from_json(const J& j) {
        return ledger::RankedScore{
            j.at("position").template get<int>(),
            j.at("score").template get<ledger::CountryScore>()};
    }
};

template <>
struct adl_serializer<ledger::CountryRanking> {
    template <class J>
    static void to_json(J& j, const ledger::CountryRanking& r) {
        j = J{{"method", ledger::to_string(r.method())},
              {"basis", r.basis()},
              {"rows", r.rows()}};
    }
    template <class J>
    static ledger::CountryRanking from_json(const J& j) {
        return ledger::CountryRanking(
            ledger::parse_method(j.at("method").template get<std::string>()),
            j.at("basis").template get<ledger::RankingBasis>(),
            j.at("rows").template get<std::vector<ledger::RankedScore>>());
    }
};

template <>
struct adl_serializer<ledger::RankDiff> {
    template <class J>
    static void to_json(J& j, const ledger::RankDiff& d) {
        j = J{{"country", d.country},
              {"before", d.position_before},
              {"after", d.position_after},
              {"delta", d.delta}};
    }
    template <class J>
    static ledger::RankDiff from_json(const J& j) {
        return ledger::RankDiff(j.at("country").template get<ledger::CountryCode>(),
                                j.at("before").template get<int>(),
                                j.at("after").template get<int>());
    }
};

}  // namespace nlohmann
