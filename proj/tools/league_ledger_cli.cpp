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

// league-ledger: aggregate university-ranking snapshots into country league
// tables, diff them across editions, and compare ranking systems.
//
// Exit codes: 0 ok, 1 validation failure, 2 missing snapshot, 3 parse
// failure, 4 empty diff intersection, 5 insufficient overlap, 64 usage.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "league_ledger.hpp"

namespace {

using namespace ledger;

constexpr int kExitValidation = 1;
constexpr int kExitMissingSnapshot = 2;
constexpr int kExitParseFailure = 3;
constexpr int kExitEmptyIntersection = 4;
constexpr int kExitInsufficientOverlap = 5;
constexpr int kExitUsage = 64;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::missing_snapshot: return kExitMissingSnapshot;
        case ErrorKind::insufficient_overlap: return kExitInsufficientOverlap;
        case ErrorKind::invalid_argument: return kExitUsage;
        default: return kExitParseFailure;
    }
}

struct CommonOpts {
    std::string store;
    std::string aliases;  // defaults to <store>/aliases.csv
    std::string format = "markdown";
    int precision = 2;
    std::string out;
    bool include_unmapped = false;

    std::filesystem::path alias_path() const {
        return aliases.empty() ? std::filesystem::path(store) / "aliases.csv"
                               : std::filesystem::path(aliases);
    }

    ReportSpec report_spec() const {
        ReportSpec spec;
        spec.format = parse_format(format);
        spec.precision = precision;
        if (!out.empty()) spec.destination = std::filesystem::path(out);
        spec.validate();
        return spec;
    }

    ParseOptions parse_options() const {
        ParseOptions options;
        options.include_unmapped = include_unmapped;
        return options;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--store", opts.store, "snapshot store root")
        ->envname("LEAGUE_LEDGER_STORE")
        ->required();
    cmd->add_option("--aliases", opts.aliases,
                    "country alias CSV (default: <store>/aliases.csv)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "markdown", "md"}))
        ->default_val("markdown");
    cmd->add_option("--precision", opts.precision,
                    "decimal places for average ranks")
        ->check(CLI::Range(0, 10))
        ->default_val(2);
    cmd->add_option("--out", opts.out, "write the report to this file");
    cmd->add_flag("--include-unmapped", opts.include_unmapped,
                  "keep rows with unmapped countries under the ZZZ bucket");
}

void report_ingest_problems(const std::string& label, const IngestReport& report) {
    for (const auto& w : report.warnings) {
        std::cerr << "warning: " << label << " " << w << "\n";
    }
    if (!report.unmapped_names.empty()) {
        std::cerr << "warning: " << label << " has " << report.unmapped_names.size()
                  << " rows with unmapped countries\n";
    }
}

std::string signed_text(int delta) {
    if (delta > 0) return "+" + std::to_string(delta);
    return std::to_string(delta);
}

std::string join_display_names(const std::vector<CountryCode>& countries) {
    std::string out;
    for (const auto& c : countries) {
        if (!out.empty()) out += ", ";
        out += c.display_name();
    }
    return out;
}

nlohmann::ordered_json code_array(const std::vector<CountryCode>& countries) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : countries) arr.push_back(c.code());
    return arr;
}

CountryRanking ranking_from_store(const CommonOpts& opts, const AliasTable& aliases,
                                  const std::string& source, const std::string& edition,
                                  Method method, std::optional<int> top_n) {
    auto [snapshot, report] =
        load_snapshot(opts.store, source, edition, aliases, opts.parse_options());
    report_ingest_problems(source + "/" + edition, report);
    if (top_n.has_value()) {
        snapshot = top_n_filter(snapshot, *top_n);
    }
    RankingBasis basis{snapshot.source(), snapshot.edition(), snapshot.m()};
    return rank_countries(score_all(snapshot), method, basis);
}

// ---------------------------------------------------------------- rank

int cmd_rank(const CommonOpts& opts, const std::string& source,
             const std::string& edition, const std::string& method_text,
             std::optional<int> top_n) {
    ReportSpec spec = opts.report_spec();
    AliasTable aliases = AliasTable::from_csv_file(opts.alias_path());
    Method method = parse_method(method_text);
    CountryRanking ranking =
        ranking_from_store(opts, aliases, source, edition, method, top_n);

    Report report;
    report.title = "country ranking";
    report.meta["tool"] = kToolName;
    report.meta["version"] = kVersion;
    report.meta["source"] = ranking.basis().source;
    report.meta["edition"] = ranking.basis().edition;
    report.meta["method"] = to_string(ranking.method());
    report.meta["m"] = ranking.basis().m;
    report.columns = {"position", "country", "count", "score"};
    report.align = "rlrr";
    for (const auto& row : ranking.rows()) {
        Cell score = method == Method::weight
                         ? cell(row.score.w())
                         : cell_fixed(*row.score.ar(), spec.precision);
        report.rows.push_back({cell(row.position),
                               cell(row.score.country().display_name()),
                               cell(row.score.count()), score});
    }
    emit(report, spec);
    return 0;
}

// ---------------------------------------------------------------- diff

int cmd_diff(const CommonOpts& opts, const std::string& source,
             const std::string& before, const std::string& after,
             const std::string& method_text, std::optional<int> top_n) {
    ReportSpec spec = opts.report_spec();
    AliasTable aliases = AliasTable::from_csv_file(opts.alias_path());
    Method method = parse_method(method_text);
    CountryRanking ranking_before =
        ranking_from_store(opts, aliases, source, before, method, top_n);
    CountryRanking ranking_after =
        ranking_from_store(opts, aliases, source, after, method, top_n);

    DiffResult diff = edition_diff(ranking_before, ranking_after);
    if (diff.diffs.empty()) {
        std::cerr << "error: no common countries between " << source << "/" << before
                  << " and " << source << "/" << after << "\n";
        return kExitEmptyIntersection;
    }
    auto [gain, drop] = extreme_movers(diff.diffs);

    Report report;
    report.title = "ranking diff";
    report.meta["tool"] = kToolName;
    report.meta["version"] = kVersion;
    report.meta["source"] = source;
    report.meta["before"] = ranking_before.basis().edition;
    report.meta["after"] = ranking_after.basis().edition;
    report.meta["method"] = to_string(method);
    report.meta["m_before"] = ranking_before.basis().m;
    report.meta["m_after"] = ranking_after.basis().m;
    report.columns = {"country", "before", "after", "delta"};
    report.align = "lrrr";
    for (const auto& d : diff.diffs) {
        report.rows.push_back({cell(d.country.display_name()),
                               cell(d.position_before), cell(d.position_after),
                               Cell{signed_text(d.delta), d.delta}});
    }
    report.notes.emplace_back("largest gain", gain.country.display_name() + " (" +
                                                  signed_text(gain.delta) + ")");
    report.notes.emplace_back("largest drop", drop.country.display_name() + " (" +
                                                  signed_text(drop.delta) + ")");
    if (!diff.only_in_before.empty()) {
        report.notes.emplace_back("only in before",
                                  join_display_names(diff.only_in_before));
    }
    if (!diff.only_in_after.empty()) {
        report.notes.emplace_back("only in after",
                                  join_display_names(diff.only_in_after));
    }
    report.extra["largest_gain"] = gain;
    report.extra["largest_drop"] = drop;
    report.extra["only_in_before"] = code_array(diff.only_in_before);
    report.extra["only_in_after"] = code_array(diff.only_in_after);
    emit(report, spec);
    return 0;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const CommonOpts& opts, const std::string& source_a,
                const std::string& source_b, const std::string& edition,
                const std::string& method_text, std::optional<int> top_n) {
    ReportSpec spec = opts.report_spec();
    AliasTable aliases = AliasTable::from_csv_file(opts.alias_path());
    Method method = parse_method(method_text);
    CountryRanking ranking_a =
        ranking_from_store(opts, aliases, source_a, edition, method, top_n);
    CountryRanking ranking_b =
        ranking_from_store(opts, aliases, source_b, edition, method, top_n);

    SimilarityResult sim = similarity(ranking_a, ranking_b);

    Report report;
    report.title = "ranking comparison";
    report.meta["tool"] = kToolName;
    report.meta["version"] = kVersion;
    report.meta["source_a"] = source_a;
    report.meta["source_b"] = source_b;
    report.meta["edition"] = ranking_a.basis().edition;
    report.meta["method"] = to_string(method);
    report.meta["m_a"] = ranking_a.basis().m;
    report.meta["m_b"] = ranking_b.basis().m;
    report.columns = {"country", "position_a", "position_b"};
    report.align = "lrr";
    for (const auto& row : ranking_a.rows()) {
        auto pos_b = ranking_b.position_of(row.score.country());
        if (!pos_b.has_value()) continue;
        report.rows.push_back({cell(row.score.country().display_name()),
                               cell(row.position), cell(*pos_b)});
    }
    report.notes.emplace_back("spearman_rho", format_fixed(sim.spearman_rho, 6));
    report.notes.emplace_back("kendall_tau_b", format_fixed(sim.kendall_tau_b, 6));
    report.notes.emplace_back("common_countries",
                              std::to_string(sim.common_countries));
    if (!sim.only_in_a.empty()) {
        report.notes.emplace_back("only in " + source_a,
                                  join_display_names(sim.only_in_a));
    }
    if (!sim.only_in_b.empty()) {
        report.notes.emplace_back("only in " + source_b,
                                  join_display_names(sim.only_in_b));
    }
    report.extra["similarity"] = {
        {"spearman_rho", sim.spearman_rho},
        {"kendall_tau_b", sim.kendall_tau_b},
        {"common_countries", sim.common_countries},
        {"only_in_a", code_array(sim.only_in_a)},
        {"only_in_b", code_array(sim.only_in_b)},
    };
    emit(report, spec);
    return 0;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const CommonOpts& opts) {
    AliasTable aliases = AliasTable::from_csv_file(opts.alias_path());
    StoreListing listing = list_store(opts.store);

    std::string out;
    bool ok = true;
    for (const auto& w : listing.warnings) {
        out += "warning: " + w + "\n";
    }
    std::size_t parsed_files = 0;
    for (const auto& file : listing.files) {
        std::string label = file.source + "/" + file.edition;
        try {
            auto [snapshot, report] = parse_snapshot_file(
                file.path, file.source, file.edition, aliases, opts.parse_options());
            out += label + ": parsed=" + std::to_string(report.parsed_rows) +
                   " rejected=" + std::to_string(report.rejected_rows) +
                   " unmapped=" + std::to_string(report.unmapped_names.size()) +
                   " m=" + std::to_string(snapshot.m()) + "\n";
            for (const auto& w : report.warnings) {
                out += "  " + file.path.filename().string() + " " + w + "\n";
            }
            for (const auto& [name, line] : report.unmapped_names) {
                out += "  " + file.path.filename().string() + " line " +
                       std::to_string(line) + ": unmapped country \"" + name +
                       "\"\n";
            }
            if (!report.clean()) ok = false;
            ++parsed_files;
        } catch (const Error& e) {
            out += label + ": ERROR " + std::string(e.what()) + "\n";
            ok = false;
        }
    }
    out += ok ? "store OK (" + std::to_string(parsed_files) + " snapshots)\n"
              : "store INVALID\n";
    std::optional<std::filesystem::path> dest;
    if (!opts.out.empty()) dest = std::filesystem::path(opts.out);
    write_output(out, dest);
    return ok ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"country league tables from university-ranking snapshots"};
    app.set_version_flag("--version", ledger::kVersion);
    app.require_subcommand(1);

    CommonOpts rank_opts;
    std::string rank_source;
    std::string rank_edition;
    std::string rank_method = "w";
    std::optional<int> rank_top_n;
    CLI::App* rank = app.add_subcommand("rank", "rank countries in one snapshot");
    add_common(rank, rank_opts);
    rank->add_option("--source", rank_source, "ranking system tag")->required();
    rank->add_option("--edition", rank_edition, "edition label (YYYY-MM)")->required();
    rank->add_option("--method", rank_method, "scoring method")
        ->check(CLI::IsMember({"ar", "w", "AR", "W"}))
        ->default_val("w");
    rank->add_option("--top-n", rank_top_n, "restrict to universities ranked <= N")
        ->check(CLI::PositiveNumber);

    CommonOpts diff_opts;
    std::string diff_source;
    std::string diff_before;
    std::string diff_after;
    std::string diff_method = "w";
    std::optional<int> diff_top_n;
    CLI::App* diff = app.add_subcommand("diff", "diff two editions of one source");
    add_common(diff, diff_opts);
    diff->add_option("--source", diff_source, "ranking system tag")->required();
    diff->add_option("--before", diff_before, "earlier edition label")->required();
    diff->add_option("--after", diff_after, "later edition label")->required();
    diff->add_option("--method", diff_method, "scoring method")
        ->check(CLI::IsMember({"ar", "w", "AR", "W"}))
        ->default_val("w");
    diff->add_option("--top-n", diff_top_n, "restrict to universities ranked <= N")
        ->check(CLI::PositiveNumber);

    CommonOpts compare_opts;
    std::string compare_a;
    std::string compare_b;
    std::string compare_edition;
    std::string compare_method = "w";
    std::optional<int> compare_top_n;
    CLI::App* compare =
        app.add_subcommand("compare", "compare two ranking systems in one edition");
    add_common(compare, compare_opts);
    compare->add_option("--source-a", compare_a, "first ranking system")->required();
    compare->add_option("--source-b", compare_b, "second ranking system")->required();
    compare->add_option("--edition", compare_edition, "edition label")->required();
    compare->add_option("--method", compare_method, "scoring method")
        ->check(CLI::IsMember({"ar", "w", "AR", "W"}))
        ->default_val("w");
    compare->add_option("--top-n", compare_top_n,
                        "restrict both snapshots to universities ranked <= N")
        ->check(CLI::PositiveNumber);

    CommonOpts validate_opts;
    CLI::App* validate =
        app.add_subcommand("validate", "parse every snapshot and report problems");
    add_common(validate, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (rank->parsed()) {
            return cmd_rank(rank_opts, rank_source, rank_edition, rank_method,
                            rank_top_n);
        }
        if (diff->parsed()) {
            return cmd_diff(diff_opts, diff_source, diff_before, diff_after,
                            diff_method, diff_top_n);
        }
        if (compare->parsed()) {
            return cmd_compare(compare_opts, compare_a, compare_b, compare_edition,
                               compare_method, compare_top_n);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_opts);
        }
    } catch (const ledger::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseFailure;
    }
    return kExitUsage;
}
