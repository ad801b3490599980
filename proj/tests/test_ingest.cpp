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

#include <doctest.h>

#include "support/fixtures.hpp"

using namespace ledger;
using testsupport::aliases;
using testsupport::TempDir;
using testsupport::write_text;

TEST_CASE("single-row parse with a non-default name column") {
    auto [snap, report] = parse_snapshot(
        "rank,university,country\n1,Harvard University,United States of America\n",
        "webometrics", "2012-01", aliases());
    CHECK(report.parsed_rows == 1);
    CHECK(report.rejected_rows == 0);
    CHECK(snap.m() == 1);
    REQUIRE(snap.entries().size() == 1);
    CHECK(snap.entries()[0].rank == 1);
    CHECK(snap.entries()[0].country.code() == "USA");
}

TEST_CASE("rank 0 is rejected with an explanation") {
    auto [snap, report] = parse_snapshot(
        "rank,name,country\n0,Bad University,France\n1,Good University,France\n",
        "s", "2012-01", aliases());
    CHECK(report.parsed_rows == 1);
    CHECK(report.rejected_rows == 1);
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].find("rank must be >= 1") != std::string::npos);
    CHECK(report.warnings[0].find("line 2") != std::string::npos);
}

TEST_CASE("five-row file against a hand-built snapshot") {
    std::string text =
        "rank,name,country\n"
        "3,C Uni,France\n"
        "1,A Uni,France\n"
        "5,E Uni,Germany\n"
        "2,B Uni,Germany\n"
        "4,D Uni,France\n";
    auto [snap, report] = parse_snapshot(text, "wr", "2013-07", aliases());

    CountryCode fra = aliases().lookup("France").value();
    CountryCode deu = aliases().lookup("Germany").value();
    RankingSnapshot expected("wr", "2013-07", 5,
                             {{1, "A Uni", fra},
                              {2, "B Uni", deu},
                              {3, "C Uni", fra},
                              {4, "D Uni", fra},
                              {5, "E Uni", deu}});
    CHECK(snap == expected);
    CHECK(report.parsed_rows == 5);
    CHECK(report.clean());
}

TEST_CASE("parsing is deterministic") {
    std::string text =
        "rank,name,country\n2,B,France\nbad,row,France\n1,A,Atlantis\n";
    auto first = parse_snapshot(text, "s", "2012-01", aliases());
    auto second = parse_snapshot(text, "s", "2012-01", aliases());
    CHECK(first.first == second.first);
    CHECK(first.second.parsed_rows == second.second.parsed_rows);
    CHECK(first.second.warnings == second.second.warnings);
    CHECK(first.second.unmapped_names == second.second.unmapped_names);
}

TEST_CASE("unmapped countries: rejected by default, ZZZ bucket on request") {
    std::string text = "rank,name,country\n1,A,France\n2,B,Atlantis\n";
    auto [snap, report] = parse_snapshot(text, "s", "2012-01", aliases());
    CHECK(report.parsed_rows == 1);
    CHECK(report.rejected_rows == 1);
    REQUIRE(report.unmapped_names.size() == 1);
    CHECK(report.unmapped_names[0].first == "Atlantis");
    CHECK(report.unmapped_names[0].second == 3);

    ParseOptions opts;
    opts.include_unmapped = true;
    auto [snap2, report2] = parse_snapshot(text, "s", "2012-01", aliases(), opts);
    CHECK(report2.parsed_rows == 2);
    CHECK(report2.rejected_rows == 0);
    CHECK(report2.unmapped_names.size() == 1);  // still reported
    CHECK(snap2.entries()[1].country.code() == "ZZZ");
}

TEST_CASE("report arithmetic: parsed + rejected = data rows") {
    std::string text =
        "rank,name,country\n"
        "1,A,France\n"
        "x,B,France\n"
        "-2,C,France\n"
        "\n"
        "3,D,Nowhereland\n"
        "2,,France\n";
    auto [snap, report] = parse_snapshot(text, "s", "2012-01", aliases());
    CHECK(report.parsed_rows == 1);
    CHECK(report.rejected_rows == 4);  // blank line is not a data row
    CHECK(snap.entries().size() == 1);
}

TEST_CASE("m defaults to the maximum rank seen, override rejects overflow") {
    std::string text = "rank,name,country\n7,A,France\n2,B,France\n";
    auto [snap, report] = parse_snapshot(text, "s", "2012-01", aliases());
    CHECK(snap.m() == 7);

    ParseOptions opts;
    opts.m_override = 5;
    auto [snap2, report2] = parse_snapshot(text, "s", "2012-01", aliases(), opts);
    CHECK(snap2.m() == 5);
    CHECK(report2.parsed_rows == 1);
    CHECK(report2.rejected_rows == 1);
    CHECK(report2.warnings[0].find("exceeds list size") != std::string::npos);
}

TEST_CASE("schema and document errors") {
    CHECK_THROWS_AS(
        parse_snapshot("rank,name\n1,A\n", "s", "2012-01", aliases()), Error);
    CHECK_THROWS_AS(parse_snapshot("", "s", "2012-01", aliases()), Error);
    // zero parseable rows
    try {
        parse_snapshot("rank,name,country\n0,A,France\n", "s", "2012-01", aliases());
        FAIL("expected EmptySnapshot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::empty_snapshot);
    }
}

TEST_CASE("duplicate (name, country) pairs parse with a warning") {
    std::string text =
        "rank,name,country\n1,Twin Uni,France\n2,Twin Uni,France\n";
    auto [snap, report] = parse_snapshot(text, "s", "2012-01", aliases());
    CHECK(snap.entries().size() == 2);
    CHECK(report.parsed_rows == 2);
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].find("duplicate university") != std::string::npos);
}

TEST_CASE("store layout enumeration") {
    TempDir tmp;
    write_text(tmp.path() / "webometrics" / "2012-01.csv",
               "rank,name,country\n1,A,France\n");
    write_text(tmp.path() / "qs" / "2012-01.csv",
               "rank,name,country\n1,B,Germany\n");
    write_text(tmp.path() / "qs" / "notes.txt", "not a snapshot");
    write_text(tmp.path() / "qs" / "2012-13.csv", "rank,name,country\n1,B,Germany\n");
    write_text(tmp.path() / "aliases.csv", "alias,code\nFrance,FRA\n");

    StoreLoad load = load_store(tmp.path(), aliases());
    REQUIRE(load.entries.size() == 2);
    CHECK(load.entries[0].snapshot.source() == "qs");
    CHECK(load.entries[1].snapshot.source() == "webometrics");
    REQUIRE(load.warnings.size() == 2);
    CHECK(load.warnings[0].find("2012-13.csv") != std::string::npos);
    CHECK(load.warnings[1].find("notes.txt") != std::string::npos);
}

TEST_CASE("empty store root is not an error; missing root is") {
    TempDir tmp;
    CHECK(load_store(tmp.path(), aliases()).entries.empty());
    CHECK_THROWS_AS(load_store(tmp.path() / "nope", aliases()), Error);
}

TEST_CASE("the shipped fixture store loads clean") {
    StoreLoad load = load_store(testsupport::store_dir(), aliases());
    REQUIRE(load.entries.size() == 5);  // 4 webometrics editions + 1 qs
    CHECK(load.warnings.empty());

    std::vector<std::string> editions;
    for (const auto& e : load.entries) {
        if (e.snapshot.source() == "webometrics") {
            editions.push_back(e.snapshot.edition());
        }
        // every fixture row parses and every country name resolves
        CHECK(e.report.clean());
        CHECK(e.report.warnings.empty());
    }
    CHECK(editions == std::vector<std::string>{"2012-01", "2012-07", "2013-01",
                                               "2013-07"});
    CHECK(load.entries[0].snapshot.source() == "qs");
    CHECK(load.entries[0].snapshot.m() == 500);
    CHECK(load.entries[1].snapshot.m() == 12000);
}

TEST_CASE("every bundled table transcription resolves through the alias file") {
    // tables 1-8 all load through normalize_country in the fixture helpers;
    // an unmapped spelling would throw here
    CHECK(testsupport::table1_counts().size() == 50);
    CHECK(testsupport::table4_ar_text().size() == 50);
    CHECK(testsupport::table5_weights().size() == 50);
    CHECK(testsupport::table6_positions().size() == 50);
    CHECK(testsupport::table7_qs().size() == 50);
    CHECK(testsupport::table8_wr().size() == 48);

    auto t2 = testsupport::load_top_table("table2_qs_top50_counts.csv");
    auto t3 = testsupport::load_top_table("table3_wr_top50_counts.csv");
    CHECK(t2.size() == 50);
    CHECK(t3.size() == 48);
}

TEST_CASE("load_snapshot pinpoints missing snapshots") {
    try {
        load_snapshot(testsupport::store_dir(), "webometrics", "2019-01", aliases());
        FAIL("expected missing_snapshot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_snapshot);
    }
}
