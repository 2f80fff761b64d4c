// Copyright 2026 The ineqkit Authors
//
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

#include "ineq/ingest.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ineq/error.hpp"
#include "panel_gen.hpp"

using namespace ineq;

namespace {

ParsedCities parse_cities(const std::string& text) {
    std::istringstream in(text);
    return parse_city_csv(in);
}

ParsedEvents parse_events(const std::string& text) {
    std::istringstream in(text);
    return parse_events_csv(in);
}

int count_code(const std::vector<Issue>& issues, std::string_view code) {
    return static_cast<int>(
        std::count_if(issues.begin(), issues.end(),
                      [&](const Issue& i) { return i.code == code; }));
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("parses well-formed city rows") {
    const auto parsed = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,X1,\"Città, vecchia\",CB,MOL,50000,1234567.89\n"
        "2008,X2,Plain,IS,MOL,4000,0.05\n");
    CHECK(parsed.issues.empty());
    REQUIRE(parsed.records.size() == 2);
    CHECK(parsed.records[0].year == 2007);
    CHECK(parsed.records[0].city_id == "X1");
    CHECK(parsed.records[0].city_name == "Città, vecchia");
    CHECK(parsed.records[0].province == "CB");
    CHECK(parsed.records[0].region == "MOL");
    CHECK(parsed.records[0].population == 50000);
    CHECK(parsed.records[0].ati.cents == 123456789);
    CHECK(parsed.records[1].ati.cents == 5);
}

TEST_CASE("column order does not matter and extras are ignored") {
    const auto parsed = parse_cities(
        "ati,region,extra,city_id,province,year,population,city_name\n"
        "7.25,MOL,ignored,X1,CB,2007,100,Name\n");
    CHECK(parsed.issues.empty());
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].ati.cents == 725);
    CHECK(parsed.records[0].year == 2007);
}

TEST_CASE("an empty file yields no records and no issues") {
    const auto parsed = parse_cities("");
    CHECK(parsed.records.empty());
    CHECK(parsed.issues.empty());
}

TEST_CASE("a missing required column is a header-level error") {
    const auto parsed = parse_cities("year,city_id,city_name,province,region,population\n");
    CHECK(parsed.records.empty());
    REQUIRE(count_code(parsed.issues, "MISSING_COLUMN") == 1);
    CHECK(parsed.issues[0].row == 1);
    CHECK(parsed.issues[0].severity == Severity::error);
}

TEST_CASE("bad rows are reported with codes and skipped, good rows survive") {
    const auto parsed = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "20x7,X1,N,CB,MOL,100,1.00\n"
        "2007,,N,CB,MOL,100,1.00\n"
        "2007,X3,N,CB,MOL,1e3,1.00\n"
        "2007,X4,N,CB,MOL,100,1.2345\n"
        "2007,X5,N,CB,MOL,-100,1.00\n"
        "2007,X6,N,CB,MOL,100,2.50\n");
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].city_id == "X6");
    CHECK(count_code(parsed.issues, "MALFORMED_YEAR") == 1);
    CHECK(count_code(parsed.issues, "MALFORMED_CODE") == 1);
    CHECK(count_code(parsed.issues, "MALFORMED_NUMBER") == 2);
    CHECK(count_code(parsed.issues, "NEGATIVE_VALUE") == 1);
    // rows are 1-based and include the header line
    CHECK(parsed.issues[0].row == 2);
    CHECK(parsed.issues[3].row == 5);
}

TEST_CASE("parses merge and move events") {
    const auto parsed = parse_events(
        "kind,year_effective,sources,target,new_province,new_region\n"
        "merge,2009,A;B;C,D,,\n"
        "move,2010,E,E,P2,R2\n");
    CHECK(parsed.issues.empty());
    REQUIRE(parsed.events.size() == 2);
    CHECK(parsed.events[0].kind == EventKind::merge);
    CHECK(parsed.events[0].sources == std::vector<std::string>{"A", "B", "C"});
    CHECK(parsed.events[0].target == "D");
    CHECK(parsed.events[1].kind == EventKind::move);
    CHECK(parsed.events[1].new_province == "P2");
}

TEST_CASE("structurally bad events are reported and skipped") {
    const auto parsed = parse_events(
        "kind,year_effective,sources,target,new_province,new_region\n"
        "split,2009,A,B,,\n"
        "merge,2009,A,B,,\n"
        "merge,20xx,A;B,C,,\n"
        "move,2009,A,B,P,R\n"
        "move,2009,A,A,,\n"
        "merge,2009,A;B,,,\n"
        "move,2010,E,E,P2,R2\n");
    REQUIRE(parsed.events.size() == 1);
    CHECK(parsed.events[0].target == "E");
    CHECK(count_code(parsed.issues, "MALFORMED_EVENT") == 5);
    CHECK(count_code(parsed.issues, "MALFORMED_YEAR") == 1);
}

TEST_CASE("city records round trip through write and parse") {
    auto gen = testgen::random_panel(31);
    // throw in names that stress the quoting rules
    gen.records[0].city_name = "has, comma";
    gen.records[1].city_name = "has \"quotes\"";
    gen.records[2].city_name = "two\nlines";
    gen.records[3].city_name = "";

    std::ostringstream out;
    write_city_csv(out, gen.records);
    const auto parsed = parse_cities(out.str());
    CHECK(parsed.issues.empty());
    REQUIRE(parsed.records.size() == gen.records.size());
    for (std::size_t i = 0; i < gen.records.size(); ++i) {
        const auto& a = gen.records[i];
        const auto& b = parsed.records[i];
        CHECK(a.year == b.year);
        CHECK(a.city_id == b.city_id);
        CHECK(a.city_name == b.city_name);
        CHECK(a.province == b.province);
        CHECK(a.region == b.region);
        CHECK(a.population == b.population);
        CHECK(a.ati == b.ati);
    }
}

TEST_CASE("events round trip through write and parse") {
    auto gen = testgen::random_panel(32);
    std::ostringstream out;
    write_events_csv(out, gen.events);
    const auto parsed = parse_events(out.str());
    CHECK(parsed.issues.empty());
    REQUIRE(parsed.events.size() == gen.events.size());
    for (std::size_t i = 0; i < gen.events.size(); ++i) {
        const auto& a = gen.events[i];
        const auto& b = parsed.events[i];
        CHECK(a.kind == b.kind);
        CHECK(a.year_effective == b.year_effective);
        CHECK(a.sources == b.sources);
        CHECK(a.target == b.target);
        CHECK(a.new_province == b.new_province);
        CHECK(a.new_region == b.new_region);
    }
}

TEST_CASE("validate summarizes clean panels without findings") {
    const auto cities = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,A,N,P,R,10,1.00\n"
        "2007,B,N,P,R,20,2.00\n"
        "2008,A,N,P,R,11,1.10\n"
        "2008,B,N,P,R,21,2.10\n");
    const auto report = validate(cities.records, {}, cities.issues);
    CHECK(report.ok());
    CHECK(report.warnings.empty());
    REQUIRE(report.years.size() == 2);
    CHECK(report.years[0].year == 2007);
    CHECK(report.years[0].n_cities == 2);
    CHECK(report.years[0].population == 30);
    CHECK(report.years[0].ati_total == Money::from_cents(300));
    CHECK(report.years[1].ati_total == Money::from_cents(320));
}

TEST_CASE("validate flags duplicates, unknown cities and out-of-range events") {
    const auto cities = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,A,N,P,R,10,1.00\n"
        "2007,A,N,P,R,10,1.00\n"
        "2008,A,N,P,R,11,1.10\n");
    const auto events = parse_events(
        "kind,year_effective,sources,target,new_province,new_region\n"
        "move,2009,A,A,P2,R2\n"
        "move,2008,Z,Z,P2,R2\n");
    const auto report = validate(cities.records, events.events, cities.issues);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report.errors, "DUPLICATE_KEY") == 1);
    CHECK(count_code(report.errors, "EVENT_YEAR_RANGE") == 1);
    CHECK(count_code(report.errors, "UNKNOWN_CITY") == 2);  // source and target
}

TEST_CASE("membership gaps without an explaining event are warnings") {
    // B vanishes after 2007 with no merge; C appears in 2008 from nowhere;
    // A skips 2008 entirely
    const auto cities = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,A,N,P,R,10,1.00\n"
        "2007,B,N,P,R,10,1.00\n"
        "2008,C,N,P,R,10,1.00\n"
        "2009,A,N,P,R,10,1.00\n"
        "2009,C,N,P,R,10,1.00\n");
    const auto report = validate(cities.records, {}, cities.issues);
    CHECK(report.ok());  // gaps are warnings, not errors
    CHECK(count_code(report.warnings, "MISSING_YEAR") == 3);
}

TEST_CASE("merge events explain disappearances and appearances") {
    const auto cities = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,A,N,P,R,10,1.00\n"
        "2007,B,N,P,R,10,1.00\n"
        "2008,C,N,P,R,20,2.00\n");
    const auto events = parse_events(
        "kind,year_effective,sources,target,new_province,new_region\n"
        "merge,2008,A;B,C,,\n");
    const auto report = validate(cities.records, events.events, cities.issues);
    CHECK(report.ok());
    CHECK(count_code(report.warnings, "MISSING_YEAR") == 0);
}

TEST_CASE("expected counts produce mismatch warnings") {
    const auto cities = parse_cities(
        "year,city_id,city_name,province,region,population,ati\n"
        "2007,A,N,P,R,10,1.00\n"
        "2007,B,N,P,R,10,1.00\n");
    const std::map<int, std::int64_t> expected = {{2007, 2}, {2008, 5}};
    const auto report = validate(cities.records, {}, cities.issues, &expected);
    CHECK(report.ok());
    REQUIRE(count_code(report.warnings, "COUNT_MISMATCH") == 1);
    CHECK(report.warnings[0].message.find("2008") != std::string::npos);
}

TEST_CASE("require_clean throws on errors and tolerates warnings") {
    const std::vector<Issue> warnings = {{0, "MISSING_YEAR", "gap", Severity::warning}};
    CHECK_NOTHROW(require_clean(warnings));
    const std::vector<Issue> errors = {{3, "DUPLICATE_KEY", "dup", Severity::error}};
    CHECK_THROWS_WITH_AS(require_clean(errors),
                         "input row 3 [DUPLICATE_KEY]: dup", DataError);
}

}  // TEST_SUITE
