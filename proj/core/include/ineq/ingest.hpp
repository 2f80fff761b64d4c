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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ineq/money.hpp"
#include "ineq/panel.hpp"

namespace ineq {

enum class Severity { error, warning };

std::string to_string(Severity severity);

/// One validation finding, anchored to a 1-based input line (0 when the
/// finding is not tied to a specific line).
struct Issue {
    int row = 0;
    std::string code;
    std::string message;
    Severity severity = Severity::error;
};

struct ParsedCities {
    std::vector<CityYearRecord> records;
    std::vector<Issue> issues;
};

struct ParsedEvents {
    std::vector<ChangeEvent> events;
    std::vector<Issue> issues;
};

/// Parses `year,city_id,city_name,province,region,population,ati` rows.
/// Column order is taken from the header; extra columns are ignored. Rows
/// with problems are reported in issues and skipped, so the returned records
/// are always well formed. ati is parsed as decimal euros into exact cents.
ParsedCities parse_city_csv(std::istream& in);

/// Parses `kind,year_effective,sources,target,new_province,new_region` rows.
/// Merge rows list sources separated by ';'.
ParsedEvents parse_events_csv(std::istream& in);

void write_city_csv(std::ostream& out, std::span<const CityYearRecord> records);
void write_events_csv(std::ostream& out, std::span<const ChangeEvent> events);

struct YearSummary {
    int year = 0;
    std::int64_t n_cities = 0;
    std::int64_t population = 0;
    Money ati_total;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
    std::vector<YearSummary> years;

    bool ok() const { return errors.empty(); }
};

/// Cross-record and cross-file checks: duplicate (year, city) keys, events
/// that reference unknown cities or fall outside the year range, structurally
/// invalid events, membership gaps that no event explains (warnings), and
/// optional expected per-year city counts (COUNT_MISMATCH warnings). Parse
/// issues passed in are folded into the report unchanged.
ValidationReport validate(std::span<const CityYearRecord> records,
                          std::span<const ChangeEvent> events,
                          std::span<const Issue> parse_issues = {},
                          const std::map<int, std::int64_t>* expected_counts = nullptr);

/// Throws DataError on the first error-severity issue. Convenience for
/// commands that need clean inputs rather than a report.
void require_clean(std::span<const Issue> issues);

}  // namespace ineq
