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
#include <charconv>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ineq/csv.hpp"
#include "ineq/error.hpp"

namespace ineq {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_year(std::string_view text, int& out) {
    std::int64_t value = 0;
    if (!parse_int(text, value) || value < 1000 || value > 9999) return false;
    out = static_cast<int>(value);
    return true;
}

/// Maps wanted column names to indices in the header row. Missing names are
/// reported and flagged.
class HeaderMap {
public:
    HeaderMap(const std::vector<std::string>& header,
              std::span<const std::string_view> wanted, std::vector<Issue>& issues) {
        for (std::string_view name : wanted) {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) {
                issues.push_back({1, "MISSING_COLUMN",
                                  "header lacks required column '" + std::string(name) + "'",
                                  Severity::error});
                ok_ = false;
            } else {
                index_[name] = static_cast<std::size_t>(it - header.begin());
            }
        }
    }

    bool ok() const { return ok_; }

    std::string_view get(const std::vector<std::string>& row, std::string_view name) const {
        const std::size_t i = index_.at(name);
        return i < row.size() ? std::string_view(row[i]) : std::string_view{};
    }

private:
    std::map<std::string_view, std::size_t> index_;
    bool ok_ = true;
};

std::vector<std::string> split_sources(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t semi = text.find(';', start);
        const std::string_view part =
            text.substr(start, semi == std::string_view::npos ? semi : semi - start);
        if (!part.empty()) out.emplace_back(part);
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return out;
}

std::string join_sources(const std::vector<std::string>& sources) {
    std::string out;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (i) out += ';';
        out += sources[i];
    }
    return out;
}

}  // namespace

std::string to_string(Severity severity) {
    return severity == Severity::error ? "error" : "warning";
}

ParsedCities parse_city_csv(std::istream& in) {
    ParsedCities out;
    csv::Reader reader(in);

    std::vector<std::string> header;
    if (!reader.next(header)) return out;  // empty file: no records, no error

    static constexpr std::string_view kColumns[] = {
        "year", "city_id", "city_name", "province", "region", "population", "ati"};
    const HeaderMap columns(header, kColumns, out.issues);
    if (!columns.ok()) return out;

    std::vector<std::string> row;
    while (reader.next(row)) {
        const int line = reader.line();
        auto bad = [&](const char* code, std::string message) {
            out.issues.push_back({line, code, std::move(message), Severity::error});
        };

        CityYearRecord rec;
        if (!parse_year(columns.get(row, "year"), rec.year)) {
            bad("MALFORMED_YEAR",
                "cannot parse year '" + std::string(columns.get(row, "year")) + "'");
            continue;
        }
        rec.city_id = std::string(columns.get(row, "city_id"));
        rec.city_name = std::string(columns.get(row, "city_name"));
        rec.province = std::string(columns.get(row, "province"));
        rec.region = std::string(columns.get(row, "region"));
        if (rec.city_id.empty() || rec.province.empty() || rec.region.empty()) {
            bad("MALFORMED_CODE", "city_id, province and region must be nonempty");
            continue;
        }

        if (!parse_int(columns.get(row, "population"), rec.population)) {
            bad("MALFORMED_NUMBER",
                "cannot parse population '" + std::string(columns.get(row, "population")) + "'");
            continue;
        }
        const auto ati = Money::try_parse(columns.get(row, "ati"));
        if (!ati) {
            bad("MALFORMED_NUMBER",
                "cannot parse ati '" + std::string(columns.get(row, "ati")) + "'");
            continue;
        }
        rec.ati = *ati;
        if (rec.population < 0 || rec.ati.cents < 0) {
            bad("NEGATIVE_VALUE", "population and ati must be nonnegative");
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

ParsedEvents parse_events_csv(std::istream& in) {
    ParsedEvents out;
    csv::Reader reader(in);

    std::vector<std::string> header;
    if (!reader.next(header)) return out;

    static constexpr std::string_view kColumns[] = {
        "kind", "year_effective", "sources", "target", "new_province", "new_region"};
    const HeaderMap columns(header, kColumns, out.issues);
    if (!columns.ok()) return out;

    std::vector<std::string> row;
    while (reader.next(row)) {
        const int line = reader.line();
        auto bad = [&](std::string message) {
            out.issues.push_back({line, "MALFORMED_EVENT", std::move(message), Severity::error});
        };

        ChangeEvent event;
        const std::string_view kind = columns.get(row, "kind");
        if (kind == "merge") {
            event.kind = EventKind::merge;
        } else if (kind == "move") {
            event.kind = EventKind::move;
        } else {
            bad("unknown event kind '" + std::string(kind) + "'");
            continue;
        }
        if (!parse_year(columns.get(row, "year_effective"), event.year_effective)) {
            out.issues.push_back({line, "MALFORMED_YEAR",
                                  "cannot parse year_effective '" +
                                      std::string(columns.get(row, "year_effective")) + "'",
                                  Severity::error});
            continue;
        }
        event.sources = split_sources(columns.get(row, "sources"));
        event.target = std::string(columns.get(row, "target"));
        event.new_province = std::string(columns.get(row, "new_province"));
        event.new_region = std::string(columns.get(row, "new_region"));

        if (event.target.empty()) {
            bad("event needs a target city id");
            continue;
        }
        if (event.kind == EventKind::merge) {
            if (event.sources.size() < 2) {
                bad("merge needs at least 2 sources");
                continue;
            }
        } else {
            if (event.sources.size() != 1 || event.sources[0] != event.target) {
                bad("move needs exactly one source equal to its target");
                continue;
            }
            if (event.new_province.empty() || event.new_region.empty()) {
                bad("move needs new_province and new_region");
                continue;
            }
        }
        out.events.push_back(std::move(event));
    }
    return out;
}

void write_city_csv(std::ostream& out, std::span<const CityYearRecord> records) {
    csv::write_row(out, {"year", "city_id", "city_name", "province", "region", "population",
                         "ati"});
    for (const auto& r : records) {
        csv::write_row(out, {std::to_string(r.year), r.city_id, r.city_name, r.province,
                             r.region, std::to_string(r.population), r.ati.str()});
    }
}

void write_events_csv(std::ostream& out, std::span<const ChangeEvent> events) {
    csv::write_row(out,
                   {"kind", "year_effective", "sources", "target", "new_province", "new_region"});
    for (const auto& e : events) {
        csv::write_row(out, {to_string(e.kind), std::to_string(e.year_effective),
                             join_sources(e.sources), e.target, e.new_province, e.new_region});
    }
}

ValidationReport validate(std::span<const CityYearRecord> records,
                          std::span<const ChangeEvent> events,
                          std::span<const Issue> parse_issues,
                          const std::map<int, std::int64_t>* expected_counts) {
    ValidationReport report;
    for (const auto& issue : parse_issues) {
        (issue.severity == Severity::error ? report.errors : report.warnings).push_back(issue);
    }

    auto error = [&](std::string code, std::string message) {
        report.errors.push_back({0, std::move(code), std::move(message), Severity::error});
    };
    auto warn = [&](std::string code, std::string message) {
        report.warnings.push_back({0, std::move(code), std::move(message), Severity::warning});
    };

    // per-year summaries and duplicate keys
    std::map<int, YearSummary> years;
    std::set<std::pair<int, std::string_view>> keys;
    for (const auto& r : records) {
        if (!keys.emplace(r.year, r.city_id).second) {
            error("DUPLICATE_KEY", "duplicate record for city '" + r.city_id + "' in year " +
                                       std::to_string(r.year));
        }
        auto& y = years[r.year];
        y.year = r.year;
        ++y.n_cities;
        y.population += r.population;
        y.ati_total += r.ati;
    }
    for (const auto& [year, summary] : years) report.years.push_back(summary);

    if (records.empty()) return report;
    const int min_year = report.years.front().year;
    const int max_year = report.years.back().year;

    // event structure and references
    std::unordered_set<std::string_view> known_ids;
    for (const auto& r : records) known_ids.insert(r.city_id);
    for (const auto& e : events) {
        if (e.year_effective < min_year || e.year_effective > max_year) {
            error("EVENT_YEAR_RANGE", "event effective " + std::to_string(e.year_effective) +
                                          " is outside the panel years " +
                                          std::to_string(min_year) + ".." +
                                          std::to_string(max_year));
        }
        for (const auto& s : e.sources) {
            if (!known_ids.count(s))
                error("UNKNOWN_CITY", "event references city '" + s + "' absent from records");
        }
        if (!known_ids.count(e.target))
            error("UNKNOWN_CITY", "event references city '" + e.target + "' absent from records");
    }

    // membership gaps an event does not explain (warnings: registries are messy)
    std::unordered_map<std::string_view, std::pair<int, int>> presence;  // id -> [first, last]
    for (const auto& r : records) {
        auto [it, inserted] = presence.try_emplace(r.city_id, std::make_pair(r.year, r.year));
        it->second.first = std::min(it->second.first, r.year);
        it->second.second = std::max(it->second.second, r.year);
    }
    std::vector<std::string> gap_messages;
    for (const auto& [id, span] : presence) {
        for (int y = span.first + 1; y < span.second; ++y) {
            if (!keys.count({y, id}))
                gap_messages.push_back("city '" + std::string(id) + "' is missing in year " +
                                       std::to_string(y) + " but present before and after");
        }
        if (span.second < max_year) {
            const bool merged_away = std::any_of(
                events.begin(), events.end(), [&](const ChangeEvent& e) {
                    return e.kind == EventKind::merge && e.year_effective > span.second &&
                           std::find(e.sources.begin(), e.sources.end(), id) != e.sources.end();
                });
            if (!merged_away)
                gap_messages.push_back("city '" + std::string(id) + "' disappears after year " +
                                       std::to_string(span.second) + " with no merge event");
        }
        if (span.first > min_year) {
            const bool merge_target = std::any_of(
                events.begin(), events.end(), [&](const ChangeEvent& e) {
                    return e.kind == EventKind::merge && e.year_effective <= span.first &&
                           e.target == id;
                });
            if (!merge_target)
                gap_messages.push_back("city '" + std::string(id) + "' first appears in year " +
                                       std::to_string(span.first) + " with no merge event");
        }
    }
    std::sort(gap_messages.begin(), gap_messages.end());
    for (auto& m : gap_messages) warn("MISSING_YEAR", std::move(m));

    if (expected_counts) {
        for (const auto& [year, expected] : *expected_counts) {
            const auto it = years.find(year);
            const std::int64_t actual = it == years.end() ? 0 : it->second.n_cities;
            if (actual != expected) {
                warn("COUNT_MISMATCH", "year " + std::to_string(year) + " has " +
                                           std::to_string(actual) + " cities, expected " +
                                           std::to_string(expected));
            }
        }
    }
    return report;
}

void require_clean(std::span<const Issue> issues) {
    for (const auto& issue : issues) {
        if (issue.severity == Severity::error) {
            throw DataError("input row " + std::to_string(issue.row) + " [" + issue.code +
                            "]: " + issue.message);
        }
    }
}

}  // namespace ineq
