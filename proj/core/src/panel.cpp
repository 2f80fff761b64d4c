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

#include "ineq/panel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ineq/error.hpp"

namespace ineq {

namespace {

bool record_key_less(const CityYearRecord& a, const CityYearRecord& b) {
    if (a.year != b.year) return a.year < b.year;
    return a.city_id < b.city_id;
}

}  // namespace

std::string_view scope_code_of(const CityYearRecord& record, Scope scope) {
    switch (scope) {
        case Scope::city: return record.city_id;
        case Scope::province: return record.province;
        case Scope::region: return record.region;
        case Scope::country: return kCountryCode;
    }
    return {};
}

std::string to_string(EventKind kind) {
    return kind == EventKind::merge ? "merge" : "move";
}

EventKind parse_event_kind(std::string_view name) {
    if (name == "merge") return EventKind::merge;
    if (name == "move") return EventKind::move;
    throw DataError("unknown event kind: '" + std::string(name) + "'");
}

std::string to_string(Scope scope) {
    switch (scope) {
        case Scope::city: return "city";
        case Scope::province: return "province";
        case Scope::region: return "region";
        case Scope::country: return "country";
    }
    return "?";
}

Scope parse_scope(std::string_view name) {
    if (name == "city") return Scope::city;
    if (name == "province") return Scope::province;
    if (name == "region") return Scope::region;
    if (name == "country") return Scope::country;
    throw ConfigError("unknown scope: '" + std::string(name) + "'");
}

std::string to_string(ValueField field) {
    return field == ValueField::ati ? "ati" : "population";
}

ValueField parse_value_field(std::string_view name) {
    if (name == "ati") return ValueField::ati;
    if (name == "population") return ValueField::population;
    throw ConfigError("unknown value field: '" + std::string(name) + "'");
}

double value_as_double(const CityValue& value, ValueField field) {
    if (field == ValueField::ati) return static_cast<double>(value.raw) / 100.0;
    return static_cast<double>(value.raw);
}

std::vector<double> values_as_doubles(std::span<const CityValue> values, ValueField field) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(value_as_double(v, field));
    return out;
}

Panel Panel::build(std::vector<CityYearRecord> records, std::vector<ChangeEvent> events) {
    if (records.empty()) throw DataError("panel: no records");

    std::sort(records.begin(), records.end(), record_key_less);
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].year == records[i - 1].year &&
            records[i].city_id == records[i - 1].city_id) {
            throw DataError("panel: duplicate record for city '" + records[i].city_id +
                            "' in year " + std::to_string(records[i].year));
        }
    }
    for (const auto& r : records) {
        if (r.population < 0 || r.ati.cents < 0)
            throw DataError("panel: negative value for city '" + r.city_id + "'");
    }

    Panel panel;
    panel.years_.reserve(8);
    for (const auto& r : records) {
        if (panel.years_.empty() || panel.years_.back() != r.year)
            panel.years_.push_back(r.year);
    }
    const int min_year = panel.years_.front();
    const int max_year = panel.years_.back();

    std::unordered_set<std::string_view> known_ids;
    for (const auto& r : records) known_ids.insert(r.city_id);

    for (const auto& e : events) {
        if (e.year_effective < min_year || e.year_effective > max_year)
            throw DataError("panel: event year " + std::to_string(e.year_effective) +
                            " outside panel range");
        if (e.kind == EventKind::merge) {
            if (e.sources.size() < 2 || e.target.empty())
                throw DataError("panel: merge event needs at least 2 sources and a target");
        } else {
            if (e.sources.size() != 1 || e.sources[0] != e.target)
                throw DataError("panel: move event must have one source equal to its target");
            if (e.new_province.empty() || e.new_region.empty())
                throw DataError("panel: move event needs new province and region codes");
        }
        for (const auto& s : e.sources) {
            if (!known_ids.count(s))
                throw DataError("panel: event references unknown city '" + s + "'");
        }
        if (!known_ids.count(e.target))
            throw DataError("panel: event references unknown city '" + e.target + "'");
    }

    panel.records_ = std::move(records);
    panel.events_ = std::move(events);
    std::stable_sort(panel.events_.begin(), panel.events_.end(),
                     [](const ChangeEvent& a, const ChangeEvent& b) {
                         return a.year_effective < b.year_effective;
                     });
    return panel;
}

std::span<const CityYearRecord> Panel::year_records(int year) const {
    const auto lo = std::lower_bound(records_.begin(), records_.end(), year,
                                     [](const CityYearRecord& r, int y) { return r.year < y; });
    const auto hi = std::upper_bound(records_.begin(), records_.end(), year,
                                     [](int y, const CityYearRecord& r) { return y < r.year; });
    if (lo == hi) return {};
    return {&*lo, static_cast<std::size_t>(hi - lo)};
}

std::int64_t Panel::city_count(int year) const {
    return static_cast<std::int64_t>(year_records(year).size());
}

const CityYearRecord* Panel::find(int year, std::string_view city_id) const {
    const auto span = year_records(year);
    const auto it = std::lower_bound(
        span.begin(), span.end(), city_id,
        [](const CityYearRecord& r, std::string_view id) { return r.city_id < id; });
    if (it == span.end() || it->city_id != city_id) return nullptr;
    return &*it;
}

Panel Panel::harmonize(int reference_year) const {
    if (std::find(years_.begin(), years_.end(), reference_year) == years_.end())
        throw DataError("harmonize: reference year " + std::to_string(reference_year) +
                        " not in panel");

    // direct merge map over events effective by the reference year
    std::unordered_map<std::string, std::string> merged_into;
    for (const auto& e : events_) {
        if (e.kind != EventKind::merge || e.year_effective > reference_year) continue;
        for (const auto& s : e.sources) {
            if (s == e.target) continue;
            auto [it, inserted] = merged_into.emplace(s, e.target);
            if (!inserted)
                throw DataError("harmonize: city '" + s + "' is a source of two merges");
        }
    }

    // transitive closure with cycle detection, memoized
    std::unordered_map<std::string, std::string> resolved;
    auto chase = [&](const std::string& id) -> const std::string& {
        const auto hit = resolved.find(id);
        if (hit != resolved.end()) return hit->second;
        std::vector<std::string> path{id};
        std::string cur = id;
        while (true) {
            const auto next = merged_into.find(cur);
            if (next == merged_into.end()) break;
            cur = next->second;
            if (std::find(path.begin(), path.end(), cur) != path.end())
                throw DataError("harmonize: merge chain cycles at city '" + cur + "'");
            path.push_back(cur);
        }
        for (auto& p : path) resolved.emplace(std::move(p), cur);
        return resolved.find(id)->second;
    };

    // latest applicable move per city (events_ is sorted by year, so a later
    // reassignment overwrites an earlier one)
    std::unordered_map<std::string_view, std::pair<std::string_view, std::string_view>> moved;
    for (const auto& e : events_) {
        if (e.kind != EventKind::move || e.year_effective > reference_year) continue;
        moved[e.target] = {e.new_province, e.new_region};
    }

    // reference-year records are the authority for codes and display names
    std::unordered_map<std::string_view, const CityYearRecord*> frame;
    for (const auto& r : year_records(reference_year)) frame.emplace(r.city_id, &r);

    std::map<std::pair<int, std::string>, CityYearRecord> merged;
    for (const auto& r : records_) {
        const std::string& id = chase(r.city_id);
        auto [it, inserted] = merged.try_emplace({r.year, id});
        CityYearRecord& out = it->second;
        if (inserted) {
            out.year = r.year;
            out.city_id = id;
            const auto ref = frame.find(id);
            if (ref != frame.end()) {
                out.city_name = ref->second->city_name;
                out.province = ref->second->province;
                out.region = ref->second->region;
            } else {
                // identity missing from the reference year: keep its own
                // codes, overlaid with any applicable move
                out.city_name = r.city_name;
                out.province = r.province;
                out.region = r.region;
                const auto mv = moved.find(id);
                if (mv != moved.end()) {
                    out.province = std::string(mv->second.first);
                    out.region = std::string(mv->second.second);
                }
            }
        }
        out.population += r.population;
        out.ati += r.ati;
    }

    Panel result;
    result.records_.reserve(merged.size());
    for (auto& [key, rec] : merged) result.records_.push_back(std::move(rec));
    std::sort(result.records_.begin(), result.records_.end(), record_key_less);
    result.events_ = events_;
    result.years_ = years_;
    result.reference_year_ = reference_year;
    return result;
}

std::vector<AggregateSlice> Panel::aggregate(Scope scope, int year) const {
    const auto span = year_records(year);
    if (span.empty()) throw DataError("aggregate: no records in year " + std::to_string(year));

    std::map<std::string_view, AggregateSlice> groups;
    for (const auto& r : span) {
        auto& slice = groups[scope_code_of(r, scope)];
        ++slice.n_cities;
        slice.population += r.population;
        slice.ati_total += r.ati;
    }

    std::vector<AggregateSlice> out;
    out.reserve(groups.size());
    for (auto& [code, slice] : groups) {
        slice.scope = scope;
        slice.scope_code = std::string(code);
        slice.year = year;
        out.push_back(std::move(slice));
    }
    return out;
}

std::vector<CityValue> Panel::slice_values(Scope scope, std::string_view scope_code, int year,
                                           ValueField field) const {
    std::vector<CityValue> out;
    for (const auto& r : year_records(year)) {
        if (scope_code_of(r, scope) != scope_code) continue;
        out.push_back({r.city_id, field == ValueField::ati ? r.ati.cents : r.population});
    }
    if (out.empty())
        throw DataError("slice_values: no cities for " + to_string(scope) + " '" +
                        std::string(scope_code) + "' in year " + std::to_string(year));
    return out;
}

std::vector<CityMean> Panel::year_average(Scope scope, std::string_view scope_code,
                                          ValueField field) const {
    std::map<std::string_view, std::pair<std::int64_t, int>> sums;  // id -> (raw sum, years)
    for (const auto& r : records_) {
        if (scope_code_of(r, scope) != scope_code) continue;
        auto& [sum, n] = sums[r.city_id];
        sum += field == ValueField::ati ? r.ati.cents : r.population;
        ++n;
    }
    if (sums.empty())
        throw DataError("year_average: no cities for " + to_string(scope) + " '" +
                        std::string(scope_code) + "'");

    std::vector<CityMean> out;
    out.reserve(sums.size());
    const double unit = field == ValueField::ati ? 100.0 : 1.0;
    for (const auto& [id, acc] : sums) {
        out.push_back({std::string(id),
                       static_cast<double>(acc.first) / (unit * acc.second),
                       acc.second});
    }
    return out;
}

}  // namespace ineq
