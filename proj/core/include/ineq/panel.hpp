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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ineq/money.hpp"

namespace ineq {

/// One city observed in one year. Identity is the opaque city_id; province
/// and region codes describe where the city sat in that year.
struct CityYearRecord {
    int year = 0;
    std::string city_id;
    std::string city_name;
    std::string province;
    std::string region;
    std::int64_t population = 0;
    Money ati;
};

enum class EventKind { merge, move };

std::string to_string(EventKind kind);
EventKind parse_event_kind(std::string_view name);

/// An administrative change. A merge folds several source cities into one
/// target identity from year_effective on; a move keeps the identity but
/// reassigns its province/region codes.
struct ChangeEvent {
    EventKind kind = EventKind::merge;
    int year_effective = 0;
    std::vector<std::string> sources;
    std::string target;
    std::string new_province;  // move only
    std::string new_region;    // move only
};

enum class Scope { city, province, region, country };

std::string to_string(Scope scope);
Scope parse_scope(std::string_view name);

/// Code used for the single country-level slice.
inline constexpr std::string_view kCountryCode = "ALL";

/// The record's code at the given scope (its own id at city scope, the
/// country constant at country scope).
std::string_view scope_code_of(const CityYearRecord& record, Scope scope);

struct AggregateSlice {
    Scope scope = Scope::country;
    std::string scope_code;
    int year = 0;
    std::int64_t n_cities = 0;
    std::int64_t population = 0;
    Money ati_total;
};

enum class ValueField { ati, population };

std::string to_string(ValueField field);
ValueField parse_value_field(std::string_view name);

/// A city's value in exact raw units: euro cents for ati, persons for
/// population. Conversion to double happens at the analysis boundary.
struct CityValue {
    std::string city_id;
    std::int64_t raw = 0;
};

/// Euros for ati, persons for population.
double value_as_double(const CityValue& value, ValueField field);
std::vector<double> values_as_doubles(std::span<const CityValue> values, ValueField field);

struct CityMean {
    std::string city_id;
    double mean = 0.0;  // euros for ati, persons for population
    int years_present = 0;
};

/// Immutable panel of city-year records plus the administrative-change
/// events that explain membership differences between years. All accessors
/// are read-only and safe to call concurrently.
class Panel {
public:
    /// Validates keys and event references. Throws DataError on duplicate
    /// (year, city) keys, events whose cities never appear in the records,
    /// events outside the panel's year range, or structurally invalid events.
    static Panel build(std::vector<CityYearRecord> records, std::vector<ChangeEvent> events);

    const std::vector<CityYearRecord>& records() const { return records_; }
    const std::vector<ChangeEvent>& events() const { return events_; }
    const std::vector<int>& years() const { return years_; }
    std::optional<int> reference_year() const { return reference_year_; }

    std::int64_t city_count(int year) const;
    std::span<const CityYearRecord> year_records(int year) const;
    const CityYearRecord* find(int year, std::string_view city_id) const;

    /// Maps every year onto the entity set of reference_year: cities that
    /// merged into a reference-year identity (following chains of events
    /// effective by then) have population and ati summed under it, and moved
    /// cities carry reference-year codes. Per-year country totals are
    /// preserved exactly. Idempotent. Throws DataError on an unknown
    /// reference year or a cyclic merge chain.
    Panel harmonize(int reference_year) const;

    /// One slice per scope code present in the year, sorted by code.
    std::vector<AggregateSlice> aggregate(Scope scope, int year) const;

    /// Member-city values for one slice, ordered by city id. Throws
    /// DataError when the code has no members in that year.
    std::vector<CityValue> slice_values(Scope scope, std::string_view scope_code, int year,
                                        ValueField field) const;

    /// Per-city arithmetic mean over the years the city matches the slice.
    /// After harmonization every entity exists in every year, so this is the
    /// plain multi-year average.
    std::vector<CityMean> year_average(Scope scope, std::string_view scope_code,
                                       ValueField field) const;

private:
    Panel() = default;

    std::vector<CityYearRecord> records_;  // sorted by (year, city_id)
    std::vector<ChangeEvent> events_;
    std::vector<int> years_;
    std::optional<int> reference_year_;
};

}  // namespace ineq
