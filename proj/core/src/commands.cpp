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

#include "ineq/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ineq/benford.hpp"
#include "ineq/error.hpp"
#include "ineq/exports.hpp"
#include "ineq/indices.hpp"
#include "ineq/ingest.hpp"
#include "ineq/parallel.hpp"

namespace ineq {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    return in;
}

fs::path prepare_out_dir(const RunConfig& config) {
    const fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());
    return dir;
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

std::string file_name(std::string_view command, std::string_view code,
                      std::string_view year_label, std::string_view ext) {
    std::string name(command);
    name += '_';
    name += code;
    name += '_';
    name += year_label;
    name += '.';
    name += ext;
    return name;
}

bool want_json(const RunConfig& c) { return c.format != OutputFormat::csv; }
bool want_csv(const RunConfig& c) { return c.format != OutputFormat::json; }

struct ResolvedSlice {
    Scope scope = Scope::region;
    std::string code;
};

std::vector<int> select_years(const Panel& panel, const RunConfig& config) {
    if (config.years.empty()) return panel.years();
    std::vector<int> years = config.years;
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    for (int y : years) {
        if (std::find(panel.years().begin(), panel.years().end(), y) == panel.years().end())
            throw ConfigError("requested year " + std::to_string(y) + " is not in the panel");
    }
    return years;
}

std::vector<ResolvedSlice> resolve_slices(const Panel& panel, const RunConfig& config,
                                          const std::vector<int>& years) {
    if (config.scopes.empty()) throw ConfigError("no scope selected");

    std::vector<ResolvedSlice> slices;
    std::set<std::pair<int, std::string>> seen;
    std::set<std::string> matched;
    auto push = [&](Scope scope, const std::string& code) {
        if (seen.emplace(static_cast<int>(scope), code).second)
            slices.push_back({scope, code});
    };

    for (Scope scope : config.scopes) {
        std::set<std::string> present;
        for (int y : years) {
            for (const auto& r : panel.year_records(y))
                present.insert(std::string(scope_code_of(r, scope)));
        }
        if (config.codes.empty()) {
            for (const auto& code : present) push(scope, code);
        } else {
            for (const auto& code : config.codes) {
                if (present.count(code)) {
                    push(scope, code);
                    matched.insert(code);
                }
            }
        }
    }
    if (!config.codes.empty()) {
        for (const auto& code : config.codes) {
            if (!matched.count(code))
                throw DataError("code '" + code + "' matches no selected scope in the panel");
        }
    }
    return slices;
}

/// Euros (or persons) for the slice's member cities in one year.
std::vector<double> slice_doubles(const Panel& panel, const ResolvedSlice& slice, int year,
                                  ValueField field) {
    const auto values = panel.slice_values(slice.scope, slice.code, year, field);
    return values_as_doubles(values, field);
}

/// Per-city mean over the years the city has data, id-sorted.
std::vector<double> average_city_values(const Panel& panel, const ResolvedSlice& slice,
                                        const std::vector<int>& years, ValueField field) {
    std::map<std::string, std::pair<std::int64_t, int>> acc;
    for (int y : years) {
        std::vector<CityValue> values;
        try {
            values = panel.slice_values(slice.scope, slice.code, y, field);
        } catch (const DataError&) {
            continue;  // slice empty that year
        }
        for (const auto& v : values) {
            auto& a = acc[v.city_id];
            a.first += v.raw;
            a.second += 1;
        }
    }
    if (acc.empty())
        throw DataError("no data to average for '" + slice.code + "'");
    const double unit = field == ValueField::ati ? 100.0 : 1.0;
    std::vector<double> out;
    out.reserve(acc.size());
    for (const auto& [id, a] : acc)
        out.push_back(static_cast<double>(a.first) / (unit * a.second));
    return out;
}

/// Runs `body` once per slice, collecting its log lines; lines are flushed
/// to `log` in slice order so runs are reproducible.
void for_each_slice(const std::vector<ResolvedSlice>& slices, std::ostream& log,
                    const std::function<void(const ResolvedSlice&, std::ostream&)>& body) {
    std::vector<std::string> notes(slices.size());
    parallel_for(slices.size(), [&](std::size_t i) {
        std::ostringstream buffer;
        body(slices[i], buffer);
        notes[i] = buffer.str();
    });
    for (const auto& n : notes) log << n;
}

std::string meta_scope(const ResolvedSlice& slice) { return to_string(slice.scope); }

// ---------------------------------------------------------------------------
// rank-size helpers

int scope_granularity(Scope scope) {
    switch (scope) {
        case Scope::city: return 0;
        case Scope::province: return 1;
        case Scope::region: return 2;
        case Scope::country: return 3;
    }
    return -1;
}

/// The unit/value pairs a rank-size run fits, for one year of one slice.
std::vector<IdValue> ranked_input(const Panel& panel, const ResolvedSlice& slice, int year,
                                  RankUnits units, RankField field) {
    if (units == RankUnits::city) {
        if (field == RankField::cities)
            throw ConfigError("field 'cities' requires province or region units");
        const ValueField vf =
            field == RankField::ati ? ValueField::ati : ValueField::population;
        const auto values = panel.slice_values(slice.scope, slice.code, year, vf);
        std::vector<IdValue> out;
        out.reserve(values.size());
        for (const auto& v : values) out.push_back({v.city_id, value_as_double(v, vf)});
        return out;
    }

    const Scope unit_scope = units == RankUnits::province ? Scope::province : Scope::region;
    if (scope_granularity(unit_scope) >= scope_granularity(slice.scope))
        throw ConfigError("rank units must be finer than the selected scope");

    struct Acc {
        std::int64_t cents = 0;
        std::int64_t population = 0;
        std::int64_t cities = 0;
    };
    std::map<std::string, Acc> groups;
    bool any = false;
    for (const auto& r : panel.year_records(year)) {
        if (scope_code_of(r, slice.scope) != slice.code) continue;
        any = true;
        auto& a = groups[std::string(scope_code_of(r, unit_scope))];
        a.cents += r.ati.cents;
        a.population += r.population;
        ++a.cities;
    }
    if (!any)
        throw DataError("no cities for " + to_string(slice.scope) + " '" + slice.code +
                        "' in year " + std::to_string(year));

    std::vector<IdValue> out;
    out.reserve(groups.size());
    for (const auto& [code, a] : groups) {
        double value = 0.0;
        switch (field) {
            case RankField::ati: value = static_cast<double>(a.cents) / 100.0; break;
            case RankField::population: value = static_cast<double>(a.population); break;
            case RankField::cities: value = static_cast<double>(a.cities); break;
        }
        out.push_back({code, value});
    }
    return out;
}

std::vector<IdValue> ranked_input_avg(const Panel& panel, const ResolvedSlice& slice,
                                      const std::vector<int>& years, RankUnits units,
                                      RankField field) {
    std::map<std::string, std::pair<double, int>> acc;
    for (int y : years) {
        std::vector<IdValue> one;
        try {
            one = ranked_input(panel, slice, y, units, field);
        } catch (const DataError&) {
            continue;
        }
        for (const auto& iv : one) {
            auto& a = acc[iv.id];
            a.first += iv.value;
            a.second += 1;
        }
    }
    if (acc.empty())
        throw DataError("no data to average for '" + slice.code + "'");
    std::vector<IdValue> out;
    out.reserve(acc.size());
    for (const auto& [id, a] : acc) out.push_back({id, a.first / a.second});
    return out;
}

FitResult fit_model(RankModel model, const RankedSeries& series) {
    switch (model) {
        case RankModel::powerlaw: return fit_powerlaw(series);
        case RankModel::lavalette2: return fit_lavalette2(series);
        case RankModel::lavalette3: return fit_lavalette3(series);
    }
    throw ConfigError("unknown model");
}

int min_points(RankModel model) { return model == RankModel::lavalette3 ? 4 : 3; }

std::string rank_field_label(const RunConfig& config) {
    std::string label;
    switch (config.rank_field) {
        case RankField::ati: label = "ati"; break;
        case RankField::population: label = "population"; break;
        case RankField::cities: label = "cities"; break;
    }
    if (config.units == RankUnits::province) label += " per province";
    if (config.units == RankUnits::region) label += " per region";
    return label;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "both") return OutputFormat::both;
    throw ConfigError("unknown output format: '" + std::string(name) + "'");
}

RankUnits parse_rank_units(std::string_view name) {
    if (name == "city" || name == "cities") return RankUnits::city;
    if (name == "province" || name == "provinces") return RankUnits::province;
    if (name == "region" || name == "regions") return RankUnits::region;
    throw ConfigError("unknown rank units: '" + std::string(name) + "'");
}

RankField parse_rank_field(std::string_view name) {
    if (name == "ati") return RankField::ati;
    if (name == "population") return RankField::population;
    if (name == "cities") return RankField::cities;
    throw ConfigError("unknown rank field: '" + std::string(name) + "'");
}

Panel load_panel(const RunConfig& config) {
    auto cities_in = open_input(config.cities_path);
    ParsedCities cities = parse_city_csv(cities_in);
    require_clean(cities.issues);

    ParsedEvents events;
    if (!config.events_path.empty()) {
        auto events_in = open_input(config.events_path);
        events = parse_events_csv(events_in);
        require_clean(events.issues);
    }

    Panel panel = Panel::build(std::move(cities.records), std::move(events.events));
    if (!config.harmonize) return panel;
    const int ref = config.ref_year.value_or(panel.years().back());
    return panel.harmonize(ref);
}

int cmd_validate(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);

    auto cities_in = open_input(config.cities_path);
    const ParsedCities cities = parse_city_csv(cities_in);

    ParsedEvents events;
    if (!config.events_path.empty()) {
        auto events_in = open_input(config.events_path);
        events = parse_events_csv(events_in);
    }

    std::vector<Issue> parse_issues = cities.issues;
    parse_issues.insert(parse_issues.end(), events.issues.begin(), events.issues.end());

    const ValidationReport report =
        validate(cities.records, events.events, parse_issues,
                 config.expected_counts.empty() ? nullptr : &config.expected_counts);

    for (const auto& issue : report.errors)
        log << "error [" << issue.code << "] row " << issue.row << ": " << issue.message << "\n";
    for (const auto& issue : report.warnings)
        log << "warning [" << issue.code << "]: " << issue.message << "\n";

    write_file(out / "validate.json", validation_json(report));
    return report.ok() ? 0 : 1;
}

int cmd_indices(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);
    const Panel panel = load_panel(config);
    const std::vector<int> years = select_years(panel, config);
    const auto slices = resolve_slices(panel, config, years);

    for_each_slice(slices, log, [&](const ResolvedSlice& slice, std::ostream& note) {
        std::vector<std::string> labels;
        std::vector<IndexReport> reports;

        auto add = [&](const std::string& label, const std::vector<double>& values) {
            IndexReport report = index_report(values, config.top_k);
            if (want_json(config)) {
                const SliceMeta meta{meta_scope(slice), slice.code, label,
                                     to_string(config.field)};
                write_file(out / file_name("indices", slice.code, label, "json"),
                           index_report_json(meta, report));
            }
            labels.push_back(label);
            reports.push_back(std::move(report));
        };

        for (int y : years) {
            try {
                add(std::to_string(y), slice_doubles(panel, slice, y, config.field));
            } catch (const DataError& e) {
                note << "note: skipping indices for " << slice.code << " " << y << ": "
                     << e.what() << "\n";
            }
        }
        if (config.include_average) {
            try {
                add("avg", average_city_values(panel, slice, years, config.field));
            } catch (const DataError& e) {
                note << "note: skipping indices average for " << slice.code << ": " << e.what()
                     << "\n";
            }
        }
        if (!reports.empty() && want_csv(config)) {
            std::ostringstream table;
            write_index_table_csv(table, labels, reports);
            write_file(out / file_name("indices", slice.code, "table", "csv"), table.str());
        }
    });
    return 0;
}

int cmd_ranksize(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);
    const Panel panel = load_panel(config);
    const std::vector<int> years = select_years(panel, config);
    const auto slices = resolve_slices(panel, config, years);
    if (config.models.empty()) throw ConfigError("no models requested");

    for_each_slice(slices, log, [&](const ResolvedSlice& slice, std::ostream& note) {
        struct Task {
            std::string label;
            std::vector<IdValue> input;
        };
        std::vector<Task> tasks;
        for (int y : years) {
            try {
                tasks.push_back({std::to_string(y),
                                 ranked_input(panel, slice, y, config.units, config.rank_field)});
            } catch (const DataError& e) {
                note << "note: skipping ranksize for " << slice.code << " " << y << ": "
                     << e.what() << "\n";
            }
        }
        if (config.include_average) {
            try {
                tasks.push_back({"avg", ranked_input_avg(panel, slice, years, config.units,
                                                         config.rank_field)});
            } catch (const DataError& e) {
                note << "note: skipping ranksize average for " << slice.code << ": " << e.what()
                     << "\n";
            }
        }

        for (const auto& task : tasks) {
            RankedSeries full;
            try {
                full = rank(task.input);
            } catch (const DataError& e) {
                note << "note: skipping ranksize for " << slice.code << " " << task.label << ": "
                     << e.what() << "\n";
                continue;
            }

            std::vector<std::pair<std::string, RankedSeries>> variants;
            variants.emplace_back("all", full);
            if (config.exclude_top > 0) {
                if (config.exclude_top < full.n()) {
                    variants.emplace_back("ex" + std::to_string(config.exclude_top),
                                          exclude_top(full, config.exclude_top));
                } else {
                    note << "note: cannot exclude top " << config.exclude_top << " of "
                         << full.n() << " for " << slice.code << " " << task.label << "\n";
                }
            }

            std::vector<FitVariant> fits;
            // curve files carry the variant's own observed series
            std::vector<const RankedSeries*> fit_series;
            for (const auto& [vname, series] : variants) {
                for (RankModel model : config.models) {
                    if (series.n() < min_points(model)) {
                        note << "note: " << to_string(model) << " needs at least "
                             << min_points(model) << " points, " << slice.code << " "
                             << task.label << " (" << vname << ") has " << series.n() << "\n";
                        continue;
                    }
                    FitResult base = fit_model(model, series);
                    fits.push_back({vname, base});
                    fit_series.push_back(&series);
                    if (config.refine) {
                        fits.push_back({vname, refine_nonlinear(series, base)});
                        fit_series.push_back(&series);
                    }
                }
            }
            if (fits.empty()) continue;

            if (want_json(config)) {
                const SliceMeta meta{meta_scope(slice), slice.code, task.label,
                                     rank_field_label(config)};
                write_file(out / file_name("ranksize", slice.code, task.label, "json"),
                           fits_json(meta, fits));
            }
            if (want_csv(config)) {
                for (std::size_t i = 0; i < fits.size(); ++i) {
                    const FitResult& fit = fits[i].fit;
                    std::string name = "ranksize_" + slice.code + "_" + task.label + "." +
                                       to_string(fit.model) + "." + fits[i].variant;
                    if (fit.fit_space == FitSpace::linear_space) name += ".refined";
                    name += ".csv";
                    std::ostringstream curve;
                    write_model_curve_csv(curve, *fit_series[i], fit);
                    write_file(out / name, curve.str());
                }
            }
        }
    });
    return 0;
}

int cmd_lorenz(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);
    const Panel panel = load_panel(config);
    const std::vector<int> years = select_years(panel, config);
    const auto slices = resolve_slices(panel, config, years);

    for_each_slice(slices, log, [&](const ResolvedSlice& slice, std::ostream& note) {
        auto emit = [&](const std::string& label, const std::vector<double>& values) {
            const LorenzCurve curve = lorenz(values);
            const DeltaLorenzPeak peak = delta_lorenz_peak(curve);
            std::ostringstream body;
            write_lorenz_csv(body, curve, peak);
            write_file(out / file_name("lorenz", slice.code, label, "csv"), body.str());
        };
        for (int y : years) {
            try {
                emit(std::to_string(y), slice_doubles(panel, slice, y, config.field));
            } catch (const DataError& e) {
                note << "note: skipping lorenz for " << slice.code << " " << y << ": "
                     << e.what() << "\n";
            }
        }
        if (config.include_average) {
            try {
                emit("avg", average_city_values(panel, slice, years, config.field));
            } catch (const DataError& e) {
                note << "note: skipping lorenz average for " << slice.code << ": " << e.what()
                     << "\n";
            }
        }
    });
    return 0;
}

int cmd_benford(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);
    const Panel panel = load_panel(config);
    const std::vector<int> years = select_years(panel, config);
    const auto slices = resolve_slices(panel, config, years);

    for_each_slice(slices, log, [&](const ResolvedSlice& slice, std::ostream& note) {
        auto emit = [&](const std::string& label, const BenfordReport& report) {
            const SliceMeta meta{meta_scope(slice), slice.code, label, to_string(config.field)};
            if (want_json(config)) {
                write_file(out / file_name("benford", slice.code, label, "json"),
                           benford_json(meta, report));
            }
            if (want_csv(config)) {
                std::ostringstream body;
                write_digit_frequency_csv(body, report);
                write_file(out / file_name("benford", slice.code, label, "csv"), body.str());
            }
        };

        std::vector<Money> pooled_cents;
        std::vector<double> pooled_doubles;
        for (int y : years) {
            try {
                const auto values =
                    panel.slice_values(slice.scope, slice.code, y, config.field);
                if (config.field == ValueField::ati) {
                    std::vector<Money> cents;
                    cents.reserve(values.size());
                    for (const auto& v : values) cents.push_back(Money::from_cents(v.raw));
                    emit(std::to_string(y), benford_report(cents));
                    if (config.pooled)
                        pooled_cents.insert(pooled_cents.end(), cents.begin(), cents.end());
                } else {
                    const auto doubles = values_as_doubles(values, config.field);
                    emit(std::to_string(y), benford_report(doubles));
                    if (config.pooled)
                        pooled_doubles.insert(pooled_doubles.end(), doubles.begin(),
                                              doubles.end());
                }
            } catch (const DataError& e) {
                note << "note: skipping benford for " << slice.code << " " << y << ": "
                     << e.what() << "\n";
            }
        }
        if (config.pooled) {
            try {
                if (config.field == ValueField::ati) {
                    emit("pooled", benford_report(pooled_cents));
                } else {
                    emit("pooled", benford_report(pooled_doubles));
                }
            } catch (const DataError& e) {
                note << "note: skipping pooled benford for " << slice.code << ": " << e.what()
                     << "\n";
            }
        }
    });
    return 0;
}

int cmd_histogram(const RunConfig& config, std::ostream& log) {
    if (!(config.bin_width > 0.0))
        throw ConfigError("histogram requires a positive --bin-width");
    const fs::path out = prepare_out_dir(config);
    const Panel panel = load_panel(config);
    const std::vector<int> years = select_years(panel, config);
    const auto slices = resolve_slices(panel, config, years);

    for_each_slice(slices, log, [&](const ResolvedSlice& slice, std::ostream& note) {
        for (int y : years) {
            try {
                const auto values = slice_doubles(panel, slice, y, config.field);
                const Histogram h = histogram(values, config.bin_width, 0.0, config.display_cap);
                std::ostringstream body;
                write_histogram_csv(body, h);
                write_file(out / file_name("histogram", slice.code, std::to_string(y), "csv"),
                           body.str());
            } catch (const DataError& e) {
                note << "note: skipping histogram for " << slice.code << " " << y << ": "
                     << e.what() << "\n";
            }
        }
    });
    return 0;
}

int cmd_synth(const RunConfig& config, std::ostream& log) {
    const fs::path out = prepare_out_dir(config);
    const std::vector<CityYearRecord> records = synth_records(config.synth);
    std::ostringstream body;
    write_city_csv(body, records);
    write_file(out / "synth_cities.csv", body.str());
    log << "wrote " << records.size() << " synthetic records\n";
    return 0;
}

}  // namespace ineq
