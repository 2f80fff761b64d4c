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

#include <charconv>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ineq/commands.hpp"
#include "ineq/error.hpp"

namespace {

using ineq::ConfigError;
using ineq::RunConfig;

int parse_int_or_throw(std::string_view text, std::string_view what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("cannot parse " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(sep, start);
        const auto part = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
        if (!part.empty()) parts.push_back(part);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// "2007,2009-2011" -> {2007, 2009, 2010, 2011}
std::vector<int> parse_year_list(std::string_view text) {
    std::vector<int> years;
    for (const auto token : split(text, ',')) {
        const std::size_t dash = token.find('-');
        if (dash == std::string_view::npos) {
            years.push_back(parse_int_or_throw(token, "year"));
            continue;
        }
        const int from = parse_int_or_throw(token.substr(0, dash), "year");
        const int to = parse_int_or_throw(token.substr(dash + 1), "year");
        if (to < from) throw ConfigError("year range out of order: '" + std::string(token) + "'");
        for (int y = from; y <= to; ++y) years.push_back(y);
    }
    return years;
}

/// "2007=8101,2008=8094" -> {2007: 8101, 2008: 8094}
std::map<int, std::int64_t> parse_expected_counts(std::string_view text) {
    std::map<int, std::int64_t> counts;
    for (const auto token : split(text, ',')) {
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected-counts entries look like YEAR=COUNT, got '" +
                              std::string(token) + "'");
        const int year = parse_int_or_throw(token.substr(0, eq), "year");
        counts[year] = parse_int_or_throw(token.substr(eq + 1), "count");
    }
    return counts;
}

/// Raw option values, converted into a RunConfig only when the chosen
/// subcommand runs, so conversion errors surface as exit-code-2 failures.
struct CliState {
    RunConfig config;
    std::vector<std::string> scopes{"region"};
    std::vector<std::string> models{"powerlaw", "lavalette2", "lavalette3"};
    std::string years_text;
    std::string field = "ati";
    std::string units = "city";
    std::string format = "both";
    std::string expected_counts_text;
    std::int64_t display_cap = 0;
    // synth
    std::string synth_mode = "ranklaw";
    std::string synth_model = "lavalette3";
    std::vector<double> synth_params;
    bool no_harmonize = false;

    void finalize(bool rank_field) {
        config.harmonize = !no_harmonize;
        config.scopes.clear();
        for (const auto& s : scopes) config.scopes.push_back(ineq::parse_scope(s));
        if (!years_text.empty()) config.years = parse_year_list(years_text);
        config.format = ineq::parse_output_format(format);
        if (rank_field) {
            config.rank_field = ineq::parse_rank_field(field);
        } else {
            config.field = ineq::parse_value_field(field);
        }
        config.units = ineq::parse_rank_units(units);
        config.models.clear();
        for (const auto& m : models) config.models.push_back(ineq::parse_rank_model(m));
        if (!expected_counts_text.empty())
            config.expected_counts = parse_expected_counts(expected_counts_text);
        if (display_cap > 0) config.display_cap = display_cap;
    }
};

void add_input_options(CLI::App& cmd, CliState& state) {
    cmd.add_option("--cities", state.config.cities_path, "City-year records CSV")->required();
    cmd.add_option("--events", state.config.events_path,
                   "Administrative-change events CSV (optional)");
    cmd.add_option("--out", state.config.out_dir, "Output directory (created if missing)");
}

void add_panel_options(CLI::App& cmd, CliState& state) {
    add_input_options(cmd, state);
    cmd.add_option("--ref-year", state.config.ref_year,
                   "Harmonization reference year (default: newest year)");
    cmd.add_flag("--no-harmonize", state.no_harmonize,
                 "Analyze raw yearly membership without mapping across events");
    cmd.add_option("--scope", state.scopes,
                   "Slice level(s): city, province, region, country")
        ->delimiter(',');
    cmd.add_option("--code", state.config.codes,
                   "Scope code filter (repeatable; default: all codes)")
        ->delimiter(',');
    cmd.add_option("--years", state.years_text, "Year list/ranges, e.g. 2007,2009-2011");
    cmd.add_option("--format", state.format, "Artifacts to write: json, csv, both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inequality indices, rank-size law fits and first-digit tests "
                 "over hierarchical city panel data"};
    app.require_subcommand(1);

    CliState state;
    std::function<int()> run;

    auto* validate = app.add_subcommand("validate", "Check the input files and report issues");
    add_input_options(*validate, state);
    validate->add_option("--expect-counts", state.expected_counts_text,
                         "Per-year city counts to assert, e.g. 2007=8101,2008=8094");
    validate->callback([&] {
        run = [&] {
            if (!state.expected_counts_text.empty())
                state.config.expected_counts =
                    parse_expected_counts(state.expected_counts_text);
            return ineq::cmd_validate(state.config, std::cerr);
        };
    });

    auto* indices = app.add_subcommand(
        "indices", "Entropy, Theil, concentration, Gini and peak-gap reports per slice");
    add_panel_options(*indices, state);
    indices->add_option("--field", state.field, "Value to analyze: ati or population");
    indices->add_option("--top-k", state.config.top_k,
                        "Largest-unit count entering the concentration index");
    indices->add_flag("--avg", state.config.include_average,
                      "Also report the multi-year average slice");
    indices->callback([&] {
        run = [&] {
            state.finalize(false);
            return ineq::cmd_indices(state.config, std::cerr);
        };
    });

    auto* ranksize =
        app.add_subcommand("ranksize", "Rank-size law fits with optional outlier exclusion");
    add_panel_options(*ranksize, state);
    ranksize->add_option("--field", state.field,
                         "Value to rank: ati, population, or cities (aggregate units only)");
    ranksize->add_option("--units", state.units,
                         "What gets ranked inside each slice: city, province, region");
    ranksize->add_option("--models", state.models,
                         "Models to fit: powerlaw, lavalette2, lavalette3")
        ->delimiter(',');
    ranksize->add_option("--exclude-top", state.config.exclude_top,
                         "Also fit with the k largest units excluded");
    ranksize->add_flag("--refine", state.config.refine,
                       "Add damped linear-space refinement of each fit");
    ranksize->add_flag("--avg", state.config.include_average,
                       "Also fit the multi-year average slice");
    ranksize->callback([&] {
        run = [&] {
            state.finalize(true);
            return ineq::cmd_ranksize(state.config, std::cerr);
        };
    });

    auto* lorenz = app.add_subcommand(
        "lorenz", "Cumulative-share curves and equality-gap extrema per slice");
    add_panel_options(*lorenz, state);
    lorenz->add_option("--field", state.field, "Value to analyze: ati or population");
    lorenz->add_flag("--avg", state.config.include_average,
                     "Also emit the multi-year average curve");
    lorenz->callback([&] {
        run = [&] {
            state.finalize(false);
            return ineq::cmd_lorenz(state.config, std::cerr);
        };
    });

    auto* benford =
        app.add_subcommand("benford", "First-significant-digit conformity tests per slice");
    add_panel_options(*benford, state);
    benford->add_option("--field", state.field, "Value to test: ati or population");
    benford->add_flag("--pooled", state.config.pooled,
                      "Also test all selected years pooled together");
    benford->callback([&] {
        run = [&] {
            state.finalize(false);
            return ineq::cmd_benford(state.config, std::cerr);
        };
    });

    auto* hist = app.add_subcommand("histogram", "Frequency-size histograms per slice");
    add_panel_options(*hist, state);
    hist->add_option("--field", state.field, "Value to bin: ati or population");
    hist->add_option("--bin-width", state.config.bin_width, "Bin width in value units")
        ->required();
    hist->add_option("--cap", state.display_cap,
                     "Display cap recorded next to raw counts");
    hist->callback([&] {
        run = [&] {
            state.finalize(false);
            return ineq::cmd_histogram(state.config, std::cerr);
        };
    });

    auto* synth = app.add_subcommand("synth", "Generate a synthetic city-year CSV");
    synth->add_option("--out", state.config.out_dir, "Output directory (created if missing)");
    synth->add_option("--seed", state.config.synth.seed, "Generator seed")->required();
    synth->add_option("--mode", state.synth_mode, "ranklaw or benford");
    synth->add_option("--model", state.synth_model,
                      "Rank law to sample: powerlaw, lavalette2, lavalette3");
    synth->add_option("--params", state.synth_params,
                      "Model parameters in declaration order, e.g. 47.090,0.809,0.361")
        ->delimiter(',');
    synth->add_option("--n", state.config.synth.n, "Number of cities");
    synth->add_option("--sigma", state.config.synth.sigma,
                      "Multiplicative lognormal noise level (0 = exact law)");
    synth->add_option("--scale", state.config.synth.scale, "Value scale in euros");
    synth->add_option("--year", state.config.synth.year, "Year stamped on the records");
    synth->callback([&] {
        run = [&] {
            state.config.synth.mode = ineq::parse_synth_mode(state.synth_mode);
            state.config.synth.model = ineq::parse_rank_model(state.synth_model);
            if (!state.synth_params.empty()) {
                state.config.synth.params = state.synth_params;
            } else if (state.config.synth.model == ineq::RankModel::powerlaw) {
                state.config.synth.params = {1000.0, 1.0};
            } else if (state.config.synth.model == ineq::RankModel::lavalette2) {
                state.config.synth.params = {6.443, 0.730};
            }
            return ineq::cmd_synth(state.config, std::cerr);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const ineq::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ineq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
