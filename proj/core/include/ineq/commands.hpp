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
#include <optional>
#include <string>
#include <vector>

#include "ineq/panel.hpp"
#include "ineq/ranksize.hpp"
#include "ineq/synth.hpp"

namespace ineq {

enum class OutputFormat { json, csv, both };

OutputFormat parse_output_format(std::string_view name);

/// What a rank-size run ranks: individual cities inside each slice, or
/// province/region aggregates inside it.
enum class RankUnits { city, province, region };

RankUnits parse_rank_units(std::string_view name);

/// Quantity attached to a ranked unit. `cities` (number of member cities)
/// only makes sense for aggregate units.
enum class RankField { ati, population, cities };

RankField parse_rank_field(std::string_view name);

/// Everything a batch run needs. Field comments note which subcommands use
/// them; unrelated fields are ignored.
struct RunConfig {
    std::string cities_path;
    std::string events_path;  ///< optional; empty = no events file

    /// Harmonization target; default = newest panel year.
    std::optional<int> ref_year;
    bool harmonize = true;

    /// Slice selection. Scopes are tried in order; codes match whichever
    /// scope they exist at. Empty codes = every code of every scope listed.
    std::vector<Scope> scopes = {Scope::region};
    std::vector<std::string> codes;
    std::vector<int> years;  ///< empty = all panel years

    std::string out_dir = ".";
    OutputFormat format = OutputFormat::both;

    ValueField field = ValueField::ati;
    int top_k = 50;        ///< concentration-index truncation
    int exclude_top = 0;   ///< outliers dropped for the "ex<k>" fit variant
    std::vector<RankModel> models = {RankModel::powerlaw, RankModel::lavalette2,
                                     RankModel::lavalette3};
    bool refine = false;   ///< add linear-space refinement of each fit
    RankUnits units = RankUnits::city;
    RankField rank_field = RankField::ati;

    bool include_average = false;  ///< add the multi-year-average slice
    bool pooled = false;           ///< add the pooled-years digit report

    double bin_width = 0.0;
    std::optional<std::int64_t> display_cap;

    /// Expected per-year city counts for validation (COUNT_MISMATCH check).
    std::map<int, std::int64_t> expected_counts;

    SynthConfig synth;
};

/// Subcommands. Each returns a process exit code (0 success, 1 data or
/// validation failure) and throws ConfigError / IoError for exit-code-2
/// conditions. `log` receives one line per warning or skipped slice.
int cmd_validate(const RunConfig& config, std::ostream& log);
int cmd_indices(const RunConfig& config, std::ostream& log);
int cmd_ranksize(const RunConfig& config, std::ostream& log);
int cmd_lorenz(const RunConfig& config, std::ostream& log);
int cmd_benford(const RunConfig& config, std::ostream& log);
int cmd_histogram(const RunConfig& config, std::ostream& log);
int cmd_synth(const RunConfig& config, std::ostream& log);

/// Loads, checks and (by default) harmonizes the panel named by config.
/// Shared by every analysis subcommand; exposed for tests.
Panel load_panel(const RunConfig& config);

}  // namespace ineq
