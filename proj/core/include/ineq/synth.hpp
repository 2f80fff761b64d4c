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
#include <random>
#include <string>
#include <vector>

#include "ineq/panel.hpp"
#include "ineq/ranksize.hpp"

namespace ineq {

enum class SynthMode { ranklaw, benford };

std::string to_string(SynthMode mode);
SynthMode parse_synth_mode(std::string_view name);

/// Generator settings. All draws run through pinned-arithmetic helpers on
/// top of mt19937_64, so a fixed seed gives byte-identical output on every
/// platform (the distribution adaptors in <random> do not promise that).
struct SynthConfig {
    SynthMode mode = SynthMode::ranklaw;
    RankModel model = RankModel::lavalette3;
    /// Parameter values in the model's declaration order, e.g.
    /// {A, gamma, beta} for lavalette3.
    std::vector<double> params = {47.090, 0.809, 0.361};
    int n = 132;
    /// Standard deviation of multiplicative lognormal noise; 0 = exact law.
    double sigma = 0.0;
    /// Multiplies law values before rounding to cents, keeping the rounding
    /// error far below fitting tolerances.
    double scale = 1e6;
    std::uint64_t seed = 1;
    int year = 2007;
    std::string region = "SYN";
    std::string province = "SY";
};

/// Law values (euros, unrounded) for ranks 1..n, with noise when sigma > 0.
/// For benford mode: n amounts whose first digits follow the first-digit law
/// exactly in distribution.
std::vector<double> synth_values(const SynthConfig& config);

/// The same values rounded to exact cents and wrapped in city-year records
/// (ids S0001... in rank order), ready for write_city_csv.
std::vector<CityYearRecord> synth_records(const SynthConfig& config);

/// Portable uniform draw on [0, 1) using the top 53 bits of the generator.
double uniform01(std::mt19937_64& rng);

/// Portable uniform integer on [lo, hi] (modulo method; bias is far below
/// any tolerance used here and determinism matters more).
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// Portable standard normal via Box-Muller.
double standard_normal(std::mt19937_64& rng);

/// One first digit 1..9 drawn from the Benford distribution by inverse CDF.
int benford_digit(std::mt19937_64& rng);

}  // namespace ineq
