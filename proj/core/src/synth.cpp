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

#include "ineq/synth.hpp"

#include <cmath>
#include <cstdio>

#include "ineq/benford.hpp"
#include "ineq/error.hpp"

namespace ineq {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ConfigError("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

double standard_normal(std::mt19937_64& rng) {
    // (0,1] for the log argument, [0,1) for the angle
    const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

int benford_digit(std::mt19937_64& rng) {
    static const std::array<double, 9> expected = benford_expected();
    const double u = uniform01(rng);
    double cum = 0.0;
    for (int d = 1; d <= 8; ++d) {
        cum += expected[d - 1];
        if (u < cum) return d;
    }
    return 9;
}

std::string to_string(SynthMode mode) {
    return mode == SynthMode::ranklaw ? "ranklaw" : "benford";
}

SynthMode parse_synth_mode(std::string_view name) {
    if (name == "ranklaw") return SynthMode::ranklaw;
    if (name == "benford") return SynthMode::benford;
    throw ConfigError("unknown synth mode: '" + std::string(name) + "'");
}

std::vector<double> synth_values(const SynthConfig& config) {
    if (config.n < 1) throw ConfigError("synth: n must be >= 1");
    if (config.sigma < 0.0) throw ConfigError("synth: sigma must be >= 0");
    if (!(config.scale > 0.0)) throw ConfigError("synth: scale must be positive");

    std::mt19937_64 rng(config.seed);
    std::vector<double> values;
    values.reserve(config.n);

    if (config.mode == SynthMode::benford) {
        // draw the digit, then a uniform cent count inside that digit's
        // decade, so the first digit is exact by construction
        for (int i = 0; i < config.n; ++i) {
            const std::int64_t d = benford_digit(rng);
            const std::int64_t cents = uniform_int(rng, d * 1'000'000, (d + 1) * 1'000'000 - 1);
            values.push_back(static_cast<double>(cents) / 100.0);
        }
        return values;
    }

    const double n = static_cast<double>(config.n);
    for (int r = 1; r <= config.n; ++r) {
        double v = config.scale *
                   rank_law_value(config.model, config.params, static_cast<double>(r), n);
        if (config.sigma > 0.0) v *= std::exp(config.sigma * standard_normal(rng));
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("synth: parameters produce a nonpositive value at rank " +
                              std::to_string(r));
        values.push_back(v);
    }
    return values;
}

std::vector<CityYearRecord> synth_records(const SynthConfig& config) {
    const std::vector<double> values = synth_values(config);

    std::vector<CityYearRecord> records;
    records.reserve(values.size());
    char id[16];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(id, sizeof id, "S%05zu", i + 1);
        CityYearRecord rec;
        rec.year = config.year;
        rec.city_id = id;
        rec.city_name = "Synth " + std::to_string(i + 1);
        rec.province = config.province;
        rec.region = config.region;
        rec.ati = Money::from_cents(std::llround(values[i] * 100.0));
        // population only needs to be a plausible deterministic companion
        rec.population = std::max<std::int64_t>(1, rec.ati.cents / 100'000);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace ineq
