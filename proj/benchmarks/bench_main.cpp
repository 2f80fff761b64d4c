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

// Microbenchmarks for the computational hot paths: inequality indices on
// realistic slice sizes, rank-law fitting and refinement, first-digit
// testing, and panel harmonization.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ineq/benford.hpp"
#include "ineq/indices.hpp"
#include "ineq/panel.hpp"
#include "ineq/ranksize.hpp"
#include "ineq/synth.hpp"

namespace {

using namespace ineq;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> values(n);
    for (double& v : values) v = 1.0 + uniform01(rng) * 1e6;
    return values;
}

RankedSeries noisy_law_series(int n, std::uint64_t seed) {
    SynthConfig cfg;
    cfg.n = n;
    cfg.sigma = 0.05;
    cfg.scale = 1.0;
    cfg.seed = seed;
    const auto values = synth_values(cfg);
    std::vector<IdValue> items;
    items.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        items.push_back({"U" + std::to_string(i), values[i]});
    return rank(items);
}

/// Five-year panel with `n_cities` base cities of which the first
/// 2 * n_merges pairwise merge in 2009. Exercises the chain-following and
/// folding paths of harmonize.
Panel merge_heavy_panel(int n_cities, int n_merges) {
    std::mt19937_64 rng(7);
    auto city_id = [](int i) {
        char buffer[16];
        std::snprintf(buffer, sizeof buffer, "C%06d", i);
        return std::string(buffer);
    };

    std::vector<ChangeEvent> events;
    for (int m = 0; m < n_merges; ++m) {
        ChangeEvent event;
        event.kind = EventKind::merge;
        event.year_effective = 2009;
        event.sources = {city_id(2 * m), city_id(2 * m + 1)};
        event.target = "M" + std::to_string(m);
        events.push_back(std::move(event));
    }

    std::vector<CityYearRecord> records;
    for (int year = 2007; year <= 2011; ++year) {
        for (int i = 0; i < n_cities; ++i) {
            if (year >= 2009 && i < 2 * n_merges) continue;  // merged away
            CityYearRecord r;
            r.year = year;
            r.city_id = city_id(i);
            r.city_name = "Town";
            r.province = "PR";
            r.region = "RG";
            r.population = uniform_int(rng, 100, 100000);
            r.ati = Money::from_cents(uniform_int(rng, 1000, 1000000000));
            records.push_back(std::move(r));
        }
        if (year >= 2009) {
            for (int m = 0; m < n_merges; ++m) {
                CityYearRecord r;
                r.year = year;
                r.city_id = "M" + std::to_string(m);
                r.city_name = "Merged";
                r.province = "PR";
                r.region = "RG";
                r.population = uniform_int(rng, 100, 100000);
                r.ati = Money::from_cents(uniform_int(rng, 1000, 1000000000));
                records.push_back(std::move(r));
            }
        }
    }
    return Panel::build(std::move(records), std::move(events));
}

void BM_Gini(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(gini(values));
}
BENCHMARK(BM_Gini)->Arg(136)->Arg(8092);

void BM_IndexReport(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)), 12);
    for (auto _ : state) benchmark::DoNotOptimize(index_report(values));
}
BENCHMARK(BM_IndexReport)->Arg(136)->Arg(8092);

void BM_FitLavalette3(benchmark::State& state) {
    const RankedSeries series =
        noisy_law_series(static_cast<int>(state.range(0)), 21);
    for (auto _ : state) benchmark::DoNotOptimize(fit_lavalette3(series));
}
BENCHMARK(BM_FitLavalette3)->Arg(132)->Arg(2000);

void BM_RefineLavalette3(benchmark::State& state) {
    const RankedSeries series =
        noisy_law_series(static_cast<int>(state.range(0)), 22);
    const FitResult base = fit_lavalette3(series);
    for (auto _ : state) benchmark::DoNotOptimize(refine_nonlinear(series, base));
}
BENCHMARK(BM_RefineLavalette3)->Arg(132)->Arg(2000);

void BM_BenfordReport(benchmark::State& state) {
    SynthConfig cfg;
    cfg.mode = SynthMode::benford;
    cfg.n = static_cast<int>(state.range(0));
    cfg.seed = 31;
    const auto values = synth_values(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(benford_report(values));
}
BENCHMARK(BM_BenfordReport)->Arg(10000);

void BM_Harmonize(benchmark::State& state) {
    const int n_cities = static_cast<int>(state.range(0));
    const Panel panel = merge_heavy_panel(n_cities, n_cities / 10);
    for (auto _ : state) benchmark::DoNotOptimize(panel.harmonize(2011));
}
BENCHMARK(BM_Harmonize)->Arg(1000)->Arg(8000);

}  // namespace

BENCHMARK_MAIN();
