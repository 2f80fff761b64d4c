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

// Acceptance gate: nine numbered end-to-end checks covering the published
// arithmetic identities, the statistical calibration of the estimators and
// the CLI contract. Prints one [PASS]/[FAIL] line per check and exits 0
// only when every selected check passes. Check numbers may be passed as
// arguments to run a subset. Check 9 spawns the installed CLI binary; it
// needs INEQKIT_BIN and INEQKIT_FIXTURES in the environment.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ineq/benford.hpp"
#include "ineq/indices.hpp"
#include "ineq/ingest.hpp"
#include "ineq/money.hpp"
#include "ineq/panel.hpp"
#include "ineq/ranksize.hpp"
#include "ineq/special.hpp"
#include "ineq/synth.hpp"
#include "panel_gen.hpp"

namespace {

using namespace ineq;
namespace fs = std::filesystem;

/// Collects failure descriptions for one check; empty list = pass.
struct Check {
    std::vector<std::string> problems;

    void expect(bool ok, std::string what) {
        if (!ok) problems.push_back(std::move(what));
    }
};

std::string dstr(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.10g", v);
    return buffer;
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

/// A pre-ranked series in generation order. Used when the generator itself
/// defines the ranks, so that noise does not reshuffle them.
RankedSeries series_from(const std::vector<double>& values) {
    RankedSeries series;
    series.pairs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        series.pairs.push_back(
            {static_cast<int>(i) + 1, "U" + std::to_string(i + 1), values[i]});
    }
    return series;
}

// ---------------------------------------------------------------------------
// 1. Theil identity against the published entropy table

void check_theil_identity(Check& c) {
    const double t136 = max_entropy(136) - 3.6245;
    const double t8092 = max_entropy(8092) - 7.2603;
    c.expect(near(t136, 1.2882, 5e-4), "Theil(136) = " + dstr(t136) + ", want 1.2882");
    c.expect(near(t8092, 1.7383, 5e-4), "Theil(8092) = " + dstr(t8092) + ", want 1.7383");
    c.expect(near(max_entropy(136), 4.9127, 5e-5),
             "max_entropy(136) = " + dstr(max_entropy(136)) + ", want 4.9127");
    c.expect(near(max_entropy(8092), 8.9986, 5e-5),
             "max_entropy(8092) = " + dstr(max_entropy(8092)) + ", want 8.9986");
}

// ---------------------------------------------------------------------------
// 2. Normalized concentration identity with the full unit count

void check_normalized_concentration(Check& c) {
    const double h136 = hhi_normalized(0.076722, 136);
    const double h8092 = hhi_normalized(0.007332, 8092);
    c.expect(near(h136, 0.069883, 1e-5), "H*(0.076722, 136) = " + dstr(h136));
    c.expect(near(h8092, 0.007209, 1e-5), "H*(0.007332, 8092) = " + dstr(h8092));
}

// ---------------------------------------------------------------------------
// 3. Two independent Gini routes agree

void check_gini_two_routes(Check& c) {
    std::mt19937_64 rng(20260819);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 200));
        std::vector<double> values(n);
        for (double& v : values) v = uniform01(rng) * 1000.0;
        const double direct = gini(values);
        const double viaCurve = gini_from_lorenz(lorenz(values));
        worst = std::max(worst, std::abs(direct - viaCurve));
    }
    c.expect(worst <= 1e-9, "max route disagreement " + dstr(worst) + " > 1e-9");

    const std::vector<double> equal(17, 3.5);
    c.expect(gini(equal) == 0.0, "all-equal vector: gini = " + dstr(gini(equal)));
    const std::vector<double> pair{0.0, 1.0};
    c.expect(gini(pair) == 0.5, "[0,1] vector: gini = " + dstr(gini(pair)));
}

// ---------------------------------------------------------------------------
// 4. Equality-gap curve: endpoints, sign, and peak location

void check_lorenz_gap(Check& c) {
    std::mt19937_64 rng(4444);
    int bad_end = 0, bad_sign = 0, bad_peak = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 200));
        std::vector<double> values(n);
        const bool quantized = trial % 2 == 0;  // tied values half the time
        for (double& v : values)
            v = quantized ? 1.0 + std::floor(uniform01(rng) * 20.0) : uniform01(rng) * 1000.0;

        const LorenzCurve curve = lorenz(values);
        if (curve.delta.front() != 0.0 || curve.delta.back() != 0.0) ++bad_end;
        for (double d : curve.delta)
            if (d > 0.0) ++bad_sign;

        DeltaLorenzPeak want;  // exhaustive scan, smallest index on ties
        for (std::size_t j = 0; j < curve.delta.size(); ++j) {
            if (std::abs(curve.delta[j]) > want.magnitude) {
                want.magnitude = std::abs(curve.delta[j]);
                want.fraction = curve.cum_fraction[j];
            }
        }
        const DeltaLorenzPeak got = delta_lorenz_peak(curve);
        if (got.fraction != want.fraction || got.magnitude != want.magnitude) ++bad_peak;
    }
    c.expect(bad_end == 0, std::to_string(bad_end) + " curves with nonzero endpoints");
    c.expect(bad_sign == 0, std::to_string(bad_sign) + " positive gap values");
    c.expect(bad_peak == 0, std::to_string(bad_peak) + " peaks disagree with scan");
}

// ---------------------------------------------------------------------------
// 5. Rank-law parameter recovery, noiseless and under calibrated noise

struct LawCase {
    RankModel model;
    std::vector<double> truth;
    std::uint64_t seed_base;
    const char* name;
};

const std::vector<LawCase>& law_cases() {
    static const std::vector<LawCase> cases = {
        {RankModel::lavalette2, {6.443, 0.730}, 1000, "lavalette2"},
        {RankModel::lavalette3, {47.090, 0.809, 0.361}, 2000, "lavalette3"},
    };
    return cases;
}

SynthConfig law_config(const LawCase& law, double sigma, std::uint64_t seed) {
    SynthConfig cfg;
    cfg.mode = SynthMode::ranklaw;
    cfg.model = law.model;
    cfg.params = law.truth;
    cfg.n = 132;
    cfg.sigma = sigma;
    cfg.scale = 1.0;
    cfg.seed = seed;
    return cfg;
}

FitResult law_fit(RankModel model, const RankedSeries& series) {
    switch (model) {
        case RankModel::powerlaw: return fit_powerlaw(series);
        case RankModel::lavalette2: return fit_lavalette2(series);
        case RankModel::lavalette3: return fit_lavalette3(series);
    }
    std::abort();
}

void check_rank_law_recovery(Check& c) {
    for (const LawCase& law : law_cases()) {
        const auto values = synth_values(law_config(law, 0.0, 1));
        const FitResult fit = law_fit(law.model, series_from(values));
        for (std::size_t i = 0; i < law.truth.size(); ++i) {
            const double rel = std::abs(fit.params[i].value - law.truth[i]) /
                               std::abs(law.truth[i]);
            c.expect(rel <= 1e-8, std::string(law.name) + " noiseless " +
                                      fit.params[i].name + " off by " + dstr(rel));
        }
        c.expect(std::abs(fit.r_squared - 1.0) <= 1e-9,
                 std::string(law.name) + " noiseless r2 = " + dstr(fit.r_squared));
    }

    for (const LawCase& law : law_cases()) {
        int covered = 0;
        double min_r2 = 1.0;
        for (int t = 0; t < 200; ++t) {
            const auto values = synth_values(law_config(law, 0.05, law.seed_base + t));
            const FitResult fit = law_fit(law.model, series_from(values));
            bool all_in = true;
            for (std::size_t i = 0; i < law.truth.size(); ++i) {
                if (std::abs(fit.params[i].value - law.truth[i]) >
                    3.0 * fit.params[i].std_error)
                    all_in = false;
            }
            if (all_in) ++covered;
            min_r2 = std::min(min_r2, fit.r_squared);
        }
        c.expect(covered >= 190, std::string(law.name) + " 3-sigma coverage " +
                                     std::to_string(covered) + "/200, need >= 190");
        c.expect(min_r2 >= 0.98,
                 std::string(law.name) + " min r2 " + dstr(min_r2) + " < 0.98");
    }
}

// ---------------------------------------------------------------------------
// 6. Refinement never worsens the linear-space objective and converges
//    from badly scaled starting points

void check_refinement(Check& c) {
    int sse_regressions = 0;
    for (const LawCase& law : law_cases()) {
        for (int t = 0; t < 200; ++t) {
            const auto values = synth_values(law_config(law, 0.05, law.seed_base + t));
            const RankedSeries series = series_from(values);
            const FitResult base = law_fit(law.model, series);
            const FitResult refined = refine_nonlinear(series, base);
            if (sse_linear(refined, series) > sse_linear(base, series)) ++sse_regressions;
        }
    }
    c.expect(sse_regressions == 0,
             std::to_string(sse_regressions) + " refinements increased the objective");

    std::vector<LawCase> cases = law_cases();
    cases.push_back({RankModel::powerlaw, {1000.0, 1.0}, 0, "powerlaw"});
    for (const LawCase& law : cases) {
        const auto values = synth_values(law_config(law, 0.0, 1));
        const RankedSeries series = series_from(values);
        FitResult init = law_fit(law.model, series);
        for (auto& p : init.params) p.value *= 10.0;
        const FitResult refined = refine_nonlinear(series, init);
        c.expect(!refined.refine_diverged, std::string(law.name) + " refinement diverged");
        for (std::size_t i = 0; i < law.truth.size(); ++i) {
            const double rel = std::abs(refined.params[i].value - law.truth[i]) /
                               std::abs(law.truth[i]);
            c.expect(rel <= 1e-6, std::string(law.name) + " from 10x start, " +
                                      refined.params[i].name + " off by " + dstr(rel));
        }
    }
}

// ---------------------------------------------------------------------------
// 7. First-digit test calibration and the special-function identity under it

void check_first_digit_calibration(Check& c) {
    int consistent = 0;
    for (int t = 0; t < 200; ++t) {
        SynthConfig cfg;
        cfg.mode = SynthMode::benford;
        cfg.n = 10000;
        cfg.seed = 5000 + static_cast<std::uint64_t>(t);
        const BenfordReport report = benford_report(synth_values(cfg));
        if (report.verdict == "consistent") ++consistent;
    }
    c.expect(consistent >= 180, "conforming data accepted in " + std::to_string(consistent) +
                                    "/200 trials, need >= 180");

    std::array<double, 9> uniform_counts{};
    uniform_counts.fill(1000.0);
    const ChiSquareResult uniform = chi_square_test(uniform_counts, benford_expected());
    c.expect(uniform.p_value < 1e-6,
             "uniform digits p = " + dstr(uniform.p_value) + ", want < 1e-6");

    c.expect(std::abs(benford_expected()[0] - std::log10(2.0)) <= 1e-12,
             "P(1) deviates from log10(2)");

    double worst = 0.0;
    for (int ai = 1; ai <= 20; ++ai) {
        for (int xi = 0; xi <= 50; ++xi) {
            const double a = 0.5 * ai;
            const double x = xi;
            const double sum =
                special::regularized_gamma_p(a, x) + special::regularized_gamma_q(a, x);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    c.expect(worst <= 1e-12, "max |P+Q-1| = " + dstr(worst) + " on the grid");
}

// ---------------------------------------------------------------------------
// 8. Harmonization conserves yearly totals exactly and is idempotent

std::map<int, std::int64_t> ati_cents_by_year(const Panel& panel) {
    std::map<int, std::int64_t> totals;
    for (const auto& r : panel.records()) totals[r.year] += r.ati.cents;
    return totals;
}

bool same_records(const Panel& a, const Panel& b) {
    const auto& ra = a.records();
    const auto& rb = b.records();
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        if (ra[i].year != rb[i].year || ra[i].city_id != rb[i].city_id ||
            ra[i].city_name != rb[i].city_name || ra[i].province != rb[i].province ||
            ra[i].region != rb[i].region || ra[i].population != rb[i].population ||
            ra[i].ati.cents != rb[i].ati.cents)
            return false;
    }
    return true;
}

void check_one_panel(Check& c, const Panel& panel, const std::string& label) {
    const int ref = panel.years().back();
    const Panel h = panel.harmonize(ref);
    c.expect(ati_cents_by_year(h) == ati_cents_by_year(panel),
             label + ": yearly totals changed");
    c.expect(same_records(h, h.harmonize(ref)), label + ": second pass changed records");
}

void check_harmonization(Check& c) {
    const char* fixtures = std::getenv("INEQKIT_FIXTURES");
    if (fixtures == nullptr) {
        c.expect(false, "INEQKIT_FIXTURES not set");
    } else {
        std::ifstream cities_in(fs::path(fixtures) / "toy_cities.csv");
        std::ifstream events_in(fs::path(fixtures) / "toy_events.csv");
        c.expect(cities_in.good() && events_in.good(), "cannot open the bundled fixtures");
        if (cities_in.good() && events_in.good()) {
            ParsedCities cities = parse_city_csv(cities_in);
            ParsedEvents events = parse_events_csv(events_in);
            require_clean(cities.issues);
            require_clean(events.issues);
            check_one_panel(
                c, Panel::build(std::move(cities.records), std::move(events.events)),
                "fixture");
        }
    }

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        testgen::GeneratedPanel generated = testgen::random_panel(seed);
        check_one_panel(
            c, Panel::build(std::move(generated.records), std::move(generated.events)),
            "panel seed " + std::to_string(seed));
    }
}

// ---------------------------------------------------------------------------
// 9. CLI determinism and the exit-code contract

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string q(const fs::path& path) { return "'" + path.string() + "'"; }

/// Runs every subcommand once into `root`, with stderr captured inside the
/// tree so the later comparison covers the logs too.
void run_all_subcommands(Check& c, const std::string& bin, const fs::path& fixtures,
                         const fs::path& root, int threads) {
    fs::create_directories(root / "logs");
    auto cmd = [&](const std::string& name, const std::string& args) {
        const std::string full = "INEQKIT_THREADS=" + std::to_string(threads) + " " + bin +
                                 " " + args + " 2> " + q(root / "logs" / (name + ".log"));
        const int code = run_command(full);
        c.expect(code == 0, name + " exited " + std::to_string(code) + ", want 0");
    };
    const std::string toy = " --cities " + q(fixtures / "toy_cities.csv") + " --events " +
                            q(fixtures / "toy_events.csv");

    cmd("synth_ranklaw",
        "synth --seed 42 --n 60 --sigma 0.05 --out " + q(root / "synth_ranklaw"));
    cmd("synth_benford",
        "synth --seed 7 --mode benford --n 500 --out " + q(root / "synth_benford"));
    cmd("validate", "validate" + toy + " --expect-counts 2007=7,2009=6 --out " +
                        q(root / "validate"));
    cmd("indices", "indices" + toy + " --scope region,province --code MOL,CB,IS --avg --out " +
                       q(root / "indices"));
    cmd("ranksize", "ranksize" + toy + " --scope region --code MOL --exclude-top 1 --refine "
                                       "--out " +
                        q(root / "ranksize"));
    cmd("lorenz", "lorenz" + toy + " --scope country --avg --out " + q(root / "lorenz"));
    cmd("benford", "benford" + toy + " --scope country --pooled --out " + q(root / "benford"));
    cmd("histogram", "histogram" + toy + " --scope country --field population "
                                         "--bin-width 25000 --cap 3 --out " +
                         q(root / "histogram"));
}

std::map<std::string, fs::path> tree_listing(const fs::path& root) {
    std::map<std::string, fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file())
            files[fs::relative(entry.path(), root).generic_string()] = entry.path();
    }
    return files;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void check_cli(Check& c) {
    const char* bin_env = std::getenv("INEQKIT_BIN");
    const char* fixtures_env = std::getenv("INEQKIT_FIXTURES");
    if (bin_env == nullptr || fixtures_env == nullptr) {
        c.expect(false, "INEQKIT_BIN / INEQKIT_FIXTURES not set");
        return;
    }
    const std::string bin = q(bin_env);
    const fs::path fixtures(fixtures_env);

    std::mt19937_64 rng(std::random_device{}());
    const fs::path work = fs::temp_directory_path() /
                          ("ineqkit_accept_" + std::to_string(rng()));
    fs::create_directories(work);

    // different worker counts must not leak into the artifacts
    run_all_subcommands(c, bin, fixtures, work / "a", 2);
    run_all_subcommands(c, bin, fixtures, work / "b", 5);

    const auto listing_a = tree_listing(work / "a");
    const auto listing_b = tree_listing(work / "b");
    c.expect(listing_a.size() == listing_b.size() && !listing_a.empty(),
             "trees hold " + std::to_string(listing_a.size()) + " vs " +
                 std::to_string(listing_b.size()) + " files");
    for (const auto& [rel, path_a] : listing_a) {
        const auto it = listing_b.find(rel);
        if (it == listing_b.end()) {
            c.expect(false, rel + " missing from the second tree");
            continue;
        }
        c.expect(read_bytes(path_a) == read_bytes(it->second), rel + " differs between runs");
    }

    const fs::path sink = work / "failures";
    auto expect_exit = [&](const std::string& name, const std::string& args, int want) {
        const std::string full = bin + " " + args + " --out " + q(sink / name) + " 2> /dev/null";
        const int code = run_command(full);
        c.expect(code == want,
                 name + " exited " + std::to_string(code) + ", want " + std::to_string(want));
    };
    expect_exit("dup", "validate --cities " + q(fixtures / "dup_cities.csv"), 1);
    expect_exit("neg", "validate --cities " + q(fixtures / "neg_cities.csv"), 1);
    expect_exit("badevent",
                "validate --cities " + q(fixtures / "badevent_cities.csv") + " --events " +
                    q(fixtures / "badevent_events.csv"),
                1);
    expect_exit("missing", "indices --cities " + q(fixtures / "no_such_file.csv"), 2);
    expect_exit("badyear",
                "indices --cities " + q(fixtures / "toy_cities.csv") + " --events " +
                    q(fixtures / "toy_events.csv") + " --years 1999",
                2);

    std::error_code ec;
    fs::remove_all(work, ec);
}

// ---------------------------------------------------------------------------

struct Criterion {
    int number;
    const char* name;
    std::function<void(Check&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "theil-entropy-identity", check_theil_identity},
        {2, "normalized-concentration-identity", check_normalized_concentration},
        {3, "gini-two-route-agreement", check_gini_two_routes},
        {4, "lorenz-gap-properties", check_lorenz_gap},
        {5, "rank-law-parameter-recovery", check_rank_law_recovery},
        {6, "refinement-safety-and-convergence", check_refinement},
        {7, "first-digit-calibration", check_first_digit_calibration},
        {8, "harmonization-conservation", check_harmonization},
        {9, "cli-determinism-and-exit-codes", check_cli},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int number = std::atoi(argv[i]);
        if (number < 1 || number > static_cast<int>(criteria().size())) {
            std::cerr << "usage: " << argv[0] << " [criterion numbers 1.."
                      << criteria().size() << "]\n";
            return 2;
        }
        selected.push_back(number);
    }

    int failed = 0;
    int ran = 0;
    for (const Criterion& criterion : criteria()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.number) == selected.end())
            continue;
        ++ran;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("unexpected exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        char line[160];
        std::snprintf(line, sizeof line, "[%s] %d %s (%.1fs)",
                      check.problems.empty() ? "PASS" : "FAIL", criterion.number,
                      criterion.name, seconds);
        std::cout << line << "\n";
        for (const auto& problem : check.problems) std::cout << "       - " << problem << "\n";
        if (!check.problems.empty()) ++failed;
    }

    std::cout << "acceptance: " << (ran - failed) << "/" << ran << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
