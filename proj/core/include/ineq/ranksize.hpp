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
#include <vector>

namespace ineq {

struct IdValue {
    std::string id;
    double value = 0.0;
};

struct RankedEntry {
    int rank = 0;  ///< 1-based, contiguous
    std::string id;
    double value = 0.0;
};

struct ExcludedEntry {
    int original_rank = 0;  ///< rank in the series it was removed from
    std::string id;
    double value = 0.0;
};

/// Values sorted descending with contiguous ranks 1..n. Zero values never
/// enter the ranking; they are recorded in `excluded`, as are entries
/// removed by exclude_top.
struct RankedSeries {
    std::vector<RankedEntry> pairs;
    std::vector<ExcludedEntry> excluded;

    int n() const { return static_cast<int>(pairs.size()); }
};

/// Rank by descending value, ties broken by ascending id. Requires at
/// least one positive value.
RankedSeries rank(std::span<const IdValue> items);

/// Remove the k lowest-rank (largest) entries, the "king" outliers that
/// often sit above any fitted law, and re-rank the remainder 1..n-k.
/// Requires 0 <= k < n.
RankedSeries exclude_top(const RankedSeries& series, int k);

/// Rank-size models:
///   powerlaw    y(r) = N1 * r^-alpha
///   lavalette2  y(r) = kappa2 * [N r / (N - r + 1)]^-chi
///   lavalette3  y(r) = A * (N r)^-gamma * (N - r + 1)^beta
enum class RankModel { powerlaw, lavalette2, lavalette3 };

std::string to_string(RankModel model);
RankModel parse_rank_model(std::string_view name);

enum class FitSpace { log_space, linear_space };

std::string to_string(FitSpace space);

struct ParamEstimate {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
};

struct FitResult {
    RankModel model = RankModel::powerlaw;
    std::vector<ParamEstimate> params;
    double r_squared = 0.0;
    FitSpace fit_space = FitSpace::log_space;
    int n = 0;               ///< rank count the fit was made on
    int excluded_count = 0;  ///< entries excluded before ranking/fitting
    bool collinear_fallback = false;  ///< lavalette3 degenerated to lavalette2
    bool refine_diverged = false;     ///< nonlinear refinement failed; log-space
                                      ///< initializer returned unchanged
};

/// Ordinary least squares of ln y on ln r. Requires n >= 3.
FitResult fit_powerlaw(const RankedSeries& series);

/// Log-space OLS for the two-parameter Lavalette law. Requires n >= 3.
FitResult fit_lavalette2(const RankedSeries& series);

/// Log-space OLS for the three-parameter Lavalette law with regressors
/// ln(N r) and ln(N - r + 1). Requires n >= 4. Falls back to lavalette2
/// (flagged) if the regressors are numerically collinear.
FitResult fit_lavalette3(const RankedSeries& series);

/// Damped (Levenberg-Marquardt) least squares in linear space, started
/// from `initial`. By construction never returns a fit with larger
/// linear-space SSE than the initializer; on divergence the initializer
/// comes back with refine_diverged set.
FitResult refine_nonlinear(const RankedSeries& series, const FitResult& initial);

/// Model value at (possibly fractional) rank r. Lavalette models require
/// 1 <= r <= N.
double evaluate_model(const FitResult& fit, double r);

/// Raw law evaluation from parameter values in declaration order (see
/// RankModel), without a FitResult. n is the ensemble size.
double rank_law_value(RankModel model, std::span<const double> params, double r, double n);

/// Linear-space sum of squared residuals of a fit against a series.
double sse_linear(const FitResult& fit, const RankedSeries& series);

/// Equal-width frequency-size histogram with half-open bins [lo, hi).
/// Zero-count bins between occupied ones are kept. `display_cap`, when
/// set, is a rendering hint only: raw counts are always preserved.
struct Histogram {
    std::vector<double> edges;          ///< strictly increasing, size = bins+1
    std::vector<std::int64_t> counts;   ///< size = bins
    std::optional<std::int64_t> display_cap;

    std::int64_t total() const;
};

Histogram histogram(std::span<const double> values, double bin_width, double origin = 0.0,
                    std::optional<std::int64_t> display_cap = std::nullopt);

/// Histogram over caller-supplied edges; every value must fall in
/// [edges.front(), edges.back()).
Histogram histogram(std::span<const double> values, std::vector<double> edges,
                    std::optional<std::int64_t> display_cap = std::nullopt);

}  // namespace ineq
