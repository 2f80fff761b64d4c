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
#include <vector>

namespace ineq {

/// Market shares s_i = y_i / sum_j y_j of a nonnegative value vector.
struct ShareVector {
    std::vector<double> shares;

    int n() const { return static_cast<int>(shares.size()); }
};

/// Normalized shares of `values`. Values must be nonnegative with a
/// positive sum; zero entries yield zero shares.
ShareVector shares(std::span<const double> values);

/// Shannon entropy H = -sum s_i ln s_i, with 0 ln 0 := 0. In [0, ln N].
double entropy(const ShareVector& s);

/// ln N, the entropy of the uniform distribution over n units.
double max_entropy(std::int64_t n);

/// Theil inequality index Th = ln N - H >= 0 (0 for uniform shares).
double theil(const ShareVector& s);

/// Herfindahl-Hirschman concentration index: sum of squared shares of the
/// `top_k` largest values, where shares are taken relative to the FULL
/// total (not the top-k subtotal). All values are used when n <= top_k.
double hhi(std::span<const double> values, int top_k = 50);

/// Normalized HHI  H* = (hhi - 1/n) / (1 - 1/n), with n the full unit
/// count of the scope. May be negative when the top-k truncation drops
/// hhi below 1/n. Requires n >= 2.
double hhi_normalized(double hhi_value, std::int64_t n);

/// Discrete Lorenz curve. Units sorted ascending by value (stable in the
/// input order), point j is (j/N, cumulative share of the j smallest).
/// delta[j] = L_j - j/N is the gap to the equality diagonal; it is <= 0
/// everywhere and zero at both ends.
struct LorenzCurve {
    std::vector<double> cum_fraction;  ///< j/N for j = 0..N
    std::vector<double> cum_share;     ///< L_j for j = 0..N
    std::vector<double> delta;         ///< L_j - j/N

    int n() const { return static_cast<int>(cum_share.size()) - 1; }
};

LorenzCurve lorenz(std::span<const double> values);

/// Gini coefficient by the pairwise-difference formula
///   Gi = sum_i sum_j |y_i - y_j| / (2 N^2 ybar),  in [0, 1 - 1/N].
double gini(std::span<const double> values);

/// Gini coefficient as twice the area between the equality diagonal and
/// the trapezoid interpolation of the Lorenz curve. Kept as a second,
/// independently coded route to the same quantity.
double gini_from_lorenz(const LorenzCurve& curve);

/// Location and magnitude of the extremum of |delta Lorenz|.
struct DeltaLorenzPeak {
    double fraction = 0.0;   ///< j/N at the extremum (smallest j on ties)
    double magnitude = 0.0;  ///< |L_j - j/N| there
};

DeltaLorenzPeak delta_lorenz_peak(const LorenzCurve& curve);

/// All per-slice inequality indicators in one record.
struct IndexReport {
    std::int64_t n = 0;
    double entropy = 0.0;
    double max_entropy = 0.0;
    double theil = 0.0;
    int hhi_top_k = 50;
    double hhi = 0.0;
    std::optional<double> hhi_normalized;  ///< absent when n < 2
    double gini = 0.0;
    double gini_trapezoid = 0.0;
    DeltaLorenzPeak delta_lorenz_peak;
};

IndexReport index_report(std::span<const double> values, int top_k = 50);

}  // namespace ineq
