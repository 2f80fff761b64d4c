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

#include "ineq/indices.hpp"

#include <algorithm>
#include <cmath>

#include "ineq/error.hpp"

namespace ineq {

namespace {

double checked_total(std::span<const double> values, const char* op) {
    if (values.empty()) throw DataError(std::string(op) + ": empty value vector");
    double total = 0.0;
    for (double v : values) {
        if (!(v >= 0.0)) throw DataError(std::string(op) + ": negative or NaN value");
        total += v;
    }
    if (!(total > 0.0)) throw DataError(std::string(op) + ": all values are zero");
    return total;
}

}  // namespace

ShareVector shares(std::span<const double> values) {
    const double total = checked_total(values, "shares");
    ShareVector s;
    s.shares.reserve(values.size());
    for (double v : values) s.shares.push_back(v / total);
    return s;
}

double entropy(const ShareVector& s) {
    double h = 0.0;
    for (double p : s.shares) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double max_entropy(std::int64_t n) {
    if (n < 1) throw DataError("max_entropy: n must be >= 1");
    return std::log(static_cast<double>(n));
}

double theil(const ShareVector& s) {
    // Shares entropy deviates from the uniform maximum ln N by exactly the
    // Theil index; computed through the same entropy path so the identity
    // holds to the last bit.
    return max_entropy(s.n()) - entropy(s);
}

double hhi(std::span<const double> values, int top_k) {
    if (top_k < 1) throw ConfigError("hhi: top_k must be >= 1");
    const double total = checked_total(values, "hhi");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t k = std::min<std::size_t>(sorted.size(), static_cast<std::size_t>(top_k));
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double share = sorted[i] / total;
        sum += share * share;
    }
    return sum;
}

double hhi_normalized(double hhi_value, std::int64_t n) {
    if (n < 2) throw DataError("hhi_normalized: n must be >= 2");
    const double inv_n = 1.0 / static_cast<double>(n);
    return (hhi_value - inv_n) / (1.0 - inv_n);
}

LorenzCurve lorenz(std::span<const double> values) {
    const double total = checked_total(values, "lorenz");
    const std::size_t n = values.size();

    std::vector<double> sorted(values.begin(), values.end());
    std::stable_sort(sorted.begin(), sorted.end());

    LorenzCurve curve;
    curve.cum_fraction.resize(n + 1);
    curve.cum_share.resize(n + 1);
    curve.delta.resize(n + 1);
    curve.cum_fraction[0] = 0.0;
    curve.cum_share[0] = 0.0;
    curve.delta[0] = 0.0;

    double cum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        cum += sorted[j - 1];
        const double fraction = static_cast<double>(j) / static_cast<double>(n);
        curve.cum_fraction[j] = fraction;
        curve.cum_share[j] = cum / total;
        // With ascending sort the prefix mean never exceeds the overall mean,
        // so L_j <= j/N holds mathematically; truncate summation noise that
        // would push delta a few ulp above zero.
        curve.delta[j] = std::min(0.0, curve.cum_share[j] - fraction);
    }
    // force exact endpoints against rounding drift
    curve.cum_share[n] = 1.0;
    curve.delta[n] = 0.0;
    return curve;
}

double gini(std::span<const double> values) {
    const double total = checked_total(values, "gini");
    const std::size_t n = values.size();
    double abs_diff_sum = 0.0;  // over unordered pairs
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            abs_diff_sum += std::fabs(values[i] - values[j]);
        }
    }
    // sum over ordered pairs is twice abs_diff_sum; N^2 * ybar = N * total
    return abs_diff_sum / (static_cast<double>(n) * total);
}

double gini_from_lorenz(const LorenzCurve& curve) {
    const int n = curve.n();
    double trapezoid_sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        trapezoid_sum += curve.cum_share[j - 1] + curve.cum_share[j];
    }
    return 1.0 - trapezoid_sum / static_cast<double>(n);
}

DeltaLorenzPeak delta_lorenz_peak(const LorenzCurve& curve) {
    DeltaLorenzPeak peak;
    for (std::size_t j = 0; j < curve.delta.size(); ++j) {
        const double magnitude = std::fabs(curve.delta[j]);
        if (magnitude > peak.magnitude) {
            peak.magnitude = magnitude;
            peak.fraction = curve.cum_fraction[j];
        }
    }
    return peak;
}

IndexReport index_report(std::span<const double> values, int top_k) {
    IndexReport report;
    report.n = static_cast<std::int64_t>(values.size());

    const ShareVector s = shares(values);
    report.entropy = entropy(s);
    report.max_entropy = max_entropy(report.n);
    report.theil = theil(s);
    report.hhi_top_k = top_k;
    report.hhi = hhi(values, top_k);
    if (report.n >= 2) report.hhi_normalized = hhi_normalized(report.hhi, report.n);

    const LorenzCurve curve = lorenz(values);
    report.gini = gini(values);
    report.gini_trapezoid = gini_from_lorenz(curve);
    report.delta_lorenz_peak = delta_lorenz_peak(curve);
    return report;
}

}  // namespace ineq
