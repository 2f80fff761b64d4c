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

#include "ineq/benford.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ineq/error.hpp"
#include "ineq/special.hpp"

namespace ineq {

int first_digit(double value) {
    if (!std::isfinite(value) || !(value > 0.0))
        throw DataError("first_digit: value must be positive and finite");
    const double exponent = std::floor(std::log10(value));
    double mantissa = value / std::pow(10.0, exponent);
    // log10/pow can land an exact power of ten a hair outside [1, 10)
    if (mantissa < 1.0) mantissa *= 10.0;
    if (mantissa >= 10.0) mantissa /= 10.0;
    return static_cast<int>(mantissa);
}

int first_digit(Money value) {
    if (value.cents <= 0) throw DataError("first_digit: amount must be positive");
    // scaling by 100 does not change the leading significant digit, so the
    // first character of the cent count is the answer
    const std::string digits = std::to_string(value.cents);
    return digits[0] - '0';
}

std::array<double, 9> benford_expected() {
    std::array<double, 9> p{};
    for (int d = 1; d <= 9; ++d) p[d - 1] = std::log10(1.0 + 1.0 / d);
    return p;
}

std::int64_t DigitDistribution::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::array<double, 9> DigitDistribution::frequencies() const {
    const std::int64_t n = total();
    if (n <= 0) throw DataError("digit distribution is empty");
    std::array<double, 9> f{};
    for (int i = 0; i < 9; ++i)
        f[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    return f;
}

ChiSquareResult chi_square_test(std::span<const double> observed_counts,
                                std::span<const double> expected_frequencies) {
    if (observed_counts.size() != expected_frequencies.size() || observed_counts.empty())
        throw ConfigError("chi_square_test: category count mismatch");
    double n = 0.0;
    for (double c : observed_counts) {
        if (!(c >= 0.0)) throw DataError("chi_square_test: negative count");
        n += c;
    }
    if (!(n >= 1.0)) throw DataError("chi_square_test: total count below 1");

    double statistic = 0.0;
    for (std::size_t i = 0; i < observed_counts.size(); ++i) {
        const double p = expected_frequencies[i];
        if (!(p > 0.0)) throw ConfigError("chi_square_test: expected frequency must be positive");
        const double e = n * p;
        const double d = observed_counts[i] - e;
        statistic += d * d / e;
    }

    ChiSquareResult result;
    result.statistic = statistic;
    result.dof = static_cast<int>(observed_counts.size()) - 1;
    result.p_value = special::chi_square_tail(statistic, result.dof);
    return result;
}

ChiSquareResult chi_square_test(const DigitDistribution& observed,
                                std::span<const double> expected_frequencies) {
    std::array<double, 9> counts{};
    for (int i = 0; i < 9; ++i) counts[i] = static_cast<double>(observed.counts[i]);
    return chi_square_test(counts, expected_frequencies);
}

namespace {

BenfordReport report_from_distribution(DigitDistribution observed,
                                       std::int64_t excluded) {
    if (observed.total() == 0)
        throw DataError("benford_report: no positive values in group");

    BenfordReport report;
    report.observed = observed;
    report.expected = benford_expected();
    report.excluded_nonpositive = excluded;

    const ChiSquareResult chi = chi_square_test(observed, report.expected);
    report.chi_square = chi.statistic;
    report.dof = chi.dof;
    report.p_value = chi.p_value;

    const std::array<double, 9> freq = observed.frequencies();
    double mad = 0.0;
    for (int i = 0; i < 9; ++i) mad += std::abs(freq[i] - report.expected[i]);
    report.mad = mad / 9.0;

    report.verdict = report.p_value >= report.significance ? "consistent" : "reject";
    return report;
}

}  // namespace

BenfordReport benford_report(std::span<const Money> values) {
    DigitDistribution observed;
    std::int64_t excluded = 0;
    for (Money v : values) {
        if (v.cents <= 0) {
            ++excluded;
            continue;
        }
        ++observed.counts[first_digit(v) - 1];
    }
    return report_from_distribution(observed, excluded);
}

BenfordReport benford_report(std::span<const double> values) {
    DigitDistribution observed;
    std::int64_t excluded = 0;
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0) {
            ++excluded;
            continue;
        }
        ++observed.counts[first_digit(v) - 1];
    }
    return report_from_distribution(observed, excluded);
}

}  // namespace ineq
