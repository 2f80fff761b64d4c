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

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "ineq/money.hpp"

namespace ineq {

/// Leading significant decimal digit of a positive value, scale independent:
/// first_digit(v) == first_digit(v * 10^k) for any integer k.
int first_digit(double value);

/// Digit of an exact money amount, read off the decimal representation of the
/// cent count. Avoids floating-point boundary cases like 0.9999999 vs 1.0.
int first_digit(Money value);

/// Expected first-digit frequencies P(d) = log10(1 + 1/d) for d = 1..9.
/// Positive, strictly decreasing, and summing to 1 (the sum telescopes).
std::array<double, 9> benford_expected();

/// Observed counts of first digits 1..9.
struct DigitDistribution {
    std::array<std::int64_t, 9> counts{};

    std::int64_t total() const;
    /// counts / total; requires total > 0.
    std::array<double, 9> frequencies() const;
};

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square goodness of fit of observed category counts against
/// expected frequencies. Fractional counts are accepted so that averaged or
/// pooled distributions can be tested directly. dof = categories - 1.
ChiSquareResult chi_square_test(std::span<const double> observed_counts,
                                std::span<const double> expected_frequencies);

ChiSquareResult chi_square_test(const DigitDistribution& observed,
                                std::span<const double> expected_frequencies);

struct BenfordReport {
    DigitDistribution observed;
    std::array<double, 9> expected{};
    double chi_square = 0.0;
    int dof = 8;
    double p_value = 1.0;
    /// Mean absolute deviation between observed and expected frequencies.
    /// Reported alongside chi-square because the latter grows with sample
    /// size even for practically negligible deviations.
    double mad = 0.0;
    double significance = 0.05;
    /// "consistent" when p_value >= significance, otherwise "reject".
    std::string verdict;
    /// Zero or negative inputs carry no first digit; they are skipped and
    /// counted here.
    std::int64_t excluded_nonpositive = 0;
};

BenfordReport benford_report(std::span<const Money> values);
BenfordReport benford_report(std::span<const double> values);

}  // namespace ineq
