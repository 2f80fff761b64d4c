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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ineq {

/// Exact euro amount held as an integer number of cents.
///
/// Tax-income figures are ingested and aggregated in this representation so
/// that sums are exact; conversion to floating point happens only at the
/// boundary to the index / fitting code.
struct Money {
    std::int64_t cents = 0;

    constexpr Money() = default;
    explicit constexpr Money(std::int64_t c) : cents(c) {}

    static constexpr Money from_cents(std::int64_t c) { return Money(c); }

    /// Parse a decimal euro amount ("1234.56", "7", "-3.00", "0.4").
    /// At most two significant fraction digits; trailing zeros beyond the
    /// cents position are accepted. Returns nullopt on malformed input or
    /// overflow.
    static std::optional<Money> try_parse(std::string_view text);

    /// Like try_parse but throws DataError on malformed input.
    static Money parse(std::string_view text);

    /// Canonical decimal rendering, always with two fraction digits.
    std::string str() const;

    double euros() const { return static_cast<double>(cents) / 100.0; }

    constexpr bool negative() const { return cents < 0; }

    friend constexpr Money operator+(Money a, Money b) { return Money(a.cents + b.cents); }
    constexpr Money& operator+=(Money other) {
        cents += other.cents;
        return *this;
    }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.cents - b.cents); }
    friend constexpr auto operator<=>(Money, Money) = default;
};

}  // namespace ineq
