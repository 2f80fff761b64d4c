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

#include "ineq/money.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

#include "ineq/error.hpp"

namespace ineq {

namespace {

constexpr std::int64_t kMaxCents = std::numeric_limits<std::int64_t>::max();

bool mul100_add(std::int64_t whole, std::int64_t frac, std::int64_t& out) {
    if (whole > (kMaxCents - frac) / 100) return false;
    out = whole * 100 + frac;
    return true;
}

}  // namespace

std::optional<Money> Money::try_parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) return std::nullopt;

    const std::size_t dot = text.find('.', pos);
    const std::string_view whole_part =
        text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    if (whole_part.empty()) return std::nullopt;

    std::int64_t whole = 0;
    {
        const char* first = whole_part.data();
        const char* last = whole_part.data() + whole_part.size();
        auto [p, ec] = std::from_chars(first, last, whole);
        if (ec != std::errc() || p != last) return std::nullopt;
    }

    std::int64_t frac = 0;
    if (dot != std::string_view::npos) {
        const std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.empty()) return std::nullopt;
        int seen = 0;
        for (char c : frac_part) {
            if (c < '0' || c > '9') return std::nullopt;
            if (seen < 2) {
                frac = frac * 10 + (c - '0');
                ++seen;
            } else if (c != '0') {
                // sub-cent precision cannot be represented exactly
                return std::nullopt;
            }
        }
        if (seen == 1) frac *= 10;
    }

    std::int64_t cents = 0;
    if (!mul100_add(whole, frac, cents)) return std::nullopt;
    return Money(negative ? -cents : cents);
}

Money Money::parse(std::string_view text) {
    auto m = try_parse(text);
    if (!m) throw DataError("malformed decimal amount: '" + std::string(text) + "'");
    return *m;
}

std::string Money::str() const {
    const std::int64_t abs = cents < 0 ? -cents : cents;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", cents < 0 ? "-" : "",
                  static_cast<long long>(abs / 100), static_cast<long long>(abs % 100));
    return buf;
}

}  // namespace ineq
