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

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ineq::csv {

/// Minimal RFC-4180-style reader: comma delimiter, optional double-quoted
/// fields with "" escapes, quoted fields may contain commas and newlines.
/// CRLF line breaks are normalized to LF, also inside quoted fields. Input
/// must be UTF-8; no transcoding is attempted.
class Reader {
  public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Read the next record into `fields`. Returns false at end of input.
    /// Blank lines are skipped.
    bool next(std::vector<std::string>& fields);

    /// 1-based line number of the first line of the record last returned.
    int line() const { return record_line_; }

  private:
    std::istream& in_;
    int line_ = 0;
    int record_line_ = 0;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace ineq::csv
