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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ineq/benford.hpp"
#include "ineq/indices.hpp"
#include "ineq/ingest.hpp"
#include "ineq/ranksize.hpp"

namespace ineq {

/// Identifies the data slice a report was computed on. year_label is a
/// number rendered as text, "avg" for multi-year averages, or "pooled".
struct SliceMeta {
    std::string scope;
    std::string scope_code;
    std::string year_label;
    std::string field;
};

/// Shortest round-trip decimal rendering of a double ("1", "0.25",
/// "4.912654885736052"); deterministic across runs.
std::string format_double(double value);

// JSON documents (pretty-printed, 2-space indent, keys sorted, trailing
// newline). Doubles use shortest round-trip form, money exact decimals.
std::string index_report_json(const SliceMeta& meta, const IndexReport& report);

struct FitVariant {
    std::string variant;  ///< "all" or "ex<k>"
    FitResult fit;
};

std::string fits_json(const SliceMeta& meta, std::span<const FitVariant> fits);
std::string benford_json(const SliceMeta& meta, const BenfordReport& report);
std::string validation_json(const ValidationReport& report);

// Plot-ready CSV files with constant column counts.
void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve, const DeltaLorenzPeak& peak);
void write_model_curve_csv(std::ostream& out, const RankedSeries& series, const FitResult& fit);
void write_digit_frequency_csv(std::ostream& out, const BenfordReport& report);
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

/// Indicator-per-row, year-per-column summary table (the layout of the
/// usual multi-year index tables). `labels` and `reports` run in parallel.
void write_index_table_csv(std::ostream& out, std::span<const std::string> labels,
                           std::span<const IndexReport> reports);

}  // namespace ineq
