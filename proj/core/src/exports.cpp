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

#include "ineq/exports.hpp"

#include <charconv>
#include <nlohmann/json.hpp>
#include <ostream>

#include "ineq/csv.hpp"

namespace ineq {

namespace {

using nlohmann::json;

json meta_json(const SliceMeta& meta) {
    json j;
    j["scope"] = meta.scope;
    j["scope_code"] = meta.scope_code;
    j["year"] = meta.year_label;
    if (!meta.field.empty()) j["field"] = meta.field;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json fit_json(const FitResult& fit) {
    json j;
    j["model"] = to_string(fit.model);
    j["space"] = to_string(fit.fit_space);
    j["n"] = fit.n;
    j["excluded_count"] = fit.excluded_count;
    j["r_squared"] = fit.r_squared;
    j["collinear_fallback"] = fit.collinear_fallback;
    j["refine_diverged"] = fit.refine_diverged;
    json params = json::array();
    for (const auto& p : fit.params) {
        params.push_back({{"name", p.name}, {"value", p.value}, {"std_error", p.std_error}});
    }
    j["params"] = std::move(params);
    return j;
}

json issues_json(const std::vector<Issue>& issues) {
    json arr = json::array();
    for (const auto& issue : issues) {
        arr.push_back({{"row", issue.row}, {"code", issue.code}, {"message", issue.message}});
    }
    return arr;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

std::string index_report_json(const SliceMeta& meta, const IndexReport& report) {
    json j = meta_json(meta);
    j["n"] = report.n;
    j["entropy"] = report.entropy;
    j["max_entropy"] = report.max_entropy;
    j["theil"] = report.theil;
    j["hhi_top_k"] = report.hhi_top_k;
    j["hhi"] = report.hhi;
    if (report.hhi_normalized)
        j["hhi_normalized"] = *report.hhi_normalized;
    else
        j["hhi_normalized"] = nullptr;
    j["gini"] = report.gini;
    j["gini_trapezoid"] = report.gini_trapezoid;
    j["delta_lorenz_peak"] = {{"fraction", report.delta_lorenz_peak.fraction},
                              {"magnitude", report.delta_lorenz_peak.magnitude}};
    return dump(j);
}

std::string fits_json(const SliceMeta& meta, std::span<const FitVariant> fits) {
    json j = meta_json(meta);
    json arr = json::array();
    for (const auto& v : fits) {
        json f = fit_json(v.fit);
        f["variant"] = v.variant;
        arr.push_back(std::move(f));
    }
    j["fits"] = std::move(arr);
    return dump(j);
}

std::string benford_json(const SliceMeta& meta, const BenfordReport& report) {
    json j = meta_json(meta);
    j["n"] = report.observed.total();
    j["excluded_nonpositive"] = report.excluded_nonpositive;
    j["counts"] = report.observed.counts;
    j["observed_freq"] = report.observed.frequencies();
    j["expected_freq"] = report.expected;
    j["chi_square"] = report.chi_square;
    j["dof"] = report.dof;
    j["p_value"] = report.p_value;
    j["mad"] = report.mad;
    j["significance"] = report.significance;
    j["verdict"] = report.verdict;
    return dump(j);
}

std::string validation_json(const ValidationReport& report) {
    json j;
    j["ok"] = report.ok();
    j["errors"] = issues_json(report.errors);
    j["warnings"] = issues_json(report.warnings);
    json years = json::array();
    for (const auto& y : report.years) {
        years.push_back({{"year", y.year},
                         {"n_cities", y.n_cities},
                         {"population", y.population},
                         {"ati_total", y.ati_total.str()}});
    }
    j["years"] = std::move(years);
    return dump(j);
}

void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve, const DeltaLorenzPeak& peak) {
    out << "# peak_fraction=" << format_double(peak.fraction)
        << " peak_magnitude=" << format_double(peak.magnitude) << "\n";
    csv::write_row(out, {"j", "fraction", "cum_share", "delta"});
    for (std::size_t j = 0; j < curve.cum_share.size(); ++j) {
        csv::write_row(out, {std::to_string(j), format_double(curve.cum_fraction[j]),
                             format_double(curve.cum_share[j]), format_double(curve.delta[j])});
    }
}

void write_model_curve_csv(std::ostream& out, const RankedSeries& series, const FitResult& fit) {
    csv::write_row(out, {"rank", "id", "observed", "model"});
    for (const auto& entry : series.pairs) {
        csv::write_row(out, {std::to_string(entry.rank), entry.id, format_double(entry.value),
                             format_double(evaluate_model(fit, entry.rank))});
    }
}

void write_digit_frequency_csv(std::ostream& out, const BenfordReport& report) {
    csv::write_row(out, {"digit", "observed_freq", "expected_freq"});
    const auto freq = report.observed.frequencies();
    for (int d = 1; d <= 9; ++d) {
        csv::write_row(out, {std::to_string(d), format_double(freq[d - 1]),
                             format_double(report.expected[d - 1])});
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
    csv::write_row(out, {"bin_low", "bin_high", "count", "display_count"});
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        const std::int64_t count = histogram.counts[i];
        const std::int64_t shown =
            histogram.display_cap ? std::min(count, *histogram.display_cap) : count;
        csv::write_row(out, {format_double(histogram.edges[i]),
                             format_double(histogram.edges[i + 1]), std::to_string(count),
                             std::to_string(shown)});
    }
}

void write_index_table_csv(std::ostream& out, std::span<const std::string> labels,
                           std::span<const IndexReport> reports) {
    std::vector<std::string> header{"index"};
    header.insert(header.end(), labels.begin(), labels.end());
    csv::write_row(out, header);

    auto row = [&](std::string_view name, auto getter) {
        std::vector<std::string> cells{std::string(name)};
        for (const auto& r : reports) cells.push_back(getter(r));
        csv::write_row(out, cells);
    };
    row("n", [](const IndexReport& r) { return std::to_string(r.n); });
    row("entropy", [](const IndexReport& r) { return format_double(r.entropy); });
    row("max_entropy", [](const IndexReport& r) { return format_double(r.max_entropy); });
    row("theil", [](const IndexReport& r) { return format_double(r.theil); });
    row("hhi", [](const IndexReport& r) { return format_double(r.hhi); });
    row("hhi_normalized", [](const IndexReport& r) {
        return r.hhi_normalized ? format_double(*r.hhi_normalized) : std::string("NA");
    });
    row("gini", [](const IndexReport& r) { return format_double(r.gini); });
    row("gini_trapezoid",
        [](const IndexReport& r) { return format_double(r.gini_trapezoid); });
    row("delta_lorenz_peak_fraction",
        [](const IndexReport& r) { return format_double(r.delta_lorenz_peak.fraction); });
    row("delta_lorenz_peak_magnitude",
        [](const IndexReport& r) { return format_double(r.delta_lorenz_peak.magnitude); });
}

}  // namespace ineq
