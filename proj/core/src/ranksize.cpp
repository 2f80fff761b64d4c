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

#include "ineq/ranksize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ineq/error.hpp"

namespace ineq {

namespace {

constexpr std::int64_t kMaxBins = 10'000'000;

double r_squared_of(double sse, const Eigen::VectorXd& y) {
    const double mean = y.mean();
    double sst = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double d = y[i] - mean;
        sst += d * d;
    }
    if (sst <= 0.0) return 1.0;  // constant data, fitted exactly by the intercept
    return std::clamp(1.0 - sse / sst, 0.0, 1.0);
}

struct Ols {
    Eigen::VectorXd beta;
    Eigen::VectorXd std_error;
    double r_squared = 0.0;
    bool singular = false;
};

Ols ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Ols fit;
    auto qr = X.colPivHouseholderQr();
    if (qr.rank() < X.cols()) {
        fit.singular = true;
        return fit;
    }
    fit.beta = qr.solve(y);
    const Eigen::VectorXd residual = y - X * fit.beta;
    const double sse = residual.squaredNorm();
    const double dof = static_cast<double>(X.rows() - X.cols());
    const double s2 = dof > 0.0 ? sse / dof : 0.0;
    const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
    fit.std_error = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    fit.r_squared = r_squared_of(sse, y);
    return fit;
}

Eigen::VectorXd log_values(const RankedSeries& series) {
    Eigen::VectorXd y(series.n());
    for (int i = 0; i < series.n(); ++i) y[i] = std::log(series.pairs[i].value);
    return y;
}

// ---------------------------------------------------------------------------
// Model evaluation in natural parameter space (shared by evaluate_model and
// the Levenberg-Marquardt refinement).

int param_count(RankModel model) {
    return model == RankModel::lavalette3 ? 3 : 2;
}

double model_value(RankModel model, std::span<const double> th, double r, double n) {
    switch (model) {
        case RankModel::powerlaw:
            return th[0] * std::pow(r, -th[1]);
        case RankModel::lavalette2:
            return th[0] * std::pow(n * r / (n - r + 1.0), -th[1]);
        case RankModel::lavalette3:
            return th[0] * std::pow(n * r, -th[1]) * std::pow(n - r + 1.0, th[2]);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void model_gradient(RankModel model, std::span<const double> th, double r, double n,
                    std::span<double> grad) {
    switch (model) {
        case RankModel::powerlaw: {
            const double basis = std::pow(r, -th[1]);
            grad[0] = basis;
            grad[1] = -th[0] * std::log(r) * basis;
            return;
        }
        case RankModel::lavalette2: {
            const double u = std::log(n * r / (n - r + 1.0));
            const double basis = std::exp(-th[1] * u);
            grad[0] = basis;
            grad[1] = -th[0] * u * basis;
            return;
        }
        case RankModel::lavalette3: {
            const double basis = std::pow(n * r, -th[1]) * std::pow(n - r + 1.0, th[2]);
            grad[0] = basis;
            grad[1] = -th[0] * std::log(n * r) * basis;
            grad[2] = th[0] * std::log(n - r + 1.0) * basis;
            return;
        }
    }
}

std::vector<double> param_values(const FitResult& fit) {
    std::vector<double> th;
    th.reserve(fit.params.size());
    for (const auto& p : fit.params) th.push_back(p.value);
    return th;
}

double sse_of(RankModel model, std::span<const double> th, const RankedSeries& series) {
    const double n = static_cast<double>(series.n());
    double sse = 0.0;
    for (const auto& entry : series.pairs) {
        const double f = model_value(model, th, static_cast<double>(entry.rank), n);
        if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();
        const double e = entry.value - f;
        sse += e * e;
    }
    return sse;
}

}  // namespace

std::string to_string(RankModel model) {
    switch (model) {
        case RankModel::powerlaw: return "powerlaw";
        case RankModel::lavalette2: return "lavalette2";
        case RankModel::lavalette3: return "lavalette3";
    }
    return "?";
}

RankModel parse_rank_model(std::string_view name) {
    if (name == "powerlaw") return RankModel::powerlaw;
    if (name == "lavalette2") return RankModel::lavalette2;
    if (name == "lavalette3") return RankModel::lavalette3;
    throw ConfigError("unknown rank-size model: '" + std::string(name) + "'");
}

std::string to_string(FitSpace space) {
    return space == FitSpace::log_space ? "log" : "linear";
}

RankedSeries rank(std::span<const IdValue> items) {
    std::vector<IdValue> sorted(items.begin(), items.end());
    for (const auto& item : sorted) {
        if (!(item.value >= 0.0))
            throw DataError("rank: negative or NaN value for id '" + item.id + "'");
    }
    std::sort(sorted.begin(), sorted.end(), [](const IdValue& a, const IdValue& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.id < b.id;
    });

    RankedSeries series;
    int next_rank = 1;
    for (const auto& item : sorted) {
        if (item.value > 0.0) {
            series.pairs.push_back({next_rank++, item.id, item.value});
        }
    }
    if (series.pairs.empty()) throw DataError("rank: no positive values");
    // zeros sort behind every positive value; record them with the ranks
    // they would have held
    int zero_rank = next_rank;
    for (const auto& item : sorted) {
        if (item.value == 0.0) {
            series.excluded.push_back({zero_rank++, item.id, item.value});
        }
    }
    return series;
}

RankedSeries exclude_top(const RankedSeries& series, int k) {
    if (k < 0) throw ConfigError("exclude_top: k must be >= 0");
    if (k >= series.n())
        throw DataError("exclude_top: k = " + std::to_string(k) +
                        " leaves no data (n = " + std::to_string(series.n()) + ")");
    RankedSeries out;
    out.excluded = series.excluded;
    for (int i = 0; i < k; ++i) {
        const auto& e = series.pairs[i];
        out.excluded.push_back({e.rank, e.id, e.value});
    }
    out.pairs.reserve(series.n() - k);
    for (int i = k; i < series.n(); ++i) {
        const auto& e = series.pairs[i];
        out.pairs.push_back({i - k + 1, e.id, e.value});
    }
    return out;
}

FitResult fit_powerlaw(const RankedSeries& series) {
    if (series.n() < 3) throw DataError("fit_powerlaw: need n >= 3");
    const int n = series.n();
    Eigen::MatrixXd X(n, 2);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = std::log(static_cast<double>(series.pairs[i].rank));
    }
    const Ols f = ols(X, log_values(series));
    if (f.singular) throw DataError("fit_powerlaw: degenerate design matrix");

    FitResult result;
    result.model = RankModel::powerlaw;
    result.fit_space = FitSpace::log_space;
    result.n = n;
    result.excluded_count = static_cast<int>(series.excluded.size());
    const double n1 = std::exp(f.beta[0]);
    result.params = {
        {"N1", n1, n1 * f.std_error[0]},  // delta method through exp
        {"alpha", -f.beta[1], f.std_error[1]},
    };
    result.r_squared = f.r_squared;
    return result;
}

FitResult fit_lavalette2(const RankedSeries& series) {
    if (series.n() < 3) throw DataError("fit_lavalette2: need n >= 3");
    const int n = series.n();
    const double nd = static_cast<double>(n);
    Eigen::MatrixXd X(n, 2);
    for (int i = 0; i < n; ++i) {
        const double r = static_cast<double>(series.pairs[i].rank);
        X(i, 0) = 1.0;
        X(i, 1) = std::log(nd * r / (nd - r + 1.0));
    }
    const Ols f = ols(X, log_values(series));
    if (f.singular) throw DataError("fit_lavalette2: degenerate design matrix");

    FitResult result;
    result.model = RankModel::lavalette2;
    result.fit_space = FitSpace::log_space;
    result.n = n;
    result.excluded_count = static_cast<int>(series.excluded.size());
    const double kappa2 = std::exp(f.beta[0]);
    result.params = {
        {"kappa2", kappa2, kappa2 * f.std_error[0]},
        {"chi", -f.beta[1], f.std_error[1]},
    };
    result.r_squared = f.r_squared;
    return result;
}

FitResult fit_lavalette3(const RankedSeries& series) {
    if (series.n() < 4) throw DataError("fit_lavalette3: need n >= 4");
    const int n = series.n();
    const double nd = static_cast<double>(n);
    Eigen::MatrixXd X(n, 3);
    for (int i = 0; i < n; ++i) {
        const double r = static_cast<double>(series.pairs[i].rank);
        X(i, 0) = 1.0;
        X(i, 1) = std::log(nd * r);
        X(i, 2) = std::log(nd - r + 1.0);
    }
    const Ols f = ols(X, log_values(series));
    if (f.singular) {
        FitResult fallback = fit_lavalette2(series);
        fallback.collinear_fallback = true;
        return fallback;
    }

    FitResult result;
    result.model = RankModel::lavalette3;
    result.fit_space = FitSpace::log_space;
    result.n = n;
    result.excluded_count = static_cast<int>(series.excluded.size());
    const double a = std::exp(f.beta[0]);
    result.params = {
        {"A", a, a * f.std_error[0]},
        {"gamma", -f.beta[1], f.std_error[1]},
        {"beta", f.beta[2], f.std_error[2]},
    };
    result.r_squared = f.r_squared;
    return result;
}

FitResult refine_nonlinear(const RankedSeries& series, const FitResult& initial) {
    const RankModel model = initial.model;
    const int p = param_count(model);
    if (static_cast<int>(initial.params.size()) != p)
        throw ConfigError("refine_nonlinear: parameter count does not match model");
    if (series.n() <= p) throw DataError("refine_nonlinear: need n > parameter count");

    const int n = series.n();
    const double nd = static_cast<double>(n);

    std::vector<double> th = param_values(initial);
    for (double v : th) {
        if (!std::isfinite(v)) {
            FitResult out = initial;
            out.refine_diverged = true;
            return out;
        }
    }

    double sse = sse_of(model, th, series);
    if (!std::isfinite(sse)) {
        FitResult out = initial;
        out.refine_diverged = true;
        return out;
    }

    Eigen::MatrixXd jacobian(n, p);
    Eigen::VectorXd residual(n);
    std::vector<double> grad(p);

    auto fill = [&](std::span<const double> theta) {
        for (int i = 0; i < n; ++i) {
            const double r = static_cast<double>(series.pairs[i].rank);
            residual[i] = series.pairs[i].value - model_value(model, theta, r, nd);
            model_gradient(model, theta, r, nd, grad);
            for (int j = 0; j < p; ++j) jacobian(i, j) = grad[j];
        }
    };

    // standard LM damping schedule: lambda starts at 1e-3, x10 on a
    // rejected step, /10 on an accepted one. The iteration cap is sized for
    // badly scaled starting points: a 10x-scaled three-parameter start sits
    // in a region where the model underflows at most ranks and needs a few
    // hundred creeping steps before curvature information returns; well
    // initialized fits exit via the improvement rule long before the cap.
    double lambda = 1e-3;
    constexpr int kMaxIter = 1000;
    constexpr double kRelTol = 1e-10;
    constexpr double kLambdaMax = 1e15;

    for (int iter = 0; iter < kMaxIter && lambda < kLambdaMax; ++iter) {
        fill(th);
        const Eigen::MatrixXd jtj = jacobian.transpose() * jacobian;
        const Eigen::VectorXd jtr = jacobian.transpose() * residual;

        Eigen::MatrixXd damped = jtj;
        for (int j = 0; j < p; ++j) {
            const double d = jtj(j, j);
            damped(j, j) += lambda * (d > 0.0 ? d : 1.0);
        }
        const Eigen::VectorXd step = damped.ldlt().solve(jtr);

        std::vector<double> trial(th);
        for (int j = 0; j < p; ++j) trial[j] += step[j];
        const double trial_sse = sse_of(model, trial, series);

        if (std::isfinite(trial_sse) && trial_sse < sse) {
            const double improvement = sse - trial_sse;
            th = std::move(trial);
            const bool converged = improvement <= kRelTol * std::max(sse, 1e-300);
            sse = trial_sse;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (converged) break;
        } else {
            lambda *= 10.0;
        }
    }

    FitResult result;
    result.model = model;
    result.fit_space = FitSpace::linear_space;
    result.n = n;
    result.excluded_count = initial.excluded_count;
    result.collinear_fallback = initial.collinear_fallback;

    // covariance at the optimum: s^2 (J^T J)^-1
    fill(th);
    const Eigen::MatrixXd jtj = jacobian.transpose() * jacobian;
    const double s2 = sse / static_cast<double>(n - p);
    Eigen::MatrixXd cov =
        s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();

    result.params.reserve(p);
    for (int j = 0; j < p; ++j) {
        const double se = std::sqrt(std::max(0.0, cov(j, j)));
        result.params.push_back({initial.params[j].name, th[j], se});
    }
    result.r_squared = r_squared_of(sse, [&] {
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) y[i] = series.pairs[i].value;
        return y;
    }());
    return result;
}

double evaluate_model(const FitResult& fit, double r) {
    const std::vector<double> th = param_values(fit);
    if (fit.model == RankModel::powerlaw) {
        if (!(r >= 1.0)) throw DataError("evaluate_model: rank must be >= 1");
    } else {
        if (!(r >= 1.0) || !(r <= static_cast<double>(fit.n)))
            throw DataError("evaluate_model: rank outside [1, N]");
    }
    return model_value(fit.model, th, r, static_cast<double>(fit.n));
}

double rank_law_value(RankModel model, std::span<const double> params, double r, double n) {
    if (static_cast<int>(params.size()) != param_count(model))
        throw ConfigError("rank_law_value: parameter count does not match model");
    return model_value(model, params, r, n);
}

double sse_linear(const FitResult& fit, const RankedSeries& series) {
    const std::vector<double> th = param_values(fit);
    return sse_of(fit.model, th, series);
}

std::int64_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

Histogram histogram(std::span<const double> values, double bin_width, double origin,
                    std::optional<std::int64_t> display_cap) {
    if (values.empty()) throw DataError("histogram: empty value vector");
    if (!(bin_width > 0.0)) throw ConfigError("histogram: bin width must be positive");

    // work out the bin span in floating point first: casting an oversized
    // index to an integer would overflow before the size guard could fire
    auto bin_index = [&](double v) { return std::floor((v - origin) / bin_width); };
    double lo_d = bin_index(values[0]);
    double hi_d = lo_d;
    for (double v : values) {
        if (!std::isfinite(v)) throw DataError("histogram: non-finite value");
        lo_d = std::min(lo_d, bin_index(v));
        hi_d = std::max(hi_d, bin_index(v));
    }
    if (hi_d - lo_d + 1.0 > static_cast<double>(kMaxBins))
        throw ConfigError("histogram: bin width too small for value range");
    const auto lo = static_cast<std::int64_t>(lo_d);
    const std::int64_t bins = static_cast<std::int64_t>(hi_d) - lo + 1;
    auto bin_of = [&](double v) { return static_cast<std::int64_t>(bin_index(v)); };

    Histogram h;
    h.display_cap = display_cap;
    h.edges.resize(bins + 1);
    for (std::int64_t i = 0; i <= bins; ++i)
        h.edges[i] = origin + static_cast<double>(lo + i) * bin_width;
    h.counts.assign(bins, 0);
    for (double v : values) ++h.counts[bin_of(v) - lo];
    return h;
}

Histogram histogram(std::span<const double> values, std::vector<double> edges,
                    std::optional<std::int64_t> display_cap) {
    if (values.empty()) throw DataError("histogram: empty value vector");
    if (edges.size() < 2) throw ConfigError("histogram: need at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1]))
            throw ConfigError("histogram: edges must be strictly increasing");
    }

    Histogram h;
    h.display_cap = display_cap;
    h.counts.assign(edges.size() - 1, 0);
    for (double v : values) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        if (it == edges.begin() || it == edges.end())
            throw DataError("histogram: value outside the supplied edge range");
        ++h.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
    h.edges = std::move(edges);
    return h;
}

}  // namespace ineq
