// Copyright 2026 The ycurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/estimators.hpp"
#include "ycurve/models.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

enum class ForecastScheme { in_sample, rolling_oos };

inline std::string_view to_string(ForecastScheme scheme) {
  return scheme == ForecastScheme::in_sample ? "in_sample" : "rolling_oos";
}

inline std::optional<ForecastScheme> parse_forecast_scheme(std::string_view text) {
  if (text == "in_sample") return ForecastScheme::in_sample;
  if (text == "rolling_oos") return ForecastScheme::rolling_oos;
  return std::nullopt;
}

enum class WindowStyle { expanding, fixed };

/// Actual and predicted growth, both indexed at the quarter the growth
/// window starts (predictor quarter plus the model's pairing lead).
struct ForecastReport {
  Series actual;
  Series predicted;
  ForecastScheme scheme = ForecastScheme::in_sample;
  int min_train = 0;
  double r_squared_oos = 0.0;  // in-sample R² for the in_sample scheme
  double rmse = 0.0;
  std::vector<QuarterId> origins;  // predictor quarter of each forecast row
};

namespace detail {

inline double root_mean_square(const std::vector<double>& errors) {
  double acc = 0.0;
  for (double e : errors) acc += e * e;
  return std::sqrt(acc / static_cast<double>(errors.size()));
}

}  // namespace detail

inline ForecastReport in_sample_forecast(const Dataset& ds, const GrowthModelSpec& spec) {
  const auto sys = build_growth_regression(ds, spec);
  const auto fit = ols_fit(sys.y, sys.x, {"intercept", "spread"}, sys.index, to_string(spec.kind));
  const int lead = growth_lead(spec.kind);

  std::vector<Observation> actual;
  std::vector<Observation> predicted;
  std::vector<double> errors;
  for (std::size_t r = 0; r < sys.y.size(); ++r) {
    const QuarterId target = quarter_add(sys.index[r], lead);
    actual.push_back({target, sys.y[r]});
    predicted.push_back({target, fit.fitted[r]});
    errors.push_back(sys.y[r] - fit.fitted[r]);
  }
  ForecastReport report;
  report.actual = Series("actual", Unit::percent_growth, std::move(actual));
  report.predicted = Series("predicted", Unit::percent_growth, std::move(predicted));
  report.scheme = ForecastScheme::in_sample;
  report.r_squared_oos = fit.r_squared;
  report.rmse = detail::root_mean_square(errors);
  report.origins = sys.index;
  return report;
}

/// Pseudo out-of-sample forecasts. The forecaster standing at predictor
/// quarter t sees only observations dated t or earlier, so a training row
/// s is usable only once its whole growth window has been realized:
/// s + lead + k <= t. Each origin needs at least min_train such rows.
inline ForecastReport rolling_oos_forecast(const Dataset& ds, const GrowthModelSpec& spec,
                                           int min_train,
                                           WindowStyle window = WindowStyle::expanding) {
  if (min_train < 8) throw DomainError("evaluate", "min_train must be >= 8");
  const auto sys = build_growth_regression(ds, spec);
  const int lead = growth_lead(spec.kind);
  const std::size_t n = sys.y.size();
  const std::size_t realization_gap = static_cast<std::size_t>(lead + spec.horizon_k);
  const std::size_t first_origin = static_cast<std::size_t>(min_train) + realization_gap - 1;
  if (n < first_origin + 4) {
    throw InsufficientDataError(
        "evaluate", std::to_string(n) + " rows; rolling forecasts with min_train=" +
                        std::to_string(min_train) + " and a " + std::to_string(realization_gap) +
                        "-quarter realization gap need at least " +
                        std::to_string(first_origin + 4));
  }

  std::vector<Observation> actual;
  std::vector<Observation> predicted;
  std::vector<double> errors;
  double sse = 0.0;
  double benchmark_sse = 0.0;
  ForecastReport report;
  for (std::size_t r = first_origin; r < n; ++r) {
    const std::size_t train_end = r - realization_gap + 1;  // exclusive
    const std::size_t train_begin =
        window == WindowStyle::fixed ? train_end - static_cast<std::size_t>(min_train) : 0;
    const std::size_t m = train_end - train_begin;

    Matrix x(m, 2);
    std::vector<double> y(m);
    std::vector<QuarterId> index(m);
    double train_mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      x(i, 0) = 1.0;
      x(i, 1) = sys.x(train_begin + i, 1);
      y[i] = sys.y[train_begin + i];
      index[i] = sys.index[train_begin + i];
      train_mean += y[i];
    }
    train_mean /= static_cast<double>(m);

    RegressionFit fit;
    try {
      fit = ols_fit(y, x, {"intercept", "spread"}, index, to_string(spec.kind));
    } catch (const SingularityError& e) {
      throw SingularityError("evaluate", "training window for origin " +
                                             to_string(sys.index[r]) + " is singular (" +
                                             e.what() + ")");
    }
    const double forecast = fit.coefficients[0] + fit.coefficients[1] * sys.x(r, 1);
    const double error = sys.y[r] - forecast;
    sse += error * error;
    benchmark_sse += (sys.y[r] - train_mean) * (sys.y[r] - train_mean);
    errors.push_back(error);

    const QuarterId target = quarter_add(sys.index[r], lead);
    actual.push_back({target, sys.y[r]});
    predicted.push_back({target, forecast});
    report.origins.push_back(sys.index[r]);
  }

  report.actual = Series("actual", Unit::percent_growth, std::move(actual));
  report.predicted = Series("predicted", Unit::percent_growth, std::move(predicted));
  report.scheme = ForecastScheme::rolling_oos;
  report.min_train = min_train;
  if (benchmark_sse > 0.0) {
    report.r_squared_oos = 1.0 - sse / benchmark_sse;
  } else {
    report.r_squared_oos = sse == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
  }
  report.rmse = detail::root_mean_square(errors);
  return report;
}

struct ClassificationMetrics {
  std::optional<double> hit_rate;          // absent when no recession quarters
  std::optional<double> false_alarm_rate;  // absent when no expansion quarters
  std::size_t n_recession_quarters = 0;
  std::size_t n_quarters = 0;
};

inline constexpr double kDefaultThreshold = 0.5;

/// Signals are probabilities >= threshold. `actual` must cover every quarter
/// of the fitted probabilities (see lead_aligned_indicator).
inline ClassificationMetrics recession_classification(const ProbitFit& fit, const Series& actual,
                                                      double threshold = kDefaultThreshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("evaluate", "threshold must lie in (0,1)");
  }
  if (actual.unit() != Unit::indicator) {
    throw DomainError("evaluate", "'" + actual.name() + "' must have unit indicator");
  }
  std::size_t hits = 0;
  std::size_t alarms = 0;
  ClassificationMetrics m;
  for (const auto& o : fit.fitted_probabilities.observations()) {
    const auto truth = actual.at(o.quarter);
    if (!truth) {
      throw DomainError("evaluate", "no actual indicator at " + to_string(o.quarter));
    }
    const bool signal = o.value >= threshold;
    ++m.n_quarters;
    if (*truth == 1.0) {
      ++m.n_recession_quarters;
      if (signal) ++hits;
    } else if (signal) {
      ++alarms;
    }
  }
  const std::size_t expansions = m.n_quarters - m.n_recession_quarters;
  if (m.n_recession_quarters > 0) {
    m.hit_rate = static_cast<double>(hits) / static_cast<double>(m.n_recession_quarters);
  }
  if (expansions > 0) {
    m.false_alarm_rate = static_cast<double>(alarms) / static_cast<double>(expansions);
  }
  return m;
}

}  // namespace ycurve
