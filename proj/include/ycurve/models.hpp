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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/estimators.hpp"
#include "ycurve/numerics.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

// ---------------------------------------------------------------------------
// Spreads and curve shape

struct SpreadSpec {
  std::string long_series = "long";
  std::string short_series = "short";
};

enum class CurveShape { normal, flat, inverted };

inline std::string_view to_string(CurveShape shape) {
  switch (shape) {
    case CurveShape::normal: return "normal";
    case CurveShape::flat: return "flat";
    case CurveShape::inverted: return "inverted";
  }
  return "unknown";
}

inline constexpr double kDefaultFlatBand = 0.25;

/// Long minus short yield, in percentage points.
inline Series compute_spread(const Dataset& ds, const SpreadSpec& spec) {
  if (spec.long_series == spec.short_series) {
    throw DomainError("yield_models", "spread needs two distinct series, got '" +
                                          spec.long_series + "' twice");
  }
  const Series& long_rate = ds.get(spec.long_series);
  const Series& short_rate = ds.get(spec.short_series);
  for (const Series* s : {&long_rate, &short_rate}) {
    if (s->unit() != Unit::percent_per_annum) {
      throw DomainError("yield_models", "'" + s->name() + "' must have unit percent_per_annum");
    }
  }
  std::vector<Observation> out;
  out.reserve(long_rate.size());
  const auto lv = long_rate.observations();
  const auto sv = short_rate.observations();
  for (std::size_t i = 0; i < lv.size(); ++i) out.push_back({lv[i].quarter, lv[i].value - sv[i].value});
  return Series("SPREAD(" + spec.long_series + "-" + spec.short_series + ")", Unit::percent_growth,
                std::move(out));
}

inline CurveShape classify_curve(double spread_value, double flat_band = kDefaultFlatBand) {
  if (!(flat_band >= 0.0)) throw DomainError("yield_models", "flat band must be >= 0");
  if (spread_value > flat_band) return CurveShape::normal;
  if (spread_value < -flat_band) return CurveShape::inverted;
  return CurveShape::flat;
}

// ---------------------------------------------------------------------------
// Growth regressions

enum class GrowthModel {
  haubrich_pct,   // k-quarter % growth from t, on spread(t)
  harvey_window,  // % growth from t+1 to t+1+k, on spread(t)
  dotsey_log,     // (400/k) ln(gdp(t+k)/gdp(t)), on spread(t)
  turkish_next,   // next quarter's k-quarter % growth, on spread(t)
};

inline std::string_view to_string(GrowthModel kind) {
  switch (kind) {
    case GrowthModel::haubrich_pct: return "haubrich_pct";
    case GrowthModel::harvey_window: return "harvey_window";
    case GrowthModel::dotsey_log: return "dotsey_log";
    case GrowthModel::turkish_next: return "turkish_next";
  }
  return "unknown";
}

inline std::optional<GrowthModel> parse_growth_model(std::string_view text) {
  for (auto kind : {GrowthModel::haubrich_pct, GrowthModel::harvey_window, GrowthModel::dotsey_log,
                    GrowthModel::turkish_next}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

struct GrowthModelSpec {
  GrowthModel kind = GrowthModel::turkish_next;
  int horizon_k = 4;
  std::string gdp_series = "gdp";
  SpreadSpec spread;
};

/// Quarters between the predictor quarter t and the start of the growth
/// window the model pairs with it.
constexpr int growth_lead(GrowthModel kind) {
  return (kind == GrowthModel::harvey_window || kind == GrowthModel::turkish_next) ? 1 : 0;
}

/// Growth of the GDP series under the model's transform, indexed at the
/// window's start quarter.
inline Series growth_series(const Dataset& ds, const GrowthModelSpec& spec) {
  const Series& gdp = ds.get(spec.gdp_series);
  return spec.kind == GrowthModel::dotsey_log ? annualized_log_growth(gdp, spec.horizon_k)
                                              : pct_growth(gdp, spec.horizon_k);
}

struct RegressionSystem {
  std::vector<double> y;
  Matrix x;
  std::vector<QuarterId> index;  // predictor quarter t of each row
};

inline RegressionSystem build_growth_regression(const Dataset& ds, const GrowthModelSpec& spec) {
  if (spec.horizon_k < 1) throw DomainError("yield_models", "horizon_k must be >= 1");
  const int lead = growth_lead(spec.kind);
  const std::int64_t consumed = lead + spec.horizon_k;
  const std::int64_t rows = static_cast<std::int64_t>(ds.length()) - consumed;
  if (rows < 3) {
    throw InsufficientDataError(
        "yield_models", std::string(to_string(spec.kind)) + " with k=" +
                            std::to_string(spec.horizon_k) + " consumes " +
                            std::to_string(consumed) + " quarters; dataset has " +
                            std::to_string(ds.length()) + ", leaving fewer than 3 rows");
  }
  const Series spread = compute_spread(ds, spec.spread);
  const Series growth = growth_series(ds, spec);

  RegressionSystem sys{{}, Matrix(static_cast<std::size_t>(rows), 2), {}};
  for (std::int64_t r = 0; r < rows; ++r) {
    const QuarterId t = ds.quarter(static_cast<std::size_t>(r));
    sys.y.push_back(*growth.at(quarter_add(t, lead)));
    sys.x(r, 0) = 1.0;
    sys.x(r, 1) = *spread.at(t);
    sys.index.push_back(t);
  }
  return sys;
}

inline RegressionFit fit_growth_model(const Dataset& ds, const GrowthModelSpec& spec) {
  const auto sys = build_growth_regression(ds, spec);
  return ols_fit(sys.y, sys.x, {"intercept", "spread"}, sys.index, to_string(spec.kind));
}

/// R² gained by adding the spread to a regression of growth on an intercept
/// and `lags` lags of the dependent variable. Both models share one sample.
inline double marginal_contribution(const Dataset& ds, const GrowthModelSpec& spec, int lags = 1) {
  if (lags < 1) throw DomainError("yield_models", "marginal contribution needs lags >= 1");
  const auto sys = build_growth_regression(ds, spec);
  const std::size_t n = sys.y.size();
  const std::size_t ul = static_cast<std::size_t>(lags);
  if (n <= ul + 3) {
    throw InsufficientDataError("yield_models", "marginal contribution: " + std::to_string(n) +
                                                    " rows cannot support " +
                                                    std::to_string(lags) + " lags");
  }
  const std::size_t m = n - ul;
  Matrix restricted(m, 1 + ul);
  Matrix full(m, 2 + ul);
  std::vector<double> y(m);
  std::vector<QuarterId> index(m);
  std::vector<std::string> restricted_names{"intercept"};
  for (int l = 1; l <= lags; ++l) restricted_names.push_back("growth_lag" + std::to_string(l));
  std::vector<std::string> full_names = restricted_names;
  full_names.push_back("spread");

  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t src = r + ul;
    y[r] = sys.y[src];
    index[r] = sys.index[src];
    restricted(r, 0) = full(r, 0) = 1.0;
    for (std::size_t l = 1; l <= ul; ++l) restricted(r, l) = full(r, l) = sys.y[src - l];
    full(r, 1 + ul) = sys.x(src, 1);
  }
  const auto base = ols_fit(y, restricted, restricted_names, index, "growth_baseline");
  const auto with_spread = ols_fit(y, full, full_names, index, "growth_with_spread");
  return with_spread.r_squared - base.r_squared;
}

// ---------------------------------------------------------------------------
// Recession probits

struct ProbitModelSpec {
  std::string recession_series = "recession";
  int lead_h = 4;
  SpreadSpec spread;
  std::vector<std::string> extra_regressors;
};

inline constexpr int kMaxRecessionLead = 8;

struct ProbitSystem {
  std::vector<double> y;
  Matrix x;
  std::vector<QuarterId> index;
  std::vector<std::string> names;
};

inline ProbitSystem build_recession_probit(const Dataset& ds, const ProbitModelSpec& spec) {
  if (spec.lead_h < 0 || spec.lead_h > kMaxRecessionLead) {
    throw DomainError("yield_models", "recession lead must be in [0, " +
                                          std::to_string(kMaxRecessionLead) + "]");
  }
  const Series& recession = ds.get(spec.recession_series);
  if (recession.unit() != Unit::indicator) {
    throw DomainError("yield_models", "'" + recession.name() + "' must have unit indicator");
  }
  std::vector<const Series*> extras;
  for (const auto& name : spec.extra_regressors) extras.push_back(&ds.get(name));
  const Series spread = compute_spread(ds, spec.spread);

  const std::int64_t rows = static_cast<std::int64_t>(ds.length()) - spec.lead_h;
  const std::size_t cols = 2 + extras.size();
  if (rows <= static_cast<std::int64_t>(cols)) {
    throw InsufficientDataError("yield_models", "probit with lead " + std::to_string(spec.lead_h) +
                                                    " leaves " + std::to_string(std::max<std::int64_t>(rows, 0)) +
                                                    " rows for " + std::to_string(cols) +
                                                    " coefficients");
  }
  ProbitSystem sys{{}, Matrix(static_cast<std::size_t>(rows), cols), {}, {"intercept", "spread"}};
  for (const auto& name : spec.extra_regressors) sys.names.push_back(name);
  for (std::int64_t r = 0; r < rows; ++r) {
    const QuarterId t = ds.quarter(static_cast<std::size_t>(r));
    sys.y.push_back(*recession.at(quarter_add(t, spec.lead_h)));
    sys.x(r, 0) = 1.0;
    sys.x(r, 1) = *spread.at(t);
    for (std::size_t e = 0; e < extras.size(); ++e) sys.x(r, 2 + e) = *extras[e]->at(t);
    sys.index.push_back(t);
  }
  return sys;
}

/// Probit of recession(t + lead) on spread(t) and any extra regressors at t.
inline ProbitFit fit_recession_probit(const Dataset& ds, const ProbitModelSpec& spec,
                                      const ProbitOptions& options = {}) {
  auto sys = build_recession_probit(ds, spec);
  return probit_fit(sys.y, sys.x, std::move(sys.names), sys.index,
                    "recession_probit_h" + std::to_string(spec.lead_h), options);
}

/// The recession indicator re-indexed at predictor quarters, so that it
/// lines up with a fit's fitted_probabilities.
inline Series lead_aligned_indicator(const Dataset& ds, const ProbitModelSpec& spec) {
  const Series& recession = ds.get(spec.recession_series);
  return shift(recession, -spec.lead_h)
      .restricted(ds.first(), quarter_add(ds.last(), -spec.lead_h));
}

}  // namespace ycurve
