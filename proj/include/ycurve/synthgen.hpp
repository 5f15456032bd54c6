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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/quarter.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

/// SplitMix64 (Steele, Lea & Flood). The whole stream is fixed by the seed:
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1): ((next() >> 11) + 0.5) * 2^-53.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Box–Muller cosine branch; consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
  }

 private:
  std::uint64_t state_;
};

struct SpreadProcess {
  double mean = 1.0;
  double persistence = 0.7;
  double shock_sigma = 1.0;
};

struct RecessionRule {
  double trigger_spread = -0.5;
  int lead = 4;
  double flip_prob = 0.05;
};

struct ShortRateProcess {
  double mean = 8.0;
  double persistence = 0.9;
  double shock_sigma = 0.5;
};

/// Ground truth for a synthetic economy. Growth over the growth_horizon
/// quarters starting at t + growth_lead equals true_a + true_b * spread(t)
/// plus N(0, noise_sigma²) noise.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  int n_quarters = 32;
  QuarterId start{2010, 1};
  double true_b = 1.0445;
  double true_a = 1.0;
  double noise_sigma = 0.5;
  SpreadProcess spread;
  RecessionRule recession;
  ShortRateProcess short_rate;
  int growth_horizon = 4;
  int growth_lead = 1;
  double initial_gdp = 100.0;
};

inline constexpr int kMinScenarioQuarters = 16;

// Yields are quantized to this grid so that long = short + spread and
// long - short = spread hold exactly in floating point.
inline constexpr double kYieldGrid = 0x1.0p-12;

inline void validate(const ScenarioSpec& spec) {
  auto fail = [](const std::string& what) { throw ValidationError("synthgen", what); };
  if (spec.n_quarters < kMinScenarioQuarters) {
    fail("n_quarters must be >= " + std::to_string(kMinScenarioQuarters) + ", got " +
         std::to_string(spec.n_quarters));
  }
  if (!is_valid(spec.start)) fail("start quarter is invalid");
  if (!(spec.noise_sigma >= 0.0)) fail("noise_sigma must be >= 0");
  if (!(spec.spread.persistence >= 0.0 && spec.spread.persistence < 1.0)) {
    fail("spread persistence must lie in [0,1)");
  }
  if (!(spec.spread.shock_sigma >= 0.0)) fail("spread shock_sigma must be >= 0");
  if (!(spec.short_rate.persistence >= 0.0 && spec.short_rate.persistence < 1.0)) {
    fail("short-rate persistence must lie in [0,1)");
  }
  if (!(spec.short_rate.shock_sigma >= 0.0)) fail("short-rate shock_sigma must be >= 0");
  if (!(spec.recession.flip_prob >= 0.0 && spec.recession.flip_prob < 0.5)) {
    fail("flip_prob must lie in [0,0.5)");
  }
  if (spec.recession.lead < 0) fail("recession lead must be >= 0");
  if (spec.growth_horizon < 1) fail("growth_horizon must be >= 1");
  if (spec.growth_lead < 0) fail("growth_lead must be >= 0");
  if (!(spec.initial_gdp > 0.0)) fail("initial_gdp must be > 0");
  for (double v : {spec.true_a, spec.true_b, spec.spread.mean, spec.short_rate.mean,
                   spec.recession.trigger_spread}) {
    if (!std::isfinite(v)) fail("scenario parameters must be finite");
  }
}

inline std::string describe(const ScenarioSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "seed=" << spec.seed << " n_quarters=" << spec.n_quarters
     << " start=" << to_string(spec.start) << " true_a=" << spec.true_a
     << " true_b=" << spec.true_b << " noise_sigma=" << spec.noise_sigma
     << " spread_mean=" << spec.spread.mean << " persistence=" << spec.spread.persistence
     << " shock_sigma=" << spec.spread.shock_sigma
     << " trigger_spread=" << spec.recession.trigger_spread
     << " recession_lead=" << spec.recession.lead << " flip_prob=" << spec.recession.flip_prob
     << " growth_horizon=" << spec.growth_horizon << " growth_lead=" << spec.growth_lead;
  return os.str();
}

/// Deterministic synthetic dataset with series "long", "short" (percent per
/// annum), "gdp" (level) and "recession" (indicator).
///
/// Draw order from one SplitMix64 stream seeded with spec.seed:
///   1. two normals for the stationary start of the spread and short rate;
///   2. per quarter after the first, one normal for the spread shock then one
///      for the short-rate shock;
///   3. one normal per growth window, in time order;
///   4. one uniform per recession label, in time order.
/// A warm-up of max(recession lead, growth lead) quarters precedes start so
/// every emitted quarter has a label and a growth driver.
inline Dataset generate(const ScenarioSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  const int burn = std::max(spec.recession.lead, spec.growth_lead);
  const int total = burn + spec.n_quarters;
  const int horizon = spec.growth_horizon;
  auto quantize = [](double v) { return std::nearbyint(v / kYieldGrid) * kYieldGrid; };

  const auto& sp = spec.spread;
  const auto& sr = spec.short_rate;
  double spread_state = sp.mean + sp.shock_sigma / std::sqrt(1.0 - sp.persistence * sp.persistence) * rng.normal();
  double short_state = sr.mean + sr.shock_sigma / std::sqrt(1.0 - sr.persistence * sr.persistence) * rng.normal();

  std::vector<double> spread(total);
  std::vector<double> short_yield(total);
  std::vector<double> long_yield(total);
  for (int i = 0; i < total; ++i) {
    if (i > 0) {
      spread_state = sp.mean + sp.persistence * (spread_state - sp.mean) + sp.shock_sigma * rng.normal();
      short_state = sr.mean + sr.persistence * (short_state - sr.mean) + sr.shock_sigma * rng.normal();
    }
    short_yield[i] = quantize(short_state);
    spread[i] = quantize(spread_state);
    long_yield[i] = short_yield[i] + spread[i];
  }

  // Window starting at j: gdp(j + h) = gdp(j) * (1 + g(j)/100), so h
  // interleaved chains, each seeded on a smooth path at the base growth.
  std::vector<double> gdp(total, 0.0);
  for (int j = burn; j < std::min(total, burn + horizon); ++j) {
    gdp[j] = spec.initial_gdp *
             std::pow(1.0 + spec.true_a / 100.0, static_cast<double>(j - burn) / horizon);
  }
  for (int j = burn; j + horizon < total; ++j) {
    const double growth =
        spec.true_a + spec.true_b * spread[j - spec.growth_lead] + spec.noise_sigma * rng.normal();
    if (!(growth > -100.0)) {
      throw ValidationError("synthgen", "generated growth below -100% drives GDP nonpositive");
    }
    gdp[j + horizon] = gdp[j] * (1.0 + growth / 100.0);
  }

  std::vector<double> recession(total, 0.0);
  for (int i = burn; i < total; ++i) {
    const bool triggered = spread[i - spec.recession.lead] < spec.recession.trigger_spread;
    const bool flipped = rng.uniform() < spec.recession.flip_prob;
    recession[i] = (triggered != flipped) ? 1.0 : 0.0;
  }

  auto emit = [&](const std::string& name, Unit unit, const std::vector<double>& values) {
    std::vector<Observation> obs;
    obs.reserve(spec.n_quarters);
    for (int i = burn; i < total; ++i) obs.push_back({quarter_add(spec.start, i - burn), values[i]});
    return Series(name, unit, std::move(obs));
  };
  return align({emit("long", Unit::percent_per_annum, long_yield),
                emit("short", Unit::percent_per_annum, short_yield),
                emit("gdp", Unit::level, gdp), emit("recession", Unit::indicator, recession)});
}

/// The generated spread actually used, long - short, over the emitted range.
inline Series generated_spread(const Dataset& ds) {
  const auto lv = ds.get("long").observations();
  const auto sv = ds.get("short").observations();
  std::vector<Observation> out;
  for (std::size_t i = 0; i < lv.size(); ++i) out.push_back({lv[i].quarter, lv[i].value - sv[i].value});
  return Series("spread", Unit::percent_growth, std::move(out));
}

}  // namespace ycurve
