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

// Acceptance suite: one PASS/FAIL line per criterion, with timing.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "ycurve/cli.hpp"

namespace {

using namespace ycurve;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<QuarterId> quarters(std::size_t n) {
  std::vector<QuarterId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(quarter_add({2000, 1}, static_cast<std::int64_t>(i)));
  return out;
}

GrowthModelSpec growth_spec(GrowthModel kind, int k = 4) {
  GrowthModelSpec spec;
  spec.kind = kind;
  spec.horizon_k = k;
  return spec;
}

ScenarioSpec strong_regime(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.n_quarters = 200;
  spec.spread.mean = -0.5;
  spec.recession.trigger_spread = -0.5;
  spec.recession.flip_prob = 0.05;
  spec.recession.lead = 4;
  return spec;
}

Outcome coefficient_recovery() {
  ScenarioSpec exact;
  exact.seed = 1;
  exact.n_quarters = 32;
  exact.true_b = 1.0445;
  exact.noise_sigma = 0.0;
  const auto fit = fit_growth_model(generate(exact), growth_spec(GrowthModel::turkish_next));
  const double err = std::abs(fit.coefficients[1] - 1.0445);

  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    ScenarioSpec noisy = exact;
    noisy.seed = seed;
    noisy.noise_sigma = 1.0;
    const auto f = fit_growth_model(generate(noisy), growth_spec(GrowthModel::turkish_next));
    if (std::abs(f.coefficients[1] - 1.0445) <= 2.0 * f.std_errors[1]) ++covered;
  }
  return {err <= 1e-9 && covered >= 95,
          "noiseless |b-1.0445| " + fmt("%.2e", err) + ", within 2 se in " +
              std::to_string(covered) + "/100 noisy seeds"};
}

Outcome unit_slope() {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.n_quarters = 140;
    spec.true_b = 1.0;
    spec.growth_lead = 0;  // growth over [t, t+4] driven by spread(t)
    total += fit_growth_model(generate(spec), growth_spec(GrowthModel::haubrich_pct)).coefficients[1];
  }
  const double mean = total / 100.0;
  return {mean >= 0.9 && mean <= 1.1, "mean slope " + fmt("%.4f", mean) + " over 100 seeds"};
}

Outcome out_of_sample_share() {
  // Var(b*spread) / Var(growth) = 0.35 with b = 1 and a stationary AR(1)
  // spread of variance shock^2 / (1 - rho^2).
  const double rho = 0.5;
  const double spread_var = 1.0 / (1.0 - rho * rho);
  const double noise = std::sqrt(spread_var * 0.65 / 0.35);
  std::vector<double> r2;
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.n_quarters = 140;
    spec.true_b = 1.0;
    spec.spread.persistence = rho;
    spec.noise_sigma = noise;
    const double v = rolling_oos_forecast(generate(spec), growth_spec(GrowthModel::harvey_window), 40)
                         .r_squared_oos;
    r2.push_back(v);
    if (std::abs(v - 0.35) <= 0.15) ++within;
  }
  const double med = median(r2);
  double mean = 0.0;
  for (double v : r2) mean += v;
  mean /= static_cast<double>(r2.size());
  return {std::abs(mean - 0.35) <= 0.15 && std::abs(med - 0.35) <= 0.05,
          "mean r2 " + fmt("%.4f", mean) + ", median " + fmt("%.4f", med) + ", " +
              std::to_string(within) + "/50 single seeds within 0.15"};
}

Outcome ols_oracle() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> rows(10, 200);
  std::uniform_int_distribution<int> regressors(2, 4);
  double worst_coef = 0.0;
  double worst_orth = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rows(rng));
    const auto k = static_cast<std::size_t>(regressors(rng)) + 1;
    Matrix x(n, k);
    std::vector<std::vector<double>> xr(n, std::vector<double>(k));
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      xr[r][0] = x(r, 0) = 1.0;
      y[r] = 0.5;
      for (std::size_t c = 1; c < k; ++c) {
        xr[r][c] = x(r, c) = 3.0 * z(rng) + static_cast<double>(c);
        y[r] += (0.7 - 0.3 * static_cast<double>(c)) * x(r, c);
      }
      y[r] += z(rng);
    }
    std::vector<std::string> names{"intercept"};
    for (std::size_t c = 1; c < k; ++c) names.push_back("x" + std::to_string(c));
    const auto fit = ols_fit(y, x, names, quarters(n));
    const auto expected = oracle::normal_equations(xr, y);
    for (std::size_t c = 0; c < k; ++c) {
      worst_coef = std::max(worst_coef, std::abs(fit.coefficients[c] - expected[c]));
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += x(r, c) * fit.residuals.values()[r];
      worst_orth = std::max(worst_orth, std::abs(dot));
    }
  }
  return {worst_coef < 1e-10 && worst_orth < 1e-8,
          "max coefficient gap " + fmt("%.2e", worst_coef) + ", max |X'e| " + fmt("%.2e", worst_orth)};
}

std::vector<ProbitFit>& probit_fits() {
  static std::vector<ProbitFit> fits;
  return fits;
}

Outcome probit_oracle() {
  std::mt19937_64 rng(505);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u;
  double worst_coef = 0.0;
  double worst_ll = 0.0;
  double worst_grad = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 50;
    std::vector<double> xs(n);
    std::vector<double> y(n);
    Matrix design(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = z(rng);
      y[i] = u(rng) < oracle::cdf_erfc(0.3 + 0.8 * xs[i]) ? 1.0 : 0.0;
      design(i, 0) = 1.0;
      design(i, 1) = xs[i];
    }
    const auto fit = probit_fit(y, design, {"intercept", "x"}, quarters(n));
    probit_fits().push_back(fit);
    const auto grid = oracle::probit_grid_search(y, xs);
    worst_coef = std::max({worst_coef, std::abs(fit.coefficients[0] - grid.a),
                           std::abs(fit.coefficients[1] - grid.b)});
    worst_ll = std::max(worst_ll, grid.loglik - fit.log_likelihood);

    for (int point = 0; point < 5; ++point) {
      const std::vector<double> beta{z(rng), z(rng)};
      const auto grad = probit_gradient(y, design, beta);
      for (std::size_t j = 0; j < 2; ++j) {
        const double h = 1e-6;
        auto up = beta;
        auto down = beta;
        up[j] += h;
        down[j] -= h;
        const double fd = (probit_log_likelihood(y, design, up) - probit_log_likelihood(y, design, down)) / (2 * h);
        worst_grad = std::max(worst_grad, std::abs(fd - grad[j]) / std::max(1.0, std::abs(grad[j])));
      }
    }
  }
  return {worst_coef <= 2e-3 && worst_ll <= 1e-8 && worst_grad <= 1e-5,
          "max coefficient gap " + fmt("%.2e", worst_coef) + ", oracle loglik excess " +
              fmt("%.2e", worst_ll) + ", max gradient rel. error " + fmt("%.2e", worst_grad)};
}

Outcome gaussian_kernel() {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -8.0 + 16.0 * static_cast<double>(i) / 999.0;
  const auto expected = oracle::simpson_cdf(xs);
  double worst = 0.0;
  double worst_sym = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(std_normal_cdf(xs[i]) - expected[i]));
    worst_sym = std::max(worst_sym, std::abs(std_normal_cdf(-xs[i]) + std_normal_cdf(xs[i]) - 1.0));
  }
  const bool half = std_normal_cdf(0.0) == 0.5;
  return {worst <= 1e-7 && half && worst_sym <= 1e-15,
          "max |Phi - Simpson| " + fmt("%.2e", worst) + ", Phi(0) " + (half ? "= 0.5" : "!= 0.5") +
              ", max symmetry gap " + fmt("%.2e", worst_sym)};
}

Outcome recession_forecasting() {
  std::vector<double> hits;
  std::vector<double> alarms;
  int negative = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ds = generate(strong_regime(seed));
    const ProbitModelSpec spec;
    const auto fit = fit_recession_probit(ds, spec);
    probit_fits().push_back(fit);
    const auto m = recession_classification(fit, lead_aligned_indicator(ds, spec), 0.5);
    hits.push_back(m.hit_rate.value_or(0.0));
    alarms.push_back(m.false_alarm_rate.value_or(1.0));
    if (fit.coefficients[1] < 0.0) ++negative;
  }
  ProbitModelSpec with_rate;
  with_rate.extra_regressors = {"short"};
  probit_fits().push_back(fit_recession_probit(generate(strong_regime(1)), with_rate));
  const double hit = median(hits);
  const double alarm = median(alarms);
  return {hit >= 0.9 && alarm <= 0.2 && negative == 20,
          "median hit rate " + fmt("%.4f", hit) + ", median false-alarm rate " + fmt("%.4f", alarm) +
              ", negative spread coefficient in " + std::to_string(negative) + "/20 seeds"};
}

Outcome marginal_effect_nonlinearity() {
  int checked = 0;
  int held = 0;
  for (const auto& fit : probit_fits()) {
    const double b = fit.coefficients[1];
    if (b == 0.0) continue;
    // Other regressors held at 1; the spread value sets the index.
    double rest = 0.0;
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      if (j != 1) rest += fit.coefficients[j];
    }
    auto point = [&](double index) {
      std::vector<double> at(fit.coefficients.size(), 1.0);
      at[1] = (index - rest) / b;
      return at;
    };
    const double centre = std::abs(probit_marginal_effect(fit, point(0.0), 1));
    for (double index : {2.0, -2.0}) {
      ++checked;
      if (centre > std::abs(probit_marginal_effect(fit, point(index), 1))) ++held;
    }
  }
  return {checked > 0 && held == checked,
          std::to_string(held) + "/" + std::to_string(checked) + " comparisons over " +
              std::to_string(probit_fits().size()) + " fits"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism_and_round_trips() {
  const fs::path root = fs::temp_directory_path() / ("ycurve_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  std::vector<std::string> problems;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  std::ostringstream sink;
  auto run = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };

  // Two separate processes, then the in-process entry point.
  const std::string bin = YCURVE_CLI_PATH;
  for (const char* d : {"p1", "p2"}) {
    const std::string cmd = bin + " generate --seed 42 --n-quarters 120 --out-dir " +
                            (root / d).string() + " >/dev/null 2>&1";
    note(std::system(cmd.c_str()) == 0, "generate process failed");
  }
  note(run({"generate", "--seed", "42", "--n-quarters", "120", "--out-dir", (root / "p3").string()}) == 0,
       "in-process generate failed");
  const char* files[] = {"long_yield.csv", "short_yield.csv", "gdp.csv", "recession.csv"};
  for (const char* f : files) {
    note(slurp(root / "p1" / f) == slurp(root / "p2" / f), std::string(f) + " differs across runs");
    note(slurp(root / "p1" / f) == slurp(root / "p3" / f), std::string(f) + " differs in-process");
  }

  ScenarioSpec scenario;
  scenario.seed = 42;
  scenario.n_quarters = 120;
  const Dataset truth = generate(scenario);
  const fs::path d = root / "p1";
  const std::pair<const char*, const char*> named[] = {
      {"long", "long_yield.csv"}, {"short", "short_yield.csv"}, {"gdp", "gdp.csv"}, {"recession", "recession.csv"}};
  for (const auto& [name, file] : named) {
    const auto& s = truth.get(name);
    const auto back = read_series({(d / file).string(), name, s.unit()});
    note(back.values() == s.values() && back.quarters() == s.quarters(),
         std::string(file) + " does not re-ingest losslessly");
  }

  const std::vector<std::string> data{"--long", (d / "long_yield.csv").string(), "--short",
                                      (d / "short_yield.csv").string()};
  auto with = [&](std::vector<std::string> a, std::vector<std::string> b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const fs::path out = root / "out";
  const fs::path json = root / "json";
  for (const auto& [dir, format] : {std::pair{out, "csv"}, std::pair{json, "json"}}) {
    note(run(with({"fit", "--gdp", (d / "gdp.csv").string(), "--scheme", "rolling_oos", "--out-dir",
                   (dir / "fit").string(), "--format", format},
                  data)) == 0,
         "fit failed");
    note(run(with({"probit", "--recession", (d / "recession.csv").string(), "--out-dir", (dir / "probit").string(),
                   "--format", format},
                  data)) == 0,
         "probit failed");
    note(run(with({"spread", "--gdp", (d / "gdp.csv").string(), "--out-dir", (dir / "spread").string(), "--format",
                   format},
                  data)) == 0,
         "spread failed");
  }

  const auto report = rolling_oos_forecast(truth, {}, 16);
  const auto growth_fit = fit_growth_model(truth, {});
  const auto probit = fit_recession_probit(truth, {});
  const auto actual = lead_aligned_indicator(truth, {});
  const auto spread = compute_spread(truth, {});
  const auto growth = pct_growth(truth.get("gdp"), 4);

  auto column = [&](const char* file, const char* col, Unit unit) {
    const fs::path sub = fs::path(file).stem() == "forecast" ? "fit"
                         : fs::path(file).stem() == "spread" ? "spread" : "probit";
    return read_series({(out / sub / file).string(), col, unit, "quarter", col});
  };
  note(column("forecast.csv", "actual", Unit::percent_growth).values() == report.actual.values(), "forecast actual");
  note(column("forecast.csv", "predicted", Unit::percent_growth).values() == report.predicted.values(),
       "forecast predicted");
  note(column("probabilities.csv", "probability", Unit::level).values() == probit.fitted_probabilities.values(),
       "probabilities");
  note(column("probabilities.csv", "actual", Unit::indicator).values() == actual.values(), "probability actuals");
  const auto spread_back = column("spread.csv", "spread", Unit::percent_growth);
  note(column("spread.csv", "growth", Unit::percent_growth).values() ==
           growth.restricted(spread_back.first(), spread_back.last()).values(),
       "spread growth");
  note(spread_back.values() == spread.restricted(spread_back.first(), spread_back.last()).values(),
       "spread values");

  auto json_rows = [&](const char* sub, const char* file) {
    return nlohmann::json::parse(slurp(json / sub / file));
  };
  const auto coef = json_rows("fit", "coefficients.json");
  for (std::size_t j = 0; j < 2; ++j) {
    note(coef[j]["estimate"].get<double>() == growth_fit.coefficients[j] &&
             coef[j]["std_error"].get<double>() == growth_fit.std_errors[j] &&
             coef[j]["t_stat"].get<double>() == growth_fit.t_stats[j],
         "fit coefficients json");
  }
  const auto probit_coef = json_rows("probit", "coefficients.json");
  for (std::size_t j = 0; j < 2; ++j) {
    note(probit_coef[j]["estimate"].get<double>() == probit.coefficients[j] &&
             probit_coef[j]["std_error"].get<double>() == probit.std_errors[j],
         "probit coefficients json");
  }
  const auto probs = json_rows("probit", "probabilities.json");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    note(probs[i]["probability"].get<double>() == probit.fitted_probabilities.values()[i], "probabilities json");
  }
  const auto forecast = json_rows("fit", "forecast.json");
  for (std::size_t i = 0; i < forecast.size(); ++i) {
    note(forecast[i]["predicted"].get<double>() == report.predicted.values()[i], "forecast json");
  }

  fs::remove_all(root);
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()), problems.end());
  std::string detail = problems.empty() ? "byte-identical generate output, lossless re-ingest, CLI equals library"
                                        : "problems:";
  for (const auto& p : problems) detail += " [" + p + "]";
  return {problems.empty(), detail};
}

Dataset scrambled_from(const Dataset& ds, QuarterId from, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<Series> out;
  for (const auto& name : ds.names()) {
    const auto& s = ds.get(name);
    std::vector<Observation> obs(s.observations().begin(), s.observations().end());
    for (auto& o : obs) {
      if (o.quarter < from) continue;
      if (s.unit() == Unit::indicator) o.value = u(rng) < 1.0 ? 0.0 : 1.0;
      else if (s.unit() == Unit::level) o.value *= u(rng);
      else o.value += 10.0 * (u(rng) - 1.0);
    }
    out.emplace_back(name, s.unit(), std::move(obs));
  }
  return align(out);
}

Outcome no_look_ahead() {
  std::mt19937_64 rng(77);
  std::size_t compared = 0;
  std::size_t cases = 0;
  std::size_t changed_later = 0;
  bool identical = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioSpec scenario;
    scenario.seed = seed;
    scenario.n_quarters = 100;
    const auto ds = generate(scenario);
    for (auto kind : {GrowthModel::haubrich_pct, GrowthModel::harvey_window, GrowthModel::dotsey_log,
                      GrowthModel::turkish_next}) {
      for (auto window : {WindowStyle::expanding, WindowStyle::fixed}) {
        const auto spec = growth_spec(kind, kind == GrowthModel::dotsey_log ? 2 : 4);
        const auto base = rolling_oos_forecast(ds, spec, 16, window);
        for (std::size_t cut = 25; cut < ds.length(); cut += 9) {
          const QuarterId q = ds.quarter(cut);
          const auto moved = rolling_oos_forecast(scrambled_from(ds, q, rng), spec, 16, window);
          ++cases;
          bool later_changed = false;
          for (std::size_t i = 0; i < base.origins.size(); ++i) {
            if (moved.origins[i] != base.origins[i]) identical = false;
            if (base.origins[i] < q) {
              ++compared;
              if (moved.predicted.values()[i] != base.predicted.values()[i]) identical = false;
            } else if (moved.predicted.values()[i] != base.predicted.values()[i]) {
              later_changed = true;
            }
          }
          if (later_changed) ++changed_later;
        }
      }
    }
  }
  return {identical && compared > 0,
          std::to_string(compared) + " earlier forecasts bit-identical across " + std::to_string(cases) +
              " perturbations (later forecasts moved in " + std::to_string(changed_later) + ")"};
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome()> check;
  double time_limit_s;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "slope recovery at 1.0445", coefficient_recovery, 5.0},
      {2, "unit slope on 140 quarters", unit_slope, 10.0},
      {3, "out-of-sample R^2 near 0.35", out_of_sample_share, 30.0},
      {4, "OLS matches normal-equations oracle", ols_oracle, 0.0},
      {5, "probit matches grid-search oracle", probit_oracle, 0.0},
      {6, "normal CDF accuracy", gaussian_kernel, 0.0},
      {7, "recession hit rate on strong regimes", recession_forecasting, 0.0},
      {8, "marginal effect largest at zero index", marginal_effect_nonlinearity, 0.0},
      {9, "determinism and round trips", determinism_and_round_trips, 0.0},
      {10, "no look-ahead in rolling forecasts", no_look_ahead, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += "; exceeded " + fmt("%.0f", c.time_limit_s) + " s";
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  %2d  %-40s %s (%.3f s)\n", outcome.pass ? "PASS" : "FAIL", c.number, c.title,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
