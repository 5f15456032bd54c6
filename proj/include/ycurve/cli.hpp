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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ycurve/emit.hpp"
#include "ycurve/errors.hpp"
#include "ycurve/evaluate.hpp"
#include "ycurve/ingest.hpp"
#include "ycurve/models.hpp"
#include "ycurve/synthgen.hpp"

namespace ycurve::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitAlignment = 3;
inline constexpr int kExitEstimation = 4;
inline constexpr int kExitIo = 5;

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return kExitParse;
    case ErrorKind::alignment: return kExitAlignment;
    case ErrorKind::estimation: return kExitEstimation;
    case ErrorKind::io: return kExitIo;
  }
  return 1;
}

/// Everything a single invocation needs. Flags override config-file values,
/// which override these defaults.
struct RunConfig {
  std::string gdp;
  std::string long_yield;
  std::string short_yield;
  std::string recession;
  std::vector<std::string> extra;
  std::string model = "turkish_next";
  int horizon = 4;
  int lead = 4;
  std::string scheme = "in_sample";
  int min_train = 16;
  double threshold = kDefaultThreshold;
  double band = kDefaultFlatBand;
  std::string out_dir = ".";
  std::string format = "csv";

  // generate
  std::uint64_t seed = 1;
  int n_quarters = 32;
  std::string start = "2010Q1";
  double true_a = 1.0;
  double true_b = 1.0445;
  double noise = 0.5;
  double spread_mean = 1.0;
  double persistence = 0.7;
  double shock = 1.0;
  double trigger = -0.5;
  double flip_prob = 0.05;
  int growth_lead = 1;
};

/// key = value lines; '#' starts a comment. Keys are long flag names.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cli", "cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = detail::trim(line);
    if (body.empty() || body == "\r") continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("cli", path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(detail::trim(body.substr(0, eq)));
    std::string value(detail::trim(body.substr(eq + 1)));
    if (!value.empty() && value.back() == '\r') value.pop_back();
    if (key.empty()) throw ParseError("cli", path + ":" + std::to_string(line_no) + ": empty key");
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

namespace detail {

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline OutputFormat output_format(const RunConfig& cfg) {
  if (cfg.format == "csv") return OutputFormat::csv;
  if (cfg.format == "json") return OutputFormat::json;
  throw ParseError("cli", "--format must be csv or json, got '" + cfg.format + "'");
}

inline std::string require(const std::string& value, std::string_view flag) {
  if (value.empty()) throw ParseError("cli", "missing required --" + std::string(flag));
  return value;
}

inline GrowthModelSpec growth_spec(const RunConfig& cfg) {
  const auto kind = parse_growth_model(cfg.model);
  if (!kind) throw ParseError("cli", "unknown --model '" + cfg.model + "'");
  GrowthModelSpec spec;
  spec.kind = *kind;
  spec.horizon_k = cfg.horizon;
  return spec;
}

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.out_dir)) {
    throw IoError("cli", "cannot create output directory '" + cfg.out_dir + "'");
  }
  return cfg.out_dir;
}

inline Table coefficient_table(const std::vector<std::string>& names, const std::vector<double>& coef,
                               const std::vector<double>& se, const std::vector<double>* t_stats) {
  Table t{{"term", "estimate", "std_error"}, {}};
  if (t_stats) t.columns.push_back("t_stat");
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<Table::Cell> row{names[j], coef[j], se[j]};
    if (t_stats) row.emplace_back((*t_stats)[j]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void print_coefficients(std::ostream& out, const Table& table) {
  for (const auto& c : table.columns) out << pad(c, 14);
  out << '\n';
  for (const auto& row : table.rows) {
    for (const auto& cell : row) {
      if (const auto* s = std::get_if<std::string>(&cell)) {
        out << pad(*s, 14);
      } else {
        out << pad(fixed4(std::get<double>(cell)), 14);
      }
    }
    out << '\n';
  }
}

// Writes all rendered files only after every one of them rendered cleanly.
inline void write_all(const std::filesystem::path& dir,
                      const std::vector<std::pair<std::string, std::string>>& files,
                      std::ostream& out) {
  for (const auto& [name, content] : files) {
    write_file_atomic(dir / name, content);
    out << "wrote " << (dir / name).string() << '\n';
  }
}

}  // namespace detail

inline int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  const auto format = detail::output_format(cfg);
  const auto spec = detail::growth_spec(cfg);
  const auto scheme = parse_forecast_scheme(cfg.scheme);
  if (!scheme) throw ParseError("cli", "--scheme must be in_sample or rolling_oos");
  const Dataset ds = load_dataset({
      {detail::require(cfg.long_yield, "long"), "long", Unit::percent_per_annum},
      {detail::require(cfg.short_yield, "short"), "short", Unit::percent_per_annum},
      {detail::require(cfg.gdp, "gdp"), "gdp", Unit::level},
  });

  const RegressionFit fit = fit_growth_model(ds, spec);
  const ForecastReport report = *scheme == ForecastScheme::in_sample
                                    ? in_sample_forecast(ds, spec)
                                    : rolling_oos_forecast(ds, spec, cfg.min_train);

  const Table coef = detail::coefficient_table(fit.coefficient_names, fit.coefficients,
                                               fit.std_errors, &fit.t_stats);
  Table forecast{{"quarter", "actual", "predicted"}, {}};
  const auto actual = report.actual.observations();
  const auto predicted = report.predicted.observations();
  for (std::size_t i = 0; i < actual.size(); ++i) {
    forecast.rows.push_back({to_string(actual[i].quarter), actual[i].value, predicted[i].value});
  }

  const auto dir = detail::prepare_out_dir(cfg);
  const std::string ext(extension(format));

  out << "model " << to_string(spec.kind) << " (k=" << spec.horizon_k << "), data "
      << to_string(ds.first()) << "-" << to_string(ds.last()) << '\n';
  detail::print_coefficients(out, coef);
  out << "R^2 " << detail::fixed4(fit.r_squared) << "   n " << fit.n_obs << '\n';
  out << "forecast " << to_string(report.scheme) << ": r2 " << detail::fixed4(report.r_squared_oos)
      << "   rmse " << detail::fixed4(report.rmse) << "   rows " << report.actual.size() << '\n';
  detail::write_all(dir, {{"coefficients" + ext, coef.render(format)},
                          {"forecast" + ext, forecast.render(format)}},
                    out);
  return kExitOk;
}

inline int cmd_probit(const RunConfig& cfg, std::ostream& out) {
  const auto format = detail::output_format(cfg);
  std::vector<SeriesFileSpec> files{
      {detail::require(cfg.long_yield, "long"), "long", Unit::percent_per_annum},
      {detail::require(cfg.short_yield, "short"), "short", Unit::percent_per_annum},
      {detail::require(cfg.recession, "recession"), "recession", Unit::indicator},
  };
  ProbitModelSpec spec;
  spec.lead_h = cfg.lead;
  for (const auto& path : cfg.extra) {
    const std::string name = std::filesystem::path(path).stem().string();
    files.push_back({path, name, Unit::percent_per_annum});
    spec.extra_regressors.push_back(name);
  }
  const Dataset ds = load_dataset(files);
  const ProbitFit fit = fit_recession_probit(ds, spec);
  const Series actual = lead_aligned_indicator(ds, spec);
  const auto metrics = recession_classification(fit, actual, cfg.threshold);

  const Table coef = detail::coefficient_table(fit.coefficient_names, fit.coefficients,
                                               fit.std_errors, nullptr);
  Table probs{{"quarter", "probability", "actual"}, {}};
  for (const auto& o : fit.fitted_probabilities.observations()) {
    probs.rows.push_back({to_string(o.quarter), o.value, *actual.at(o.quarter)});
  }

  const auto dir = detail::prepare_out_dir(cfg);
  const std::string ext(extension(format));
  auto rate = [](const std::optional<double>& r) { return r ? detail::fixed4(*r) : std::string("n/a"); };

  out << "probit recession(t+" << spec.lead_h << ") on spread(t)";
  for (const auto& e : spec.extra_regressors) out << ", " << e << "(t)";
  out << ", data " << to_string(ds.first()) << "-" << to_string(ds.last()) << '\n';
  detail::print_coefficients(out, coef);
  out << "log-likelihood " << detail::fixed4(fit.log_likelihood) << "   iterations "
      << fit.iterations << "   converged " << (fit.converged ? "yes" : "no") << '\n';
  out << "threshold " << detail::fixed4(cfg.threshold) << "   hit_rate " << rate(metrics.hit_rate)
      << "   false_alarm_rate " << rate(metrics.false_alarm_rate) << "   recession quarters "
      << metrics.n_recession_quarters << " of " << metrics.n_quarters << '\n';
  detail::write_all(dir, {{"coefficients" + ext, coef.render(format)},
                          {"probabilities" + ext, probs.render(format)}},
                    out);
  return kExitOk;
}

inline int cmd_spread(const RunConfig& cfg, std::ostream& out) {
  const auto format = detail::output_format(cfg);
  if (!(cfg.band >= 0.0)) throw ParseError("cli", "--band must be >= 0");
  std::vector<SeriesFileSpec> files{
      {detail::require(cfg.long_yield, "long"), "long", Unit::percent_per_annum},
      {detail::require(cfg.short_yield, "short"), "short", Unit::percent_per_annum},
  };
  if (!cfg.gdp.empty()) files.push_back({cfg.gdp, "gdp", Unit::level});
  const Dataset ds = load_dataset(files);
  const Series spread = compute_spread(ds, SpreadSpec{});

  std::optional<Series> growth;
  Table table{{"quarter", "spread", "curve_class"}, {}};
  if (!cfg.gdp.empty()) {
    growth = pct_growth(ds.get("gdp"), cfg.horizon);
    table.columns.push_back("growth");
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& o : spread.observations()) {
    const auto shape = classify_curve(o.value, cfg.band);
    std::vector<Table::Cell> row{to_string(o.quarter), o.value, std::string(to_string(shape))};
    if (growth) {
      const auto g = growth->at(o.quarter);
      if (!g) continue;
      row.emplace_back(*g);
    }
    ++counts[static_cast<int>(shape)];
    table.rows.push_back(std::move(row));
  }

  const auto dir = detail::prepare_out_dir(cfg);
  out << "spread long-short, " << table.rows.size() << " quarters: normal " << counts[0]
      << ", flat " << counts[1] << ", inverted " << counts[2] << " (band "
      << detail::fixed4(cfg.band) << ")\n";
  detail::write_all(dir, {{"spread" + std::string(extension(format)), table.render(format)}}, out);
  return kExitOk;
}

inline ScenarioSpec scenario_spec(const RunConfig& cfg) {
  ScenarioSpec spec;
  spec.seed = cfg.seed;
  spec.n_quarters = cfg.n_quarters;
  const auto start = parse_quarter(cfg.start);
  if (!start) throw ParseError("cli", "--start must look like 2010Q1, got '" + cfg.start + "'");
  spec.start = *start;
  spec.true_a = cfg.true_a;
  spec.true_b = cfg.true_b;
  spec.noise_sigma = cfg.noise;
  spec.spread = {cfg.spread_mean, cfg.persistence, cfg.shock};
  spec.recession = {cfg.trigger, cfg.lead, cfg.flip_prob};
  spec.growth_horizon = cfg.horizon;
  spec.growth_lead = cfg.growth_lead;
  return spec;
}

/// Files are always written in the CSV ingest dialect.
inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const ScenarioSpec spec = scenario_spec(cfg);
  const Dataset ds = generate(spec);
  const auto dir = detail::prepare_out_dir(cfg);
  out << "scenario " << describe(spec) << '\n';
  detail::write_all(dir,
                    {{"long_yield.csv", series_table(ds.get("long")).to_csv()},
                     {"short_yield.csv", series_table(ds.get("short")).to_csv()},
                     {"gdp.csv", series_table(ds.get("gdp")).to_csv()},
                     {"recession.csv", series_table(ds.get("recession")).to_csv()}},
                    out);
  return kExitOk;
}

namespace detail {

inline void add_data_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--long", cfg.long_yield, "long-maturity yield CSV (date,value)");
  cmd->add_option("--short", cfg.short_yield, "short-maturity yield CSV (date,value)");
  cmd->add_option("--out-dir", cfg.out_dir, "directory for output files");
  cmd->add_option("--format", cfg.format, "csv or json");
}

}  // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"ycurve: yield-curve spread models for growth and recession forecasting"};
  app.require_subcommand(1);
  std::string config_path;

  auto* fit = app.add_subcommand("fit", "OLS of GDP growth on the term spread");
  auto* probit = app.add_subcommand("probit", "probit of future recession on the term spread");
  auto* spread = app.add_subcommand("spread", "term spread with curve-shape labels");
  auto* gen = app.add_subcommand("generate", "write a synthetic scenario as CSV files");
  for (auto* cmd : {fit, probit, spread, gen}) {
    cmd->add_option("--config", config_path, "key = value file; flags take precedence");
  }

  detail::add_data_flags(fit, cfg);
  fit->add_option("--gdp", cfg.gdp, "GDP level CSV");
  fit->add_option("--model", cfg.model, "haubrich_pct | harvey_window | dotsey_log | turkish_next");
  fit->add_option("--horizon", cfg.horizon, "growth horizon k in quarters")->check(CLI::PositiveNumber);
  fit->add_option("--scheme", cfg.scheme, "in_sample or rolling_oos");
  fit->add_option("--min-train", cfg.min_train, "rolling_oos minimum training rows");

  detail::add_data_flags(probit, cfg);
  probit->add_option("--recession", cfg.recession, "0/1 recession indicator CSV");
  probit->add_option("--extra", cfg.extra, "extra regressor CSV (repeatable); named by file stem");
  probit->add_option("--lead", cfg.lead, "quarters ahead")->check(CLI::Range(0, kMaxRecessionLead));
  probit->add_option("--threshold", cfg.threshold, "signal threshold in (0,1)");

  detail::add_data_flags(spread, cfg);
  spread->add_option("--gdp", cfg.gdp, "optional GDP level CSV for a growth column");
  spread->add_option("--horizon", cfg.horizon, "growth horizon k")->check(CLI::PositiveNumber);
  spread->add_option("--band", cfg.band, "flat-curve band in percentage points");

  gen->add_option("--out-dir", cfg.out_dir, "directory for output files");
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--n-quarters", cfg.n_quarters);
  gen->add_option("--start", cfg.start, "first quarter, e.g. 2010Q1");
  gen->add_option("--true-a", cfg.true_a);
  gen->add_option("--true-b", cfg.true_b);
  gen->add_option("--noise", cfg.noise, "growth noise sigma");
  gen->add_option("--spread-mean", cfg.spread_mean);
  gen->add_option("--persistence", cfg.persistence);
  gen->add_option("--shock", cfg.shock, "spread shock sigma");
  gen->add_option("--trigger", cfg.trigger, "recession trigger spread");
  gen->add_option("--lead", cfg.lead, "recession lead in quarters");
  gen->add_option("--flip-prob", cfg.flip_prob);
  gen->add_option("--horizon", cfg.horizon, "growth window length");
  gen->add_option("--growth-lead", cfg.growth_lead);

  try {
    // Config entries become flags placed before the command line's own, and
    // are dropped when the command line sets the same flag.
    std::vector<std::string> argv_list{"ycurve"};
    std::vector<std::string> rest = args;
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
      if (rest[i] == "--config") config_path = rest[i + 1];
    }
    for (const auto& a : rest) {
      if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    std::vector<std::string> merged;
    if (!rest.empty()) merged.push_back(rest.front());
    if (!config_path.empty()) {
      auto given = [&](const std::string& key) {
        for (const auto& a : rest) {
          if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        }
        return false;
      };
      for (const auto& [key, value] : read_config_file(config_path)) {
        if (key == "config" || given(key)) continue;
        merged.push_back("--" + key);
        merged.push_back(value);
      }
    }
    merged.insert(merged.end(), rest.begin() + (rest.empty() ? 0 : 1), rest.end());
    argv_list.insert(argv_list.end(), merged.begin(), merged.end());

    std::vector<const char*> argv;
    for (const auto& a : argv_list) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "cli: " << e.what() << '\n';
      return kExitParse;
    }

    if (fit->parsed()) return cmd_fit(cfg, out);
    if (probit->parsed()) return cmd_probit(cfg, out);
    if (spread->parsed()) return cmd_spread(cfg, out);
    return cmd_generate(cfg, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "ycurve: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ycurve::cli
