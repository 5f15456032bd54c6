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
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/quarter.hpp"

namespace ycurve {

enum class Unit { percent_per_annum, level, percent_growth, indicator };

inline std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::percent_per_annum: return "percent_per_annum";
    case Unit::level: return "level";
    case Unit::percent_growth: return "percent_growth";
    case Unit::indicator: return "indicator";
  }
  return "unknown";
}

inline std::optional<Unit> parse_unit(std::string_view text) {
  for (Unit u : {Unit::percent_per_annum, Unit::level, Unit::percent_growth, Unit::indicator}) {
    if (text == to_string(u)) return u;
  }
  return std::nullopt;
}

struct Observation {
  QuarterId quarter;
  double value = 0.0;

  bool operator==(const Observation&) const = default;
};

/// A named quarterly series. Quarters are strictly increasing; gaps are
/// allowed and reported by is_contiguous().
class Series {
 public:
  Series() = default;

  Series(std::string name, Unit unit, std::vector<Observation> observations)
      : name_(std::move(name)), unit_(unit), obs_(std::move(observations)) {
    for (std::size_t i = 0; i < obs_.size(); ++i) {
      if (!is_valid(obs_[i].quarter)) {
        throw ValidationError("series", "'" + name_ + "' has an invalid quarter");
      }
      if (i > 0 && !(obs_[i - 1].quarter < obs_[i].quarter)) {
        throw ValidationError("series", "'" + name_ + "' quarters not strictly increasing at " +
                                            to_string(obs_[i].quarter));
      }
      if (unit_ == Unit::indicator && obs_[i].value != 0.0 && obs_[i].value != 1.0) {
        throw ValidationError("series", "indicator '" + name_ + "' has value other than 0/1 at " +
                                            to_string(obs_[i].quarter));
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  Unit unit() const noexcept { return unit_; }
  std::span<const Observation> observations() const noexcept { return obs_; }
  std::size_t size() const noexcept { return obs_.size(); }
  bool empty() const noexcept { return obs_.empty(); }

  QuarterId first() const { return obs_.front().quarter; }
  QuarterId last() const { return obs_.back().quarter; }

  std::optional<double> at(QuarterId q) const {
    auto it = std::lower_bound(obs_.begin(), obs_.end(), q,
                               [](const Observation& o, QuarterId key) { return o.quarter < key; });
    if (it == obs_.end() || it->quarter != q) return std::nullopt;
    return it->value;
  }

  bool contains(QuarterId q) const { return at(q).has_value(); }

  bool is_contiguous() const {
    for (std::size_t i = 1; i < obs_.size(); ++i) {
      if (quarters_between(obs_[i - 1].quarter, obs_[i].quarter) != 1) return false;
    }
    return true;
  }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(obs_.size());
    for (const auto& o : obs_) out.push_back(o.value);
    return out;
  }

  std::vector<QuarterId> quarters() const {
    std::vector<QuarterId> out;
    out.reserve(obs_.size());
    for (const auto& o : obs_) out.push_back(o.quarter);
    return out;
  }

  /// Observations with from <= quarter <= to.
  Series restricted(QuarterId from, QuarterId to) const {
    std::vector<Observation> kept;
    for (const auto& o : obs_) {
      if (from <= o.quarter && o.quarter <= to) kept.push_back(o);
    }
    return Series(name_, unit_, std::move(kept));
  }

  Series renamed(std::string name) const {
    Series copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  bool operator==(const Series&) const = default;

 private:
  std::string name_;
  Unit unit_ = Unit::level;
  std::vector<Observation> obs_;
};

/// Series re-indexed n quarters later: result(q) = s(q - n).
inline Series shift(const Series& s, std::int64_t n) {
  std::vector<Observation> moved;
  moved.reserve(s.size());
  for (const auto& o : s.observations()) moved.push_back({quarter_add(o.quarter, n), o.value});
  return Series(s.name(), s.unit(), std::move(moved));
}

namespace detail {

template <typename Transform>
Series growth_transform(const Series& level, int k, std::string_view label, Transform&& f) {
  if (k < 1) throw DomainError("series_core", std::string(label) + ": horizon must be >= 1");
  if (level.unit() != Unit::level) {
    throw DomainError("series_core", std::string(label) + ": '" + level.name() +
                                         "' must have unit 'level'");
  }
  std::vector<Observation> out;
  for (const auto& o : level.observations()) {
    const QuarterId end = quarter_add(o.quarter, k);
    const auto later = level.at(end);
    if (!later) continue;
    if (!(o.value > 0.0)) {
      throw DomainError("series_core", std::string(label) + ": nonpositive level in '" +
                                           level.name() + "' at " + to_string(o.quarter));
    }
    if (!(*later > 0.0)) {
      throw DomainError("series_core", std::string(label) + ": nonpositive level in '" +
                                           level.name() + "' at " + to_string(end));
    }
    out.push_back({o.quarter, f(o.value, *later)});
  }
  return Series(std::string(label) + "_" + std::to_string(k) + "(" + level.name() + ")",
                Unit::percent_growth, std::move(out));
}

}  // namespace detail

/// k-quarter simple growth in percent, indexed at the start quarter t:
/// 100 * (level(t+k) - level(t)) / level(t).
inline Series pct_growth(const Series& level, int k) {
  return detail::growth_transform(level, k, "pct_growth", [](double from, double to) {
    return 100.0 * (to - from) / from;
  });
}

/// k-quarter log growth at an annual percent rate, indexed at t:
/// (400 / k) * ln(level(t+k) / level(t)).
inline Series annualized_log_growth(const Series& level, int k) {
  return detail::growth_transform(level, k, "log_growth", [k](double from, double to) {
    return (400.0 / k) * std::log(to / from);
  });
}

/// Series sharing one gap-free quarter range. Built only through align().
class Dataset {
 public:
  const Series& get(std::string_view name) const {
    auto it = series_.find(std::string(name));
    if (it == series_.end()) {
      throw LookupError("dataset", "no series named '" + std::string(name) + "'");
    }
    return it->second;
  }

  bool contains(std::string_view name) const { return series_.count(std::string(name)) > 0; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : series_) out.push_back(name);
    return out;
  }

  QuarterId first() const noexcept { return first_; }
  QuarterId last() const noexcept { return last_; }

  /// Number of quarters in the common range.
  std::size_t length() const noexcept {
    return static_cast<std::size_t>(quarters_between(first_, last_) + 1);
  }

  QuarterId quarter(std::size_t i) const {
    return quarter_add(first_, static_cast<std::int64_t>(i));
  }

  /// Values of a member series over the common range, in quarter order.
  std::vector<double> values(std::string_view name) const { return get(name).values(); }

  friend Dataset align(std::span<const Series> series_list);

 private:
  std::map<std::string, Series> series_;
  QuarterId first_;
  QuarterId last_;
};

class AlignmentFailure : public AlignmentError {
 public:
  AlignmentFailure(const std::string& message, std::vector<std::string> offending)
      : AlignmentError("series_core", message), offending_(std::move(offending)) {}

  /// Names of the series responsible for the failure.
  const std::vector<std::string>& offending() const noexcept { return offending_; }

 private:
  std::vector<std::string> offending_;
};

/// Restricts every series to the longest run of consecutive quarters that
/// all of them observe. Ties between equally long runs go to the latest one.
inline Dataset align(std::span<const Series> series_list) {
  if (series_list.empty()) throw AlignmentFailure("no series to align", {});

  for (std::size_t i = 0; i < series_list.size(); ++i) {
    if (series_list[i].empty()) {
      throw AlignmentFailure("series '" + series_list[i].name() + "' is empty",
                             {series_list[i].name()});
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (series_list[i].name() == series_list[j].name()) {
        throw AlignmentFailure("duplicate series name '" + series_list[i].name() + "'",
                               {series_list[i].name()});
      }
    }
  }

  // Overlap window; the series that start latest and end earliest bound it.
  std::size_t late_start = 0;
  std::size_t early_end = 0;
  for (std::size_t i = 1; i < series_list.size(); ++i) {
    if (series_list[late_start].first() < series_list[i].first()) late_start = i;
    if (series_list[i].last() < series_list[early_end].last()) early_end = i;
  }
  const QuarterId lo = series_list[late_start].first();
  const QuarterId hi = series_list[early_end].last();
  auto no_overlap = [&] {
    std::vector<std::string> names{series_list[late_start].name()};
    if (early_end != late_start) names.push_back(series_list[early_end].name());
    std::string joined = names.front();
    if (names.size() > 1) joined += "' and '" + names.back();
    return AlignmentFailure("no quarter common to all series ('" + joined + "')", names);
  };
  if (hi < lo) throw no_overlap();

  std::int64_t best_start = 0;
  std::int64_t best_len = 0;
  std::int64_t run_start = 0;
  std::int64_t run_len = 0;
  for (std::int64_t ord = lo.ordinal(); ord <= hi.ordinal(); ++ord) {
    const QuarterId q = QuarterId::from_ordinal(ord);
    const bool everywhere = std::all_of(series_list.begin(), series_list.end(),
                                        [q](const Series& s) { return s.contains(q); });
    if (everywhere) {
      if (run_len == 0) run_start = ord;
      ++run_len;
      if (run_len >= best_len) {
        best_len = run_len;
        best_start = run_start;
      }
    } else {
      run_len = 0;
    }
  }
  if (best_len == 0) throw no_overlap();

  Dataset ds;
  ds.first_ = QuarterId::from_ordinal(best_start);
  ds.last_ = QuarterId::from_ordinal(best_start + best_len - 1);
  for (const auto& s : series_list) ds.series_.emplace(s.name(), s.restricted(ds.first_, ds.last_));
  return ds;
}

inline Dataset align(std::initializer_list<Series> series_list) {
  return align(std::span<const Series>(series_list.begin(), series_list.size()));
}

}  // namespace ycurve
