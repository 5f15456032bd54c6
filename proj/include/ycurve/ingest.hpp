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
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/quarter.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

/// Where and how to read one series. Files are UTF-8, comma-delimited, with
/// a header row; columns are picked by name.
struct SeriesFileSpec {
  std::string path;
  std::string name;
  Unit unit = Unit::level;
  std::string date_column = "date";
  std::string value_column = "value";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(begin)));
      return fields;
    }
    fields.push_back(trim(line.substr(begin, comma - begin)));
    begin = comma + 1;
  }
}

/// Lines without terminators; CRLF accepted. A single trailing newline does
/// not produce an extra empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    begin = end + 1;
  }
  return lines;
}

// Plain decimal or exponent notation only; no signs other than '-', no
// grouping separators, no nan/inf.
inline bool parse_real(std::string_view text, double& out) {
  if (text.empty()) return false;
  for (char c : text) {
    const bool ok = (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E';
    if (!ok) return false;
  }
  if (text.front() == '+') return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("ingest", "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
  return text;
}

}  // namespace detail

/// Parses series text; `origin` names the source in error messages.
inline Series parse_series(std::string_view text, const SeriesFileSpec& spec,
                           std::string_view origin) {
  const std::string where(origin);
  if (spec.name.empty()) throw ValidationError("ingest", where + ": series name is empty");

  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("ingest", where + ": missing header row");
  const auto header = detail::split_fields(lines[0]);
  auto column = [&](const std::string& wanted) {
    auto it = std::find(header.begin(), header.end(), wanted);
    if (it == header.end()) {
      throw ParseError("ingest", where + ": header has no column '" + wanted + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t date_col = column(spec.date_column);
  const std::size_t value_col = column(spec.value_column);

  std::vector<Observation> obs;
  std::map<QuarterId, std::size_t> seen_on_line;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string at = where + ":" + std::to_string(line_no);
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != header.size()) {
      throw ParseError("ingest", at + ": expected " + std::to_string(header.size()) +
                                     " fields, found " + std::to_string(fields.size()));
    }
    const auto quarter = parse_quarter(fields[date_col]);
    if (!quarter) {
      throw ParseError("ingest", at + ": malformed date '" + std::string(fields[date_col]) + "'");
    }
    double value = 0.0;
    if (!detail::parse_real(fields[value_col], value)) {
      throw ParseError("ingest", at + ": non-numeric value '" + std::string(fields[value_col]) + "'");
    }
    if (spec.unit == Unit::indicator && value != 0.0 && value != 1.0) {
      throw ValidationError("ingest", at + ": indicator value must be 0 or 1, got '" +
                                          std::string(fields[value_col]) + "'");
    }
    auto [it, inserted] = seen_on_line.emplace(*quarter, line_no);
    if (!inserted) {
      throw ValidationError("ingest", where + ": duplicate quarter " + to_string(*quarter) +
                                          " on lines " + std::to_string(it->second) + " and " +
                                          std::to_string(line_no));
    }
    obs.push_back({*quarter, value});
  }
  std::sort(obs.begin(), obs.end(),
            [](const Observation& a, const Observation& b) { return a.quarter < b.quarter; });
  return Series(spec.name, spec.unit, std::move(obs));
}

inline Series read_series(const SeriesFileSpec& spec) {
  return parse_series(detail::read_file(spec.path), spec, spec.path);
}

/// Reads every file and aligns the series on their common quarters.
inline Dataset load_dataset(std::span<const SeriesFileSpec> specs) {
  if (specs.empty()) throw ParseError("ingest", "no input files");
  std::vector<Series> series;
  series.reserve(specs.size());
  for (const auto& spec : specs) series.push_back(read_series(spec));
  try {
    return align(series);
  } catch (const AlignmentFailure& e) {
    std::string files;
    for (const auto& name : e.offending()) {
      for (const auto& spec : specs) {
        if (spec.name == name) files += (files.empty() ? "'" : ", '") + spec.path + "'";
      }
    }
    throw AlignmentError("ingest", std::string(e.what()) + (files.empty() ? "" : "; files " + files));
  }
}

inline Dataset load_dataset(std::initializer_list<SeriesFileSpec> specs) {
  return load_dataset(std::span<const SeriesFileSpec>(specs.begin(), specs.size()));
}

}  // namespace ycurve
