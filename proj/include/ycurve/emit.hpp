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

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ycurve/errors.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

/// 17 significant digits: parses back to the identical double.
inline std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

enum class OutputFormat { csv, json };

inline std::string_view extension(OutputFormat format) {
  return format == OutputFormat::csv ? ".csv" : ".json";
}

/// Column-oriented output: rendered as CSV (ingest dialect) or as a JSON
/// array of records with the same keys.
struct Table {
  using Cell = std::variant<std::string, double>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        if (const auto* s = std::get_if<std::string>(&row[c])) {
          out += *s;
        } else {
          out += format_real(std::get<double>(row[c]));
        }
      }
      out += '\n';
    }
    return out;
  }

  std::string to_json() const {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json record = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::visit([&](const auto& v) { record[columns[c]] = v; }, row[c]);
      }
      records.push_back(std::move(record));
    }
    return records.dump(2) + "\n";
  }

  std::string render(OutputFormat format) const {
    return format == OutputFormat::csv ? to_csv() : to_json();
  }
};

/// Columns date,value.
inline Table series_table(const Series& s) {
  Table t{{"date", "value"}, {}};
  for (const auto& o : s.observations()) t.rows.push_back({to_string(o.quarter), o.value});
  return t;
}

/// Writes to a sibling temporary file, then renames over the target, so a
/// failed write never leaves a partial file at `path`.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("emit", "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw IoError("emit", "short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("emit", "cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace ycurve
