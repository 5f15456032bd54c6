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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ycurve {

/// A calendar quarter. Every time index in the toolkit is a QuarterId.
struct QuarterId {
  int year = 2000;
  int quarter = 1;  // 1..4

  constexpr QuarterId() = default;
  constexpr QuarterId(int y, int q) : year(y), quarter(q) {}

  /// Quarters elapsed since year 0, Q1. Monotone in calendar order.
  constexpr std::int64_t ordinal() const {
    return static_cast<std::int64_t>(year) * 4 + (quarter - 1);
  }

  static constexpr QuarterId from_ordinal(std::int64_t ord) {
    std::int64_t y = ord / 4;
    std::int64_t r = ord % 4;
    if (r < 0) {
      r += 4;
      y -= 1;
    }
    return QuarterId(static_cast<int>(y), static_cast<int>(r) + 1);
  }

  constexpr auto operator<=>(const QuarterId& other) const = default;
  constexpr bool operator==(const QuarterId& other) const = default;
};

constexpr bool is_valid(QuarterId q) { return q.quarter >= 1 && q.quarter <= 4; }

/// q advanced by n quarters; negative n moves backward.
constexpr QuarterId quarter_add(QuarterId q, std::int64_t n) {
  return QuarterId::from_ordinal(q.ordinal() + n);
}

/// Signed number of quarters from a to b.
constexpr std::int64_t quarters_between(QuarterId a, QuarterId b) {
  return b.ordinal() - a.ordinal();
}

inline std::string to_string(QuarterId q) {
  return std::to_string(q.year) + "Q" + std::to_string(q.quarter);
}

/// Accepts "YYYYQn" (Q in either case) or "YYYY-MM", the latter mapped to
/// quarter ceil(MM/3). Returns nullopt on anything else.
inline std::optional<QuarterId> parse_quarter(std::string_view text) {
  auto parse_int = [](std::string_view s, int& out) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };

  if (text.size() == 6 && (text[4] == 'Q' || text[4] == 'q')) {
    int year = 0;
    int quarter = 0;
    if (!parse_int(text.substr(0, 4), year) || !parse_int(text.substr(5, 1), quarter)) {
      return std::nullopt;
    }
    if (quarter < 1 || quarter > 4) return std::nullopt;
    return QuarterId(year, quarter);
  }
  if (text.size() == 7 && text[4] == '-') {
    int year = 0;
    int month = 0;
    if (!parse_int(text.substr(0, 4), year) || !parse_int(text.substr(5, 2), month)) {
      return std::nullopt;
    }
    if (month < 1 || month > 12) return std::nullopt;
    return QuarterId(year, (month + 2) / 3);
  }
  return std::nullopt;
}

}  // namespace ycurve
