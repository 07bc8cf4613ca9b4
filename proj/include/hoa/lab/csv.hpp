// Copyright 2026 The hoa-lab Authors
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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hoa/pauli.hpp"

namespace hoa::lab {

/// Table with '#'-prefixed metadata lines, a header row and data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void meta(const std::string& line) { meta_.push_back(line); }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> r{cell(cells)...};
    if (r.size() != columns_.size()) throw Error("csv: row width does not match header");
    rows_.push_back(std::move(r));
  }

  std::size_t size() const noexcept { return rows_.size(); }

  std::string render() const {
    std::string out;
    for (const auto& m : meta_) out += "# " + m + "\n";
    out += body();
    return out;
  }

  /// Header and rows only.
  std::string body() const {
    std::string out = join(columns_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

 private:
  static std::string cell(double v) { return hoa::detail::format_double(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  static std::string join(const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
    return s + "\n";
  }

  std::vector<std::string> columns_;
  std::vector<std::string> meta_;
  std::vector<std::vector<std::string>> rows_;
};

/// Strips '#' metadata lines, leaving the header and data rows.
inline std::string csv_body(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (text[pos] != '#') out += text.substr(pos, end - pos) + "\n";
    pos = end + 1;
  }
  return out;
}

}  // namespace hoa::lab
