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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hoa/error.hpp"
#include "hoa/pauli.hpp"

namespace hoa::lab {

/// One or more problems in a configuration, each prefixed by its key.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues) : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "\n") + x;
    return s;
  }
  std::vector<std::string> issues_;
};

enum class Scale { desk, paper };

inline std::string_view to_string(Scale s) { return s == Scale::desk ? "desk" : "paper"; }

inline Scale parse_scale(std::string_view s) {
  if (s == "desk") return Scale::desk;
  if (s == "paper") return Scale::paper;
  throw ConfigError({"scale: expected 'desk' or 'paper', got '" + std::string(s) + "'"});
}

/// Flat "key = value" text. Later lines override earlier ones.
using KeyValues = std::map<std::string, std::string>;

inline KeyValues parse_config_text(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = hoa::detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = hoa::detail::trim(line.substr(0, eq));
    const auto value = hoa::detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("empty value for '" + std::string(key) + "'", line_no);
    out[std::string(key)] = std::string(value);
  }
  return out;
}

inline KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

enum class Kind { integer, real, text, int_list, real_list };

struct KeySpec {
  Kind kind;
  std::vector<std::string> choices;  // for text keys; empty means free-form
};

/// Every key a recipe may read.
inline const std::map<std::string, KeySpec>& key_schema() {
  static const std::map<std::string, KeySpec> schema = {
      {"model.type", {Kind::text, {"heisenberg", "hubbard", "file"}}},
      {"model.n", {Kind::integer, {}}},
      {"model.J", {Kind::real, {}}},
      {"model.h", {Kind::real, {}}},
      {"model.U", {Kind::real, {}}},
      {"model.mu", {Kind::real, {}}},
      {"model.boundary", {Kind::text, {"open", "ring"}}},
      {"model.coupling", {Kind::text, {"ferromagnetic", "antiferromagnetic"}}},
      {"model.path", {Kind::text, {}}},
      {"state.type", {Kind::text, {"uniform", "neel", "basis"}}},
      {"state.bits", {Kind::text, {}}},
      {"hoa.S", {Kind::int_list, {}}},
      {"hoa.shift", {Kind::text, {}}},
      {"hoa.k", {Kind::int_list, {}}},
      {"hoa.dt", {Kind::real, {}}},
      {"hoa.dt_min", {Kind::real, {}}},
      {"hoa.dt_max", {Kind::real, {}}},
      {"hoa.dt_points", {Kind::integer, {}}},
      {"hoa.dt_list", {Kind::real_list, {}}},
      {"hoa.eps", {Kind::real, {}}},
      {"hoa.norm", {Kind::text, {"exact", "coefficient_sum"}}},
      {"backend.type", {Kind::text, {"exact", "trotter"}}},
      {"backend.r", {Kind::int_list, {}}},
      {"measure.shots", {Kind::real_list, {}}},
      {"measure.repeats", {Kind::integer, {}}},
      {"noise.gamma", {Kind::real, {}}},
      {"noise.trajectories", {Kind::real, {}}},
      {"noise.substep", {Kind::real, {}}},
      {"solver.K", {Kind::integer, {}}},
      {"solver.kmax", {Kind::integer, {}}},
      {"solver.kappa", {Kind::real, {}}},
      {"solver.threshold", {Kind::real, {}}},
      {"solver.shift", {Kind::real, {}}},
      {"vqe.ansatz", {Kind::text, {"hea", "hva"}}},
      {"vqe.depth", {Kind::int_list, {}}},
      {"vqe.iterations", {Kind::integer, {}}},
      {"vqe.lr", {Kind::real, {}}},
      {"vqe.shots", {Kind::real, {}}},
      {"seed", {Kind::real, {}}},
      {"output", {Kind::text, {}}},
  };
  return schema;
}

namespace detail {

inline std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    auto end = v.find(',', pos);
    if (end == std::string_view::npos) end = v.size();
    out.emplace_back(hoa::detail::trim(v.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

inline bool parse_int(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc() && ptr == s.data() + s.size()) return true;
  // Accept integral reals such as 1e5.
  double d = 0.0;
  if (!hoa::detail::parse_double(s, d) || d != std::floor(d) || std::abs(d) > 9e15) return false;
  out = static_cast<long long>(d);
  return true;
}

}  // namespace detail

/// Fully resolved settings: every value present and type-checked.
class Config {
 public:
  Config() = default;
  Config(std::string recipe, Scale scale, KeyValues values) : recipe_(std::move(recipe)), scale_(scale), values_(std::move(values)) {}

  const std::string& recipe() const noexcept { return recipe_; }
  Scale scale() const noexcept { return scale_; }
  const KeyValues& values() const noexcept { return values_; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  const std::string& text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError({key + ": missing"});
    return it->second;
  }

  long long integer(const std::string& key) const {
    long long v = 0;
    if (!detail::parse_int(text(key), v)) throw ConfigError({key + ": expected an integer, got '" + text(key) + "'"});
    return v;
  }

  double real(const std::string& key) const {
    double v = 0.0;
    if (!hoa::detail::parse_double(text(key), v) || !std::isfinite(v)) {
      throw ConfigError({key + ": expected a number, got '" + text(key) + "'"});
    }
    return v;
  }

  std::vector<long long> integers(const std::string& key) const {
    std::vector<long long> out;
    for (const auto& item : detail::split_list(text(key))) {
      long long v = 0;
      if (!detail::parse_int(item, v)) throw ConfigError({key + ": expected integers, got '" + item + "'"});
      out.push_back(v);
    }
    return out;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : detail::split_list(text(key))) {
      double v = 0.0;
      if (!hoa::detail::parse_double(item, v) || !std::isfinite(v)) {
        throw ConfigError({key + ": expected numbers, got '" + item + "'"});
      }
      out.push_back(v);
    }
    return out;
  }

  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }

 private:
  std::string recipe_;
  Scale scale_ = Scale::desk;
  KeyValues values_;
};

/// Type check of a single value against the schema; returns an issue or "".
inline std::string check_value(const std::string& key, const std::string& value) {
  const auto& schema = key_schema();
  const auto it = schema.find(key);
  if (it == schema.end()) return key + ": unknown key";
  const KeySpec& spec = it->second;
  Config probe("", Scale::desk, {{key, value}});
  try {
    switch (spec.kind) {
      case Kind::integer: probe.integer(key); break;
      case Kind::real: probe.real(key); break;
      case Kind::int_list: probe.integers(key); break;
      case Kind::real_list: probe.reals(key); break;
      case Kind::text:
        if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
          std::string allowed;
          for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + c;
          return key + ": '" + value + "' is not one of {" + allowed + "}";
        }
        break;
    }
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace hoa::lab
