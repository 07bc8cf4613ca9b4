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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hoa/lab/recipes.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hoa::lab::ConfigError({"output: cannot open '" + path + "' for writing"});
  out << text;
  if (!out) throw hoa::lab::ConfigError({"output: failed writing '" + path + "'"});
}

std::string recipe_list() {
  std::string s;
  for (const auto& r : hoa::lab::recipes()) {
    s += "  " + r.name + std::string(16 - r.name.size(), ' ') + r.summary + (r.stochastic ? " (needs seed)" : "") + "\n";
  }
  return s;
}

int run(const std::string& recipe, const std::string& config_path, const std::string& scale,
        std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  hoa::lab::KeyValues user = config_path.empty() ? hoa::lab::KeyValues{} : hoa::lab::load_config_file(config_path);
  if (const auto it = user.find("model.path"); it != user.end() && std::filesystem::path(it->second).is_relative()) {
    it->second = (std::filesystem::path(config_path).parent_path() / it->second).lexically_normal().string();
  }
  const auto cfg = hoa::lab::resolve(recipe, hoa::lab::parse_scale(scale), user, seed, out);
  const auto result = hoa::lab::run_recipe(cfg);
  if (cfg.has("output")) {
    const auto& path = cfg.text("output");
    write_file(path, result.csv);
    for (const auto& [suffix, text] : result.extras) write_file(path + suffix, text);
  } else {
    std::cout << result.csv;
    for (const auto& [suffix, text] : result.extras) {
      std::cerr << "note: '" << suffix << "' table skipped; pass --out to keep it\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments with propagator-based Hamiltonian approximations", "hoa-lab"};
  app.set_version_flag("--version", std::string(hoa::kVersion));
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a recipe and emit CSV");
  std::string recipe, config_path, scale = "desk";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  run_cmd->add_option("recipe", recipe, "Recipe name")->required();
  run_cmd->add_option("--config,-c", config_path, "Key = value configuration file");
  run_cmd->add_option("--scale", scale, "Problem scale")->check(CLI::IsMember({"desk", "paper"}));
  run_cmd->add_option("--seed", seed, "Seed for stochastic recipes");
  run_cmd->add_option("--out,-o", out, "Output CSV path (stdout when absent)");

  auto* list_cmd = app.add_subcommand("list", "List recipes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (list_cmd->parsed()) {
    std::cout << recipe_list();
    return 0;
  }

  try {
    return run(recipe, config_path, scale, seed, out);
  } catch (const hoa::lab::ConfigError& e) {
    std::cerr << "config error:\n";
    for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
    return kConfigError;
  } catch (const hoa::ParseError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const hoa::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hoa::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hoa::SizeLimitError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}
