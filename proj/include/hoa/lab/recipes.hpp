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

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoa/hoa.hpp"
#include "hoa/lab/config.hpp"
#include "hoa/lab/csv.hpp"

namespace hoa::lab {

struct RecipeInfo {
  std::string name;
  bool stochastic;
  std::string summary;
};

inline const std::vector<RecipeInfo>& recipes() {
  static const std::vector<RecipeInfo> list = {
      {"dt-sweep", false, "energy error versus step size for several stencil sizes"},
      {"shots-sweep", true, "shot-noise error versus measurement budget"},
      {"noise-sweep", true, "energy error versus step size under amplitude damping"},
      {"direct-iter", false, "power iteration with exact and stencil Hamiltonians"},
      {"qfd", false, "filter diagonalization energy versus basis size"},
      {"vqe-compare", true, "variational baseline against filter diagonalization cost"},
      {"trotter-error", false, "product-formula error against stencil error"},
      {"stencil-table", false, "exact stencil weights as fractions"},
      {"error-budget", false, "truncation and round-off bounds with measured errors"},
  };
  return list;
}

inline const RecipeInfo* find_recipe(std::string_view name) {
  for (const auto& r : recipes()) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace detail {

inline KeyValues heisenberg_defaults(const std::string& n, const std::string& h, const std::string& boundary,
                                     const std::string& coupling) {
  return {{"model.type", "heisenberg"}, {"model.n", n},
          {"model.J", "1"},             {"model.h", h},
          {"model.boundary", boundary}, {"model.coupling", coupling},
          {"state.type", "uniform"},    {"backend.type", "exact"},
          {"backend.r", "1"}};
}

inline void merge(KeyValues& into, const KeyValues& from) {
  for (const auto& [k, v] : from) into[k] = v;
}

}  // namespace detail

/// Values used when the configuration leaves a key out.
inline KeyValues recipe_defaults(const std::string& recipe, Scale scale) {
  const bool paper = scale == Scale::paper;
  KeyValues d;
  if (recipe == "dt-sweep") {
    d = detail::heisenberg_defaults("8", "0.1", "open", "antiferromagnetic");
    detail::merge(d, {{"hoa.S", "3,5,7,9"}, {"hoa.shift", "centered"}, {"hoa.k", "1"}, {"hoa.dt_min", "0.01"},
                      {"hoa.dt_max", "1"}, {"hoa.dt_points", paper ? "41" : "21"}});
  } else if (recipe == "shots-sweep") {
    d = detail::heisenberg_defaults("8", "0.1", "open", "antiferromagnetic");
    detail::merge(d, {{"hoa.S", "5"}, {"hoa.shift", "centered"}, {"hoa.dt", "0.5"},
                      {"measure.shots", paper ? "1e3,1e4,1e5,1e6,1e7,1e8,1e9" : "1e3,1e4,1e5,1e6,1e7"},
                      {"measure.repeats", "150"}});
  } else if (recipe == "noise-sweep") {
    d = detail::heisenberg_defaults(paper ? "8" : "3", "0.1", "open", "antiferromagnetic");
    detail::merge(d, {{"hoa.S", "5"}, {"hoa.shift", "centered"}, {"hoa.dt_list", "0.05,0.1,0.2,0.3,0.5,1,2"},
                      {"noise.gamma", "0.1"}, {"noise.trajectories", paper ? "1e9" : "1e5"},
                      {"measure.repeats", "10"}});
  } else if (recipe == "direct-iter") {
    d = detail::heisenberg_defaults("6", "1", "open", "antiferromagnetic");
    detail::merge(d, {{"state.type", "neel"}, {"hoa.S", "5"}, {"hoa.shift", "centered"},
                      {"hoa.dt", "0.017782794100389229"}, {"solver.K", paper ? "10" : "4"}, {"solver.shift", "0"}});
  } else if (recipe == "qfd") {
    d = {{"model.type", "hubbard"}, {"state.type", "uniform"}, {"backend.type", "exact"}, {"backend.r", "1"}};
    detail::merge(d, {{"hoa.S", "5"}, {"hoa.shift", "centered"}, {"hoa.dt", "0.01"},
                      {"solver.kmax", paper ? "8" : "4"}, {"solver.threshold", "1e-12"}});
  } else if (recipe == "vqe-compare") {
    d = detail::heisenberg_defaults(paper ? "14" : "6", "1", "ring", "antiferromagnetic");
    detail::merge(d, {{"state.type", "neel"}, {"backend.r", "7"}, {"hoa.S", "5"}, {"hoa.shift", "centered"},
                      {"hoa.dt", "0.01"}, {"solver.kmax", "4"}, {"solver.threshold", "1e-12"},
                      {"vqe.ansatz", "hea"}, {"vqe.depth", paper ? "10,20,40,60,80,100" : "1,2,4,6"},
                      {"vqe.iterations", paper ? "3000" : "1000"}, {"vqe.lr", "0.001"}});
  } else if (recipe == "trotter-error") {
    d = detail::heisenberg_defaults(paper ? "13" : "5", "0.1", "ring", "antiferromagnetic");
    detail::merge(d, {{"state.type", "neel"}, {"hoa.S", "25"}, {"hoa.shift", "centered"}, {"hoa.dt", "0.1"},
                      {"backend.r", paper ? "1,2,3,4,5,6,7" : "1,2,3,4,5"}});
  } else if (recipe == "stencil-table") {
    d = {{"hoa.S", paper ? "3,5,7,9,11,13,15,17,19,21,23,25" : "3,5,7,9"}, {"hoa.shift", "centered"},
         {"hoa.k", "1"}};
  } else if (recipe == "error-budget") {
    d = detail::heisenberg_defaults("8", "0.1", "open", "antiferromagnetic");
    detail::merge(d, {{"hoa.S", "3,5,7,9"}, {"hoa.shift", "centered"}, {"hoa.dt_min", "0.001"}, {"hoa.dt_max", "1"},
                      {"hoa.dt_points", "16"}, {"hoa.eps", "2.220446049250313e-16"}, {"hoa.norm", "exact"}});
  }
  return d;
}

inline KeyValues hubbard_defaults() {
  return {{"model.U", "1"}, {"model.J", "0.1"}, {"model.mu", "0.05"}, {"model.h", "0.001"}};
}

// ---------------------------------------------------------------------------
// Building blocks shared by validation and the recipes

struct Model {
  PauliSum h;
  std::optional<HeisenbergParams> heisenberg;
};

inline Model build_model(const Config& c) {
  const auto& type = c.text("model.type");
  if (type == "hubbard") {
    return {hubbard_2x2_jw(HubbardParams{c.real("model.U"), c.real("model.J"), c.real("model.mu"), c.real("model.h")}),
            std::nullopt};
  }
  if (type == "file") return {load_pauli_file(c.text("model.path")), std::nullopt};
  HeisenbergParams p;
  p.n = static_cast<std::size_t>(c.integer("model.n"));
  p.J = c.real("model.J");
  p.h = c.real("model.h");
  p.boundary = c.text("model.boundary") == "ring" ? Boundary::ring : Boundary::open;
  p.coupling = c.text("model.coupling") == "antiferromagnetic" ? Coupling::antiferromagnetic : Coupling::ferromagnetic;
  return {heisenberg(p), p};
}

inline StateVector build_state(const Config& c, std::size_t n) {
  const auto& type = c.text("state.type");
  if (type == "neel") return neel_state(n);
  if (type == "basis") return basis_state(n, c.text("state.bits"));
  return uniform_state(n);
}

inline StencilScheme build_scheme(const Config& c, int S, int k = 1) {
  const auto& shift = c.text("hoa.shift");
  if (shift == "centered") return stencil_coefficients(S, (S - 1) / 2, k);
  return stencil_coefficients(S, static_cast<int>(c.integer("hoa.shift")), k);
}

/// Explicit list when given, otherwise a log-spaced grid.
inline std::vector<double> dt_grid(const Config& c) {
  if (c.has("hoa.dt_list")) return c.reals("hoa.dt_list");
  const double lo = std::log10(c.real("hoa.dt_min"));
  const double hi = std::log10(c.real("hoa.dt_max"));
  const auto points = static_cast<int>(c.integer("hoa.dt_points"));
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(std::pow(10.0, lo + (hi - lo) * i / (points - 1)));
  return out;
}

inline std::vector<int> stencil_sizes(const Config& c) {
  std::vector<int> out;
  for (long long s : c.integers("hoa.S")) out.push_back(static_cast<int>(s));
  return out;
}

/// Runs `f` with the configured evolver: the exact propagator or an r-step circuit.
template <class F>
decltype(auto) with_evolver(const Config& c, const Model& m, const Propagator& exact, F&& f) {
  if (c.text("backend.type") == "trotter") {
    return f(TrotterEvolver(*m.heisenberg, static_cast<int>(c.integers("backend.r").front())));
  }
  return f(exact);
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void require(std::vector<std::string>& issues, bool ok, const std::string& message) {
  if (!ok) issues.push_back(message);
}

/// Runs a check, converting parse failures into issues.
inline void attempt(std::vector<std::string>& issues, const std::function<void()>& check) {
  try {
    check();
  } catch (const ConfigError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
}

inline bool is_count(double v) { return v >= 1.0 && v == std::floor(v) && v < 9e18; }

inline void semantic_checks(const Config& c, const RecipeInfo& info, std::vector<std::string>& issues) {
  const auto& v = c.values();
  auto has = [&](const char* k) { return v.count(k) > 0; };
  const bool heis = has("model.type") && c.text("model.type") == "heisenberg";

  if (has("model.type")) {
    const auto& type = c.text("model.type");
    if (type == "heisenberg" && has("model.n")) {
      attempt(issues, [&] {
        const auto n = c.integer("model.n");
        require(issues, n >= 2 && n <= static_cast<long long>(kDefaultDenseQubitCap),
                "model.n: " + std::to_string(n) + " is outside [2, " + std::to_string(kDefaultDenseQubitCap) + "]");
      });
    }
    if (type == "file") require(issues, has("model.path"), "model.path: required when model.type = file");
    if (c.has("backend.type") && c.text("backend.type") == "trotter") {
      require(issues, heis, "backend.type: trotter circuits are only compiled for the heisenberg model");
    }
    if ((info.name == "trotter-error" || info.name == "vqe-compare") && !heis) {
      issues.push_back("model.type: recipe '" + info.name + "' needs the heisenberg model");
    }
  }
  if (has("state.type") && c.text("state.type") == "basis") {
    require(issues, has("state.bits"), "state.bits: required when state.type = basis");
    if (has("state.bits") && heis && has("model.n")) {
      attempt(issues, [&] {
        const auto& bits = c.text("state.bits");
        require(issues, bits.size() == static_cast<std::size_t>(c.integer("model.n")),
                "state.bits: length " + std::to_string(bits.size()) + " does not match model.n");
        require(issues, bits.find_first_not_of("01") == std::string::npos, "state.bits: only 0 and 1 are allowed");
      });
    }
  }

  if (has("hoa.S")) {
    attempt(issues, [&] {
      const auto sizes = c.integers("hoa.S");
      require(issues, !sizes.empty(), "hoa.S: at least one stencil size is required");
      const bool centered = has("hoa.shift") && c.text("hoa.shift") == "centered";
      long long shift = 0;
      const bool numeric_shift = has("hoa.shift") && !centered && detail::parse_int(c.text("hoa.shift"), shift);
      if (has("hoa.shift") && !centered && !numeric_shift) {
        issues.push_back("hoa.shift: expected 'centered' or an integer, got '" + c.text("hoa.shift") + "'");
      }
      std::vector<long long> ks{1};
      if (has("hoa.k")) ks = c.integers("hoa.k");
      for (long long S : sizes) {
        if (S < 2 || S > 61) {
          issues.push_back("hoa.S: " + std::to_string(S) + " is outside [2, 61]");
          continue;
        }
        if (centered && S % 2 == 0) {
          issues.push_back("hoa.S: S = " + std::to_string(S) +
                           " is even; a centered stencil puts (S-1)/2 points on each side and needs odd S");
        }
        if (numeric_shift) {
          require(issues, shift >= 0 && shift < S,
                  "hoa.shift: " + std::to_string(shift) + " is outside [0, " + std::to_string(S - 1) + "] for S = " +
                      std::to_string(S));
        }
        for (long long k : ks) {
          require(issues, k >= 1 && k < S,
                  "hoa.k: order " + std::to_string(k) + " needs 1 <= k < S (S = " + std::to_string(S) + ")");
        }
      }
    });
  }
  if (info.name != "stencil-table" && has("hoa.k")) {
    attempt(issues, [&] {
      for (long long k : c.integers("hoa.k")) {
        require(issues, k == 1 || info.name == "dt-sweep",
                "hoa.k: recipe '" + info.name + "' uses first-derivative stencils only");
      }
    });
  }
  if (has("hoa.dt")) attempt(issues, [&] { require(issues, c.real("hoa.dt") > 0, "hoa.dt: must be > 0"); });
  if (has("hoa.dt_list")) {
    attempt(issues, [&] {
      for (double x : c.reals("hoa.dt_list")) require(issues, x > 0, "hoa.dt_list: every step must be > 0");
    });
  } else if (has("hoa.dt_min") || has("hoa.dt_max") || has("hoa.dt_points")) {
    attempt(issues, [&] {
      const double lo = c.real("hoa.dt_min"), hi = c.real("hoa.dt_max");
      require(issues, lo > 0, "hoa.dt_min: must be > 0");
      require(issues, hi > lo, "hoa.dt_max: must exceed hoa.dt_min");
      require(issues, c.integer("hoa.dt_points") >= 2, "hoa.dt_points: need at least 2 points");
    });
  }
  if (has("hoa.eps")) attempt(issues, [&] { require(issues, c.real("hoa.eps") > 0, "hoa.eps: must be > 0"); });
  if (has("backend.r")) {
    attempt(issues, [&] {
      for (long long r : c.integers("backend.r")) require(issues, r >= 1, "backend.r: Trotter steps must be >= 1");
    });
  }
  if (has("measure.shots")) {
    attempt(issues, [&] {
      for (double s : c.reals("measure.shots")) {
        require(issues, is_count(s), "measure.shots: '" + hoa::detail::format_double(s) + "' is not a positive integer");
      }
    });
  }
  if (has("measure.repeats")) {
    attempt(issues, [&] { require(issues, c.integer("measure.repeats") >= 1, "measure.repeats: must be >= 1"); });
  }
  if (has("noise.gamma")) {
    attempt(issues, [&] {
      const double g = c.real("noise.gamma");
      require(issues, g >= 0, "noise.gamma: must be >= 0");
      if (has("noise.substep")) {
        const double s = c.real("noise.substep");
        require(issues, s > 0, "noise.substep: must be > 0");
        require(issues, g * s <= NoiseConfig::kMaxRateStep * (1 + 1e-12),
                "noise.substep: gamma * substep must not exceed " + hoa::detail::format_double(NoiseConfig::kMaxRateStep));
      }
    });
  }
  if (has("noise.trajectories")) {
    attempt(issues, [&] {
      require(issues, is_count(c.real("noise.trajectories")), "noise.trajectories: must be a positive integer");
    });
  }
  if (has("solver.K")) attempt(issues, [&] { require(issues, c.integer("solver.K") >= 0, "solver.K: must be >= 0"); });
  if (has("solver.kmax")) {
    attempt(issues, [&] { require(issues, c.integer("solver.kmax") >= 0, "solver.kmax: must be >= 0"); });
  }
  if (has("solver.kappa")) {
    attempt(issues, [&] { require(issues, c.real("solver.kappa") > 0, "solver.kappa: must be > 0"); });
  }
  if (has("solver.threshold")) {
    attempt(issues, [&] {
      const double t = c.real("solver.threshold");
      require(issues, t > 0 && t < 1, "solver.threshold: must lie in (0, 1)");
    });
  }
  if (has("vqe.depth")) {
    attempt(issues, [&] {
      for (long long d : c.integers("vqe.depth")) require(issues, d >= 1, "vqe.depth: must be >= 1");
    });
  }
  if (has("vqe.iterations")) {
    attempt(issues, [&] { require(issues, c.integer("vqe.iterations") >= 0, "vqe.iterations: must be >= 0"); });
  }
  if (has("vqe.lr")) attempt(issues, [&] { require(issues, c.real("vqe.lr") > 0, "vqe.lr: must be > 0"); });
  if (has("vqe.shots")) {
    attempt(issues, [&] { require(issues, is_count(c.real("vqe.shots")), "vqe.shots: must be a positive integer"); });
  }
  if (has("vqe.ansatz") && c.text("vqe.ansatz") == "hva") require(issues, heis, "vqe.ansatz: hva needs the heisenberg model");
  if (has("seed")) {
    attempt(issues, [&] {
      const double s = c.real("seed");
      require(issues, s >= 0 && s == std::floor(s) && s < 1.8e19, "seed: must be a non-negative integer");
    });
  }
  if (info.stochastic && !has("seed")) {
    issues.push_back("seed: required for stochastic recipe '" + info.name + "'");
  }
}

}  // namespace detail

/// Merges defaults, user values and command-line overrides, then checks
/// everything. All problems are reported together.
inline Config resolve(const std::string& recipe, Scale scale, const KeyValues& user,
                      std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<std::string> output = std::nullopt) {
  const RecipeInfo* info = find_recipe(recipe);
  if (!info) {
    std::string known;
    for (const auto& r : recipes()) known += (known.empty() ? "" : ", ") + r.name;
    throw ConfigError({"recipe: unknown '" + recipe + "' (known: " + known + ")"});
  }
  std::vector<std::string> issues;
  for (const auto& [k, v] : user) {
    if (auto issue = check_value(k, v); !issue.empty()) issues.push_back(issue);
  }

  KeyValues merged = recipe_defaults(recipe, scale);
  const auto type_it = user.find("model.type");
  const std::string type = type_it != user.end() ? type_it->second : (merged.count("model.type") ? merged["model.type"] : "");
  if (type == "hubbard") {
    detail::merge(merged, hubbard_defaults());
    merged.erase("model.n");
    merged.erase("model.boundary");
    merged.erase("model.coupling");
  }
  if (type == "heisenberg") {
    const KeyValues base = detail::heisenberg_defaults("8", "0.1", "open", "antiferromagnetic");
    for (const char* k : {"model.n", "model.J", "model.h", "model.boundary", "model.coupling"}) merged.emplace(k, base.at(k));
  }
  if (type == "file") {
    for (const char* k : {"model.n", "model.J", "model.h", "model.boundary", "model.coupling"}) merged.erase(k);
  }
  if (user.count("hoa.dt_list")) {
    for (const char* k : {"hoa.dt_min", "hoa.dt_max", "hoa.dt_points"}) merged.erase(k);
  }
  detail::merge(merged, user);
  if (seed) merged["seed"] = std::to_string(*seed);
  if (output) merged["output"] = *output;
  if (merged.count("noise.gamma") && !merged.count("noise.substep")) {
    double g = 0.0;
    if (hoa::detail::parse_double(merged["noise.gamma"], g) && g >= 0) {
      merged["noise.substep"] = hoa::detail::format_double(NoiseConfig::default_substep(g));
    }
  }

  Config cfg(recipe, scale, merged);
  detail::semantic_checks(cfg, *info, issues);
  if (issues.empty() && cfg.has("model.type") && cfg.text("model.type") == "file") {
    try {
      const auto h = load_pauli_file(cfg.text("model.path"));
      if (h.n_qubits() > kDefaultDenseQubitCap) {
        issues.push_back("model.path: " + std::to_string(h.n_qubits()) + " qubits exceed the dense cap of " +
                         std::to_string(kDefaultDenseQubitCap));
      }
    } catch (const Error& e) {
      issues.push_back("model.path: " + std::string(e.what()));
    }
  }
  if (!issues.empty()) throw ConfigError(issues);

  const bool needs_kappa = recipe == "qfd" || recipe == "vqe-compare";
  if (needs_kappa && !cfg.has("solver.kappa")) {
    try {
      const auto m = build_model(cfg);
      cfg.set("solver.kappa", hoa::detail::format_double(spectral_bound(m.h, BoundMethod::gershgorin).kappa));
    } catch (const Error& e) {
      throw ConfigError({std::string("model: ") + e.what()});
    }
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Recipes

struct RecipeOutput {
  std::string csv;
  /// Additional tables keyed by file-name suffix.
  std::vector<std::pair<std::string, std::string>> extras;
};

namespace detail {

inline void stamp(CsvTable& t, const Config& c) {
  t.meta(std::string("hoa-lab ") + kVersion);
  t.meta("recipe " + c.recipe());
  t.meta("scale " + std::string(to_string(c.scale())));
  t.meta("seed " + (c.has("seed") ? c.text("seed") : std::string("none")));
  for (const auto& [k, v] : c.values()) t.meta("config " + k + " = " + v);
}

inline double exact_power(const PauliSum& h, const StateVector& psi, int k) {
  Amplitudes v = psi.amplitudes();
  for (int i = 0; i < k / 2; ++i) v = apply_operator(h, v);
  if (k % 2 == 0) return v.squaredNorm();
  return overlap(v, apply_operator(h, v)).real();
}

inline std::uint64_t as_count(double v) { return static_cast<std::uint64_t>(std::llround(v)); }

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  void add(double x) { sum += x, sum_sq += x * x, ++n; }
  double mean() const { return sum / static_cast<double>(n); }
  double stddev() const {
    if (n < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1)));
  }
};

inline RecipeOutput dt_sweep(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  CsvTable t({"S", "dt", "delta_E", "k", "estimate", "imag", "exact"});
  stamp(t, c);
  const auto dts = dt_grid(c);
  for (int S : stencil_sizes(c)) {
    for (long long kk : c.integers("hoa.k")) {
      const int k = static_cast<int>(kk);
      const double exact = exact_power(m.h, psi, k);
      const auto scheme = build_scheme(c, S, k);
      for (double dt : dts) {
        const HoaConfig cfg(scheme, dt);
        const Complex e = with_evolver(c, m, p, [&](const auto& ev) { return hoa_power_expectation(ev, psi, cfg, k); });
        t.row(S, dt, std::abs(e.real() - exact), k, e.real(), e.imag(), exact);
      }
    }
  }
  return {t.render(), {}};
}

inline RecipeOutput shots_sweep(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const double truth = expectation(m.h, psi);
  const double dt = c.real("hoa.dt");
  const auto repeats = c.integer("measure.repeats");
  const auto shots = c.reals("measure.shots");
  CsvTable t({"S", "shots", "repeats", "mean_abs_dE", "std_energy", "mean_abs_dE_true", "mean_std_error", "analytic"});
  stamp(t, c);
  const auto sizes = stencil_sizes(c);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const HoaConfig cfg(build_scheme(c, sizes[si]), dt);
    with_evolver(c, m, p, [&](const auto& ev) {
      const double analytic = hoa_expectation(ev, psi, cfg).real();
      for (std::size_t j = 0; j < shots.size(); ++j) {
        Rng rng(child_seed(child_seed(c.seed(), si), j));
        Moments err, energy, err_true, se;
        for (long long r = 0; r < repeats; ++r) {
          const auto est = sampled_hoa_energy(ev, psi, cfg, as_count(shots[j]), rng);
          err.add(std::abs(est.energy.real() - analytic));
          energy.add(est.energy.real());
          err_true.add(std::abs(est.energy.real() - truth));
          se.add(est.std_error());
        }
        t.row(sizes[si], as_count(shots[j]), repeats, err.mean(), energy.stddev(), err_true.mean(), se.mean(), analytic);
      }
    });
  }
  return {t.render(), {}};
}

inline RecipeOutput noise_sweep(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const double truth = expectation(m.h, psi);
  const auto repeats = c.integer("measure.repeats");
  const auto trajectories = as_count(c.real("noise.trajectories"));
  const NoiseConfig noise(c.real("noise.gamma"), c.real("noise.substep"), trajectories);
  CsvTable t({"S", "dt", "gamma", "trajectories", "mean_abs_dE", "std_abs_dE", "mean_jumps", "ideal_abs_dE"});
  stamp(t, c);
  const auto sizes = stencil_sizes(c);
  const auto dts = dt_grid(c);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (std::size_t j = 0; j < dts.size(); ++j) {
      const HoaConfig cfg(build_scheme(c, sizes[si]), dts[j]);
      const double ideal = std::abs(hoa_expectation(p, psi, cfg).real() - truth);
      Rng rng(child_seed(child_seed(c.seed(), si), j));
      Moments err, jumps;
      for (long long r = 0; r < repeats; ++r) {
        const auto est = noisy_hoa_energy(p, psi, cfg, noise, trajectories, rng);
        err.add(std::abs(est.energy.real() - truth));
        jumps.add(est.mean_jumps());
      }
      t.row(sizes[si], dts[j], noise.gamma, trajectories, err.mean(), err.stddev(), jumps.mean(), ideal);
    }
  }
  return {t.render(), {}};
}

inline RecipeOutput direct_iter(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const auto K = static_cast<int>(c.integer("solver.K"));
  const double shift = c.real("solver.shift");
  const HoaConfig cfg(build_scheme(c, stencil_sizes(c).front()), c.real("hoa.dt"));
  const auto exact = direct_iteration(m.h, p, psi, {K, std::nullopt, shift});
  const auto approx = with_evolver(c, m, p, [&](const auto& ev) { return direct_iteration(m.h, ev, psi, {K, cfg, shift}); });
  const double ground = p.ground_energy();
  CsvTable t({"iteration", "energy_exact_mode", "energy_hoa_mode", "hoa_estimate", "error_exact_mode",
              "error_hoa_mode", "mode_gap"});
  stamp(t, c);
  t.meta("ground_energy " + hoa::detail::format_double(ground));
  for (int k = 0; k <= K; ++k) {
    const double a = exact.energies[k], b = approx.energies[k];
    t.row(k, a, b, approx.hoa_energies[k], a - ground, b - ground, std::abs(a - b));
  }
  return {t.render(), {}};
}

inline bool aligned_grid(double dt, double kappa) { return std::abs(dt * kappa - 1.0) < 1e-9; }

inline RecipeOutput qfd(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const int S = stencil_sizes(c).front();
  const double dt = c.real("hoa.dt");
  QfdConfig q{static_cast<int>(c.integer("solver.kmax")), c.real("solver.kappa"), {psi}};
  q.threshold = c.real("solver.threshold");
  const auto exact = with_evolver(c, m, p, [&](const auto& ev) { return qfd_sweep(m.h, ev, q); });
  q.hoa = HoaConfig(build_scheme(c, S), dt);
  const auto approx = with_evolver(c, m, p, [&](const auto& ev) { return qfd_sweep(m.h, ev, q); });
  const double ground = p.ground_energy();
  CsvTable t({"k_max", "basis_dim", "retained_exact", "energy_exact", "retained_hoa", "energy_hoa", "mode_gap",
              "error_exact", "error_hoa", "unique_overlaps"});
  stamp(t, c);
  t.meta("ground_energy " + hoa::detail::format_double(ground));
  for (int k = 0; k <= q.k_max; ++k) {
    const auto& a = exact[k];
    const auto& b = approx[k];
    t.row(k, a.basis_dim, a.retained_dim, a.lowest(), b.retained_dim, b.lowest(), std::abs(a.lowest() - b.lowest()),
          a.lowest() - ground, b.lowest() - ground, unique_overlap_count(k, S, aligned_grid(dt, q.kappa)));
  }
  return {t.render(), {}};
}

inline RecipeOutput vqe_compare(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const double ground = p.ground_energy();
  const auto layout = c.text("vqe.ansatz") == "hva" ? Ansatz::hva : Ansatz::hea;
  CsvTable t({"method", "size", "gates", "parameters", "circuits", "energy", "rel_error"});
  CsvTable trace({"depth", "iteration", "energy", "gradient_norm"});
  stamp(t, c);
  stamp(trace, c);
  t.meta("ground_energy " + hoa::detail::format_double(ground));

  const auto depths = c.integers("vqe.depth");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    VqeOptions opt;
    opt.iterations = static_cast<int>(c.integer("vqe.iterations"));
    opt.learning_rate = c.real("vqe.lr");
    opt.seed = child_seed(c.seed(), i);
    if (c.has("vqe.shots")) opt.shots = as_count(c.real("vqe.shots"));
    const int depth = static_cast<int>(depths[i]);
    const auto circuit = layout == Ansatz::hea ? hea_circuit(m.h.n_qubits(), depth) : hva_circuit(*m.heisenberg, depth);
    const auto run = vqe_run(m.h, circuit, opt);
    const double e = run.energies.back();
    t.row("vqe", depth, run.gate_count, circuit.n_params(), m.h.terms().size(), e, std::abs((e - ground) / ground));
    for (std::size_t it = 0; it < run.energies.size(); ++it) {
      trace.row(depth, it, run.energies[it], it < run.gradient_norms.size() ? run.gradient_norms[it] : 0.0);
    }
  }

  const auto psi = build_state(c, m.h.n_qubits());
  const int S = stencil_sizes(c).front();
  const double dt = c.real("hoa.dt");
  QfdConfig q{static_cast<int>(c.integer("solver.kmax")), c.real("solver.kappa"), {psi}};
  q.threshold = c.real("solver.threshold");
  q.hoa = HoaConfig(build_scheme(c, S), dt);
  const int r = static_cast<int>(c.integers("backend.r").front());
  const auto sweep = with_evolver(c, m, p, [&](const auto& ev) { return qfd_sweep(m.h, ev, q); });
  const auto gates = count_trotter_gates({*m.heisenberg, 1.0, r}).total;
  for (int k = 0; k <= q.k_max; ++k) {
    const double e = sweep[k].lowest();
    t.row("qfd-hoa", k, gates, 0, unique_overlap_count(k, S, aligned_grid(dt, q.kappa)), e,
          std::abs((e - ground) / ground));
  }
  return {t.render(), {{".trace.csv", trace.render()}}};
}

inline RecipeOutput trotter_error(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const int S = stencil_sizes(c).front();
  const double dt = c.real("hoa.dt");
  const HoaConfig cfg(build_scheme(c, S), dt);
  const double truth = expectation(m.h, psi);
  const double exact_hoa = hoa_expectation(p, psi, cfg).real();
  CsvTable t({"r", "gates", "reference_gates", "energy_trotter_hoa", "energy_exact_hoa", "energy_true",
              "trotter_deviation", "hoa_error", "ratio"});
  stamp(t, c);
  for (long long rr : c.integers("backend.r")) {
    const int r = static_cast<int>(rr);
    const double trot = trotterized_hoa_energy(*m.heisenberg, psi, cfg, r).real();
    const auto report = count_trotter_gates({*m.heisenberg, 0.5 * (S - 1) * dt, r});
    const double dev = std::abs(trot - exact_hoa);
    const double err = std::abs(exact_hoa - truth);
    t.row(r, report.total, report.reference_total, trot, exact_hoa, truth, dev, err, err > 0 ? dev / err : 0.0);
    std::istringstream lines(format_gate_report(report));
    for (std::string line; std::getline(lines, line);) {
      if (!line.empty()) t.meta("gates r=" + std::to_string(r) + " " + line);
    }
  }
  return {t.render(), {}};
}

inline RecipeOutput stencil_table(const Config& c) {
  CsvTable t({"S", "shift", "k", "offset", "weight", "value", "effective_order", "truncation_constant"});
  stamp(t, c);
  for (int S : stencil_sizes(c)) {
    for (long long k : c.integers("hoa.k")) {
      const auto scheme = build_scheme(c, S, static_cast<int>(k));
      const double trunc = truncation_constant(scheme);
      const int order = effective_order(scheme);
      for (std::size_t i = 0; i < scheme.offsets().size(); ++i) {
        t.row(S, scheme.shift(), k, scheme.offsets()[i], hoa::to_string(scheme.weights()[i]), scheme.values()[i], order, trunc);
      }
    }
  }
  return {t.render(), {}};
}

inline RecipeOutput error_budget_table(const Config& c) {
  const auto m = build_model(c);
  const Propagator p(m.h);
  const auto psi = build_state(c, m.h.n_qubits());
  const double truth = expectation(m.h, psi);
  const auto how = c.text("hoa.norm") == "exact" ? NormEstimate::exact : NormEstimate::coefficient_sum;
  const double norm = operator_norm(m.h, how);
  const double eps = c.real("hoa.eps");
  CsvTable t({"S", "dt", "eps_appr", "eps_num", "eps_total", "dt_star", "measured_delta_E"});
  stamp(t, c);
  t.meta("operator_norm " + hoa::detail::format_double(norm));
  for (int S : stencil_sizes(c)) {
    const auto scheme = build_scheme(c, S);
    for (double dt : dt_grid(c)) {
      const HoaConfig cfg(scheme, dt);
      const auto b = error_budget(norm, cfg, eps);
      const double measured =
          std::abs(with_evolver(c, m, p, [&](const auto& ev) { return hoa_expectation(ev, psi, cfg); }).real() - truth);
      t.row(S, dt, b.eps_appr, b.eps_num, b.eps_total, b.dt_star, measured);
    }
  }
  return {t.render(), {}};
}

}  // namespace detail

/// Executes a resolved configuration and returns its tables.
inline RecipeOutput run_recipe(const Config& c) {
  const auto& r = c.recipe();
  if (r == "dt-sweep") return detail::dt_sweep(c);
  if (r == "shots-sweep") return detail::shots_sweep(c);
  if (r == "noise-sweep") return detail::noise_sweep(c);
  if (r == "direct-iter") return detail::direct_iter(c);
  if (r == "qfd") return detail::qfd(c);
  if (r == "vqe-compare") return detail::vqe_compare(c);
  if (r == "trotter-error") return detail::trotter_error(c);
  if (r == "stencil-table") return detail::stencil_table(c);
  if (r == "error-budget") return detail::error_budget_table(c);
  throw ConfigError({"recipe: unknown '" + r + "'"});
}

}  // namespace hoa::lab
