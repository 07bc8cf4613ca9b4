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
#include <complex>
#include <map>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "hoa/error.hpp"
#include "hoa/propagator.hpp"
#include "hoa/spectral.hpp"
#include "hoa/statevector.hpp"
#include "hoa/stencil.hpp"

namespace hoa {

/// Stencil plus time step: H^k ~ (1/(-i dt)^k) sum_n q_n U(n dt).
struct HoaConfig {
  StencilScheme scheme;
  double dt;

  HoaConfig(StencilScheme s, double step) : scheme(std::move(s)), dt(step) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("HoaConfig: dt must be positive and finite");
  }

  /// Longest evolution time touched by the stencil.
  double max_time() const { return scheme.reach() * dt; }
};

/// Survival amplitudes <psi|U(n dt)|psi> keyed by offset n.
using OverlapTable = std::map<int, Complex>;

template <Evolver E>
OverlapTable stencil_overlaps(const E& evolver, const Amplitudes& psi, const HoaConfig& cfg) {
  OverlapTable out;
  for (int n : cfg.scheme.offsets()) {
    if (cfg.scheme.weight(n) == 0) continue;
    out[n] = overlap(psi, evolver.evolve(psi, n * cfg.dt));
  }
  return out;
}

/// (1/(-i dt)^k) sum_n q_n O_n.
inline Complex combine_overlaps(const OverlapTable& table, const HoaConfig& cfg) {
  Complex acc{0.0, 0.0};
  for (const auto& [n, o] : table) acc += cfg.scheme.value(n) * o;
  const Complex minus_i_dt(0.0, -cfg.dt);
  return acc / std::pow(minus_i_dt, cfg.scheme.order());
}

/// -(2/dt) sum_{n>0} q_n Im O_n: the energy when only imaginary parts are
/// read out. Requires an antisymmetric first-derivative scheme.
inline double collapsed_energy(const std::map<int, double>& imag_parts, const HoaConfig& cfg) {
  if (!cfg.scheme.is_antisymmetric() || cfg.scheme.order() != 1) {
    throw InvalidArgument("collapsed_energy: needs a centered first-derivative scheme");
  }
  double acc = 0.0;
  for (const auto& [n, im] : imag_parts) {
    if (n > 0) acc += cfg.scheme.value(n) * im;
  }
  return -2.0 / cfg.dt * acc;
}

/// <H> ~ (i/dt) sum_n q_n <psi|U(n dt)|psi>. The imaginary part is kept as a
/// diagnostic.
template <Evolver E>
Complex hoa_expectation(const E& evolver, const Amplitudes& psi, const HoaConfig& cfg) {
  if (cfg.scheme.order() != 1) {
    throw InvalidArgument("hoa_expectation: scheme order must be 1, got " + std::to_string(cfg.scheme.order()));
  }
  return combine_overlaps(stencil_overlaps(evolver, psi, cfg), cfg);
}

template <Evolver E>
Complex hoa_expectation(const E& evolver, const StateVector& psi, const HoaConfig& cfg) {
  return hoa_expectation(evolver, psi.amplitudes(), cfg);
}

/// <H^k> for k = scheme order.
template <Evolver E>
Complex hoa_power_expectation(const E& evolver, const Amplitudes& psi, const HoaConfig& cfg, int k) {
  if (k != cfg.scheme.order()) {
    throw InvalidArgument("hoa_power_expectation: scheme order " + std::to_string(cfg.scheme.order()) +
                          " does not match k=" + std::to_string(k));
  }
  if (k >= cfg.scheme.points()) throw InvalidArgument("hoa_power_expectation: k must be below S");
  return combine_overlaps(stencil_overlaps(evolver, psi, cfg), cfg);
}

template <Evolver E>
Complex hoa_power_expectation(const E& evolver, const StateVector& psi, const HoaConfig& cfg, int k) {
  return hoa_power_expectation(evolver, psi.amplitudes(), cfg, k);
}

/// H^k psi ~ (1/(-i dt)^k) sum_n q_n U(n dt) psi, left unnormalized.
template <Evolver E>
Amplitudes hoa_apply(const E& evolver, const Amplitudes& psi, const HoaConfig& cfg) {
  Amplitudes acc = Amplitudes::Zero(psi.size());
  for (int n : cfg.scheme.offsets()) {
    if (cfg.scheme.weight(n) == 0) continue;
    acc += cfg.scheme.value(n) * evolver.evolve(psi, n * cfg.dt);
  }
  const Complex minus_i_dt(0.0, -cfg.dt);
  return acc / std::pow(minus_i_dt, cfg.scheme.order());
}

template <Evolver E>
Amplitudes hoa_apply(const E& evolver, const StateVector& psi, const HoaConfig& cfg) {
  return hoa_apply(evolver, psi.amplitudes(), cfg);
}

/// Truncation versus round-off trade-off for one scheme.
struct ErrorBudget {
  double eps_appr = 0.0;
  double eps_num = 0.0;
  double eps_total = 0.0;
  double dt_star = 0.0;
  int order = 0;
  double truncation_constant = 0.0;
};

namespace detail {

struct BudgetTerms {
  double c;
  int order;
  int power;
  double norm;
  double weight_sum;
  double eps;

  double appr(double dt) const { return c * std::pow(dt, order) * std::pow(norm, power); }
  double num(double dt) const { return eps * weight_sum / dt; }
  double total(double dt) const { return appr(dt) + num(dt); }
};

}  // namespace detail

/// eps_appr = C dt^order |H|^p and eps_num = eps sum|q| / dt, with p the
/// leading residual power. dt_star minimizes their sum.
inline ErrorBudget error_budget(double h_norm, const HoaConfig& cfg, double eps_machine) {
  if (!(h_norm >= 0.0)) throw InvalidArgument("error_budget: norm must be non-negative");
  const detail::BudgetTerms t{truncation_constant(cfg.scheme), effective_order(cfg.scheme),
                              leading_residual_power(cfg.scheme), h_norm, cfg.scheme.abs_weight_sum(),
                              eps_machine};
  ErrorBudget b;
  b.order = t.order;
  b.truncation_constant = t.c;
  b.eps_appr = t.appr(cfg.dt);
  b.eps_num = t.num(cfg.dt);
  b.eps_total = b.eps_appr + b.eps_num;

  // Coarse log grid, then Brent refinement around the best cell.
  constexpr int kGrid = 401;
  constexpr double kLo = -12.0;
  constexpr double kHi = 2.0;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double v = t.total(std::pow(10.0, kLo + (kHi - kLo) * i / (kGrid - 1)));
    if (v < best_val) best_val = v, best = i;
  }
  const double cell = (kHi - kLo) / (kGrid - 1);
  const double a = kLo + cell * std::max(best - 1, 0);
  const double c = kLo + cell * std::min(best + 1, kGrid - 1);
  const auto res = boost::math::tools::brent_find_minima(
      [&](double log_dt) { return t.total(std::pow(10.0, log_dt)); }, a, c, 50);
  b.dt_star = std::pow(10.0, res.first);
  return b;
}

enum class NormEstimate { exact, coefficient_sum };

inline double operator_norm(const PauliSum& h, NormEstimate how) {
  if (how == NormEstimate::coefficient_sum) return coefficient_norm(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline ErrorBudget error_budget(const PauliSum& h, const HoaConfig& cfg, double eps_machine,
                                NormEstimate how = NormEstimate::coefficient_sum) {
  return error_budget(operator_norm(h, how), cfg, eps_machine);
}

}  // namespace hoa
