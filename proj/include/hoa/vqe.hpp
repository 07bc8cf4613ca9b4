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
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "hoa/circuit.hpp"
#include "hoa/measurement.hpp"
#include "hoa/models.hpp"

namespace hoa {

enum class Ansatz { hea, hva };

/// A gate whose angle is factor * theta[param]; param < 0 means fixed.
struct ParamGate {
  Gate gate;
  int param = -1;
  double factor = 1.0;
};

/// Layered ansatz acting on |0...0>. Every parameterized gate has the form
/// exp(-i theta/2 P) for a Pauli string P.
class ParamCircuit {
 public:
  ParamCircuit(std::size_t n_qubits, std::vector<ParamGate> gates, std::size_t n_params)
      : n_(n_qubits), gates_(std::move(gates)), n_params_(n_params) {}

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<ParamGate>& gates() const noexcept { return gates_; }
  std::size_t gate_count() const noexcept { return gates_.size(); }

  /// Concrete gates at theta; `shift` is added to the angle of gate
  /// `shifted` (before scaling) when given.
  GateSequence bind(const std::vector<double>& theta, std::optional<std::size_t> shifted = {}, double shift = 0.0) const {
    if (theta.size() != n_params_) {
      throw DimensionError("ParamCircuit: expected " + std::to_string(n_params_) + " parameters, got " +
                           std::to_string(theta.size()));
    }
    GateSequence seq{n_, {}};
    seq.gates.reserve(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      Gate g = gates_[i].gate;
      if (gates_[i].param >= 0) {
        double value = theta[static_cast<std::size_t>(gates_[i].param)];
        if (shifted && *shifted == i) value += shift;
        g.angle = gates_[i].factor * value;
      }
      seq.gates.push_back(g);
    }
    return seq;
  }

  Amplitudes state(const std::vector<double>& theta, std::optional<std::size_t> shifted = {}, double shift = 0.0) const {
    Amplitudes zero = Amplitudes::Zero(Eigen::Index{1} << n_);
    zero[0] = 1.0;
    return apply_sequence(bind(theta, shifted, shift), std::move(zero));
  }

 private:
  std::size_t n_;
  std::vector<ParamGate> gates_;
  std::size_t n_params_;
};

/// Hardware-efficient layers: RZ RX RZ on every qubit, then CNOT(q, q+1) down
/// the chain.
inline ParamCircuit hea_circuit(std::size_t n, int depth) {
  if (n < 1 || depth < 0) throw InvalidArgument("hea_circuit: need n >= 1 and depth >= 0");
  std::vector<ParamGate> gates;
  int p = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      gates.push_back({{GateKind::RZ, q}, p++});
      gates.push_back({{GateKind::RX, q}, p++});
      gates.push_back({{GateKind::RZ, q}, p++});
    }
    for (std::size_t q = 0; q + 1 < n; ++q) gates.push_back({{GateKind::CNOT, q, q + 1}});
  }
  return ParamCircuit(n, std::move(gates), static_cast<std::size_t>(p));
}

/// Hamiltonian-variational layers over the model's bonds: shared-angle XX,
/// YY and ZZ evolutions, a shared RZ field layer, then per-qubit RX and RZ.
inline ParamCircuit hva_circuit(const HeisenbergParams& model, int depth) {
  if (depth < 0) throw InvalidArgument("hva_circuit: depth must be >= 0");
  const std::size_t n = model.n;
  const auto bonds = model.bonds();
  std::vector<ParamGate> gates;
  int p = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (GateKind kind : {GateKind::XX, GateKind::YY, GateKind::ZZ}) {
      for (const auto& [a, b] : bonds) gates.push_back({{kind, a, b}, p, 0.5});
      ++p;
    }
    for (std::size_t q = 0; q < n; ++q) gates.push_back({{GateKind::RZ, q}, p});
    ++p;
    for (std::size_t q = 0; q < n; ++q) gates.push_back({{GateKind::RX, q}, p++});
    for (std::size_t q = 0; q < n; ++q) gates.push_back({{GateKind::RZ, q}, p++});
  }
  return ParamCircuit(n, std::move(gates), static_cast<std::size_t>(p));
}

inline void check_circuit(const ParamCircuit& c, const PauliSum& h) {
  if (c.n_qubits() != h.n_qubits()) throw DimensionError("vqe: circuit and Hamiltonian sizes differ");
}

/// <0|U+(theta) H U(theta)|0>.
inline double vqe_energy(const ParamCircuit& c, const std::vector<double>& theta, const PauliSum& h) {
  check_circuit(c, h);
  return expectation(h, c.state(theta));
}

/// Per-term shot sampling of <H>: each Pauli term is read with `shots`
/// +-1 outcomes.
inline double sampled_pauli_energy(const PauliSum& h, const Amplitudes& psi, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw InvalidArgument("sampled_pauli_energy: shots must be >= 1");
  double e = 0.0;
  for (const auto& t : h.terms()) {
    if (t.axes.find_first_not_of('I') == std::string::npos) {
      e += t.coefficient;
      continue;
    }
    const double exact = expectation(PauliSum(h.n_qubits(), {{1.0, t.axes}}), psi);
    const double p = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
    std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(shots), p);
    e += t.coefficient * (2.0 * static_cast<double>(draw(rng)) / static_cast<double>(shots) - 1.0);
  }
  return e;
}

/// Objective used by the optimizer: exact statevector energy, or per-term
/// sampled when `shots` is set.
class VqeObjective {
 public:
  VqeObjective(const ParamCircuit& c, const PauliSum& h, std::optional<std::uint64_t> shots = {}, std::uint64_t seed = 0)
      : c_(&c), h_(&h), shots_(shots), rng_(seed) {
    check_circuit(c, h);
  }

  double operator()(const std::vector<double>& theta, std::optional<std::size_t> shifted = {}, double shift = 0.0) {
    const Amplitudes psi = c_->state(theta, shifted, shift);
    return shots_ ? sampled_pauli_energy(*h_, psi, *shots_, rng_) : expectation(*h_, psi);
  }

  /// dE/dtheta_i as the sum over gates using theta_i of
  /// [E(+pi/2 on that gate) - E(-pi/2 on that gate)] / 2.
  std::vector<double> gradient(const std::vector<double>& theta) {
    std::vector<double> g(c_->n_params(), 0.0);
    const auto& gates = c_->gates();
    constexpr double kShift = std::numbers::pi / 2;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (gates[i].param < 0) continue;
      const double plus = (*this)(theta, i, kShift);
      const double minus = (*this)(theta, i, -kShift);
      g[static_cast<std::size_t>(gates[i].param)] += 0.5 * (plus - minus);
    }
    return g;
  }

 private:
  const ParamCircuit* c_;
  const PauliSum* h_;
  std::optional<std::uint64_t> shots_;
  Rng rng_;
};

inline std::vector<double> parameter_shift_gradient(const ParamCircuit& c, const std::vector<double>& theta,
                                                    const PauliSum& h) {
  VqeObjective objective(c, h);
  return objective.gradient(theta);
}

struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::vector<double> m;
  std::vector<double> v;
  int t = 0;

  void step(std::vector<double>& theta, const std::vector<double>& grad) {
    if (m.empty()) m.assign(theta.size(), 0.0), v.assign(theta.size(), 0.0);
    if (grad.size() != theta.size() || m.size() != theta.size()) throw DimensionError("Adam: size mismatch");
    ++t;
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
      theta[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
  }
};

struct VqeOptions {
  int iterations = 1000;
  double learning_rate = 1e-3;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
  /// Per-term shots for a sampled objective; statevector when empty.
  std::optional<std::uint64_t> shots;
};

struct VqeTrace {
  /// Energy before each update and after the last one (iterations + 1 values).
  std::vector<double> energies;
  std::vector<double> gradient_norms;
  std::vector<double> theta;
  std::size_t gate_count = 0;
};

/// Adam descent from theta ~ U[-scale, scale].
inline VqeTrace vqe_run(const PauliSum& h, const ParamCircuit& c, const VqeOptions& opt) {
  if (opt.iterations < 0) throw InvalidArgument("vqe_run: iterations must be >= 0");
  Rng rng(opt.seed);
  std::uniform_real_distribution<double> init(-opt.init_scale, opt.init_scale);
  VqeTrace trace;
  trace.theta.resize(c.n_params());
  for (auto& x : trace.theta) x = init(rng);
  trace.gate_count = c.gate_count();
  VqeObjective objective(c, h, opt.shots, child_seed(opt.seed, 1));
  AdamState adam;
  adam.lr = opt.learning_rate;
  for (int it = 0; it < opt.iterations; ++it) {
    trace.energies.push_back(objective(trace.theta));
    const auto g = objective.gradient(trace.theta);
    double norm2 = 0.0;
    for (double x : g) norm2 += x * x;
    trace.gradient_norms.push_back(std::sqrt(norm2));
    adam.step(trace.theta, g);
  }
  trace.energies.push_back(objective(trace.theta));
  return trace;
}

inline VqeTrace vqe_run(const PauliSum& h, Ansatz layout, const HeisenbergParams& model, int depth, const VqeOptions& opt) {
  const ParamCircuit c = layout == Ansatz::hea ? hea_circuit(h.n_qubits(), depth) : hva_circuit(model, depth);
  return vqe_run(h, c, opt);
}

}  // namespace hoa
