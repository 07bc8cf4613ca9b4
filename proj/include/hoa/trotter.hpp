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
#include <vector>

#include "hoa/approximation.hpp"
#include "hoa/circuit.hpp"
#include "hoa/models.hpp"

namespace hoa {

/// Second-order product formula for a Heisenberg chain or ring.
struct TrotterPlan {
  HeisenbergParams model;
  double tau = 0.0;
  int r = 1;
  /// Optional pass removing S.Sdg and H.H pairs between layers.
  bool cancel_inverses = false;
};

namespace detail {

enum class Axis { X, Y, Z };

// Pair rotation exp(-i phi P_a P_b) from XX and basis changes, in time order.
inline void emit_pair(std::vector<Gate>& out, Axis axis, std::size_t a, std::size_t b, double phi) {
  switch (axis) {
    case Axis::X:
      out.push_back({GateKind::XX, a, b, phi});
      break;
    case Axis::Y:
      out.push_back({GateKind::Sdg, a});
      out.push_back({GateKind::Sdg, b});
      out.push_back({GateKind::XX, a, b, phi});
      out.push_back({GateKind::S, a});
      out.push_back({GateKind::S, b});
      break;
    case Axis::Z:
      out.push_back({GateKind::H, a});
      out.push_back({GateKind::H, b});
      out.push_back({GateKind::XX, a, b, phi});
      out.push_back({GateKind::H, a});
      out.push_back({GateKind::H, b});
      break;
  }
}

}  // namespace detail

/// Gate list for exp(-i H tau) with r symmetric steps. Each step runs the XX,
/// YY, ZZ layers over the bonds in reverse order at phase c tau/2r, the field
/// rotations RZ(2 c_z tau / r), then ZZ, YY, XX over the bonds in order.
inline GateSequence compile_trotter(const TrotterPlan& plan) {
  if (plan.r < 1) throw InvalidArgument("compile_trotter: r must be >= 1");
  const auto& m = plan.model;
  if (m.n < 2) throw InvalidArgument("compile_trotter: need n >= 2");
  const auto bonds = m.bonds();
  const double phi = m.exchange_coefficient() * plan.tau / (2.0 * plan.r);
  const double theta = 2.0 * (-m.h) * plan.tau / plan.r;
  using detail::Axis;

  GateSequence seq{m.n, {}};
  seq.gates.reserve(static_cast<std::size_t>(plan.r) * (22 * bonds.size() + m.n));
  for (int step = 0; step < plan.r; ++step) {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      for (auto it = bonds.rbegin(); it != bonds.rend(); ++it) detail::emit_pair(seq.gates, axis, it->first, it->second, phi);
    }
    for (std::size_t q = 0; q < m.n; ++q) seq.gates.push_back({GateKind::RZ, q, 0, theta});
    for (Axis axis : {Axis::Z, Axis::Y, Axis::X}) {
      for (const auto& [a, b] : bonds) detail::emit_pair(seq.gates, axis, a, b, phi);
    }
  }
  return plan.cancel_inverses ? cancel_adjacent_inverses(seq) : seq;
}

/// Gate tally of a compiled plan next to the closed forms.
struct GateCountReport {
  std::size_t n = 0;
  int r = 0;
  std::size_t bonds = 0;
  std::size_t xx_gates = 0;
  std::size_t yy_gates = 0;   // Sdg, Sdg, XX, S, S blocks
  std::size_t zz_gates = 0;   // H, H, XX, H, H blocks
  std::size_t field_gates = 0;
  std::size_t total = 0;
  /// 23 N r: exact for a ring (22 gates per bond and one RZ per qubit per step).
  std::size_t leading_term = 0;
  /// 23 N r + 3 N.
  std::size_t reference_total = 0;
  /// reference_total - total.
  long long residual = 0;
};

inline GateCountReport count_trotter_gates(const TrotterPlan& plan) {
  TrotterPlan raw = plan;
  raw.cancel_inverses = false;
  const auto seq = compile_trotter(raw);
  GateCountReport rep;
  rep.n = plan.model.n;
  rep.r = plan.r;
  rep.bonds = plan.model.bonds().size();
  const std::size_t per_layer = 2 * rep.bonds * static_cast<std::size_t>(plan.r);
  rep.xx_gates = per_layer;
  rep.yy_gates = 5 * per_layer;
  rep.zz_gates = 5 * per_layer;
  rep.field_gates = rep.n * static_cast<std::size_t>(plan.r);
  rep.total = plan.cancel_inverses ? compile_trotter(plan).size() : seq.size();
  rep.leading_term = 23 * rep.n * static_cast<std::size_t>(plan.r);
  rep.reference_total = rep.leading_term + 3 * rep.n;
  rep.residual = static_cast<long long>(rep.reference_total) - static_cast<long long>(rep.total);
  return rep;
}

inline std::string format_gate_report(const GateCountReport& r) {
  std::string s;
  s += "n=" + std::to_string(r.n) + " r=" + std::to_string(r.r) + " bonds=" + std::to_string(r.bonds) + "\n";
  s += "  XX layers      " + std::to_string(r.xx_gates) + "\n";
  s += "  YY layers      " + std::to_string(r.yy_gates) + "\n";
  s += "  ZZ layers      " + std::to_string(r.zz_gates) + "\n";
  s += "  field RZ       " + std::to_string(r.field_gates) + "\n";
  s += "  total          " + std::to_string(r.total) + "\n";
  s += "  23Nr           " + std::to_string(r.leading_term) + "\n";
  s += "  23Nr+3N        " + std::to_string(r.reference_total) + "\n";
  s += "  residual       " + std::to_string(r.residual) + "\n";
  return s;
}

/// Evolver running the compiled r-step circuit for every requested time.
class TrotterEvolver {
 public:
  TrotterEvolver(HeisenbergParams model, int r, bool cancel_inverses = false)
      : model_(model), r_(r), cancel_(cancel_inverses) {
    if (r < 1) throw InvalidArgument("TrotterEvolver: r must be >= 1");
  }

  std::size_t n_qubits() const noexcept { return model_.n; }
  int steps() const noexcept { return r_; }

  Amplitudes evolve(const Amplitudes& psi, double t) const {
    return apply_sequence(compile_trotter({model_, t, r_, cancel_}), psi);
  }

 private:
  HeisenbergParams model_;
  int r_;
  bool cancel_;
};

static_assert(Evolver<TrotterEvolver>);

/// HOA energy with every propagator replaced by its r-step circuit.
inline Complex trotterized_hoa_energy(const HeisenbergParams& model, const StateVector& psi, const HoaConfig& cfg, int r) {
  return hoa_expectation(TrotterEvolver(model, r), psi, cfg);
}

}  // namespace hoa
