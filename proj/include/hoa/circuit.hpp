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
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hoa/error.hpp"
#include "hoa/pauli.hpp"
#include "hoa/statevector.hpp"

namespace hoa {

/// Gate alphabet. Two-qubit rotations are exp(-i a P(x)P); RZ and RX are
/// exp(-i a P / 2); CNOT takes (control, target).
enum class GateKind { XX, YY, ZZ, S, Sdg, H, RZ, RX, CNOT };

inline std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::XX: return "XX";
    case GateKind::YY: return "YY";
    case GateKind::ZZ: return "ZZ";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::H: return "H";
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::XX || k == GateKind::YY || k == GateKind::ZZ || k == GateKind::CNOT;
}

inline bool has_angle(GateKind k) {
  return k == GateKind::XX || k == GateKind::YY || k == GateKind::ZZ || k == GateKind::RZ || k == GateKind::RX;
}

struct Gate {
  GateKind kind;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  double angle = 0.0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateSequence {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  std::size_t size() const noexcept { return gates.size(); }

  void validate() const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const auto& g = gates[i];
      const bool bad = g.q0 >= n_qubits || (is_two_qubit(g.kind) && (g.q1 >= n_qubits || g.q1 == g.q0));
      if (bad) {
        throw InvalidArgument("gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) +
                              ") has invalid qubit indices for " + std::to_string(n_qubits) + " qubits");
      }
    }
  }
};

namespace detail {

inline std::uint64_t qubit_bit(std::size_t n, std::size_t q) { return std::uint64_t{1} << (n - 1 - q); }

// exp(-i a P) for a Pauli string with masks (x, z) and i-power factor.
inline void apply_pauli_rotation(Amplitudes& s, std::uint64_t x, std::uint64_t z, Complex factor, double a) {
  const double c = std::cos(a);
  const Complex mis = Complex(0.0, -std::sin(a)) * factor;
  const auto dim = static_cast<std::uint64_t>(s.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t p = b ^ x;
    if (p < b) continue;
    // (P s)_b = factor * sign(p & z) * s_p, and (P s)_p = factor * sign(b & z) * s_b.
    const Complex sb = s[static_cast<Eigen::Index>(b)];
    const Complex sp = s[static_cast<Eigen::Index>(p)];
    s[static_cast<Eigen::Index>(b)] = c * sb + mis * parity_sign(p & z) * sp;
    s[static_cast<Eigen::Index>(p)] = c * sp + mis * parity_sign(b & z) * sb;
  }
}

inline void apply_diagonal_phase(Amplitudes& s, std::uint64_t m, Complex on_zero, Complex on_one) {
  for (Eigen::Index b = 0; b < s.size(); ++b) s[b] *= (static_cast<std::uint64_t>(b) & m) ? on_one : on_zero;
}

}  // namespace detail

/// Applies one gate in place.
inline void apply_gate(Amplitudes& s, std::size_t n, const Gate& g) {
  using detail::qubit_bit;
  const std::uint64_t m0 = qubit_bit(n, g.q0);
  const Complex i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::XX:
      detail::apply_pauli_rotation(s, m0 | qubit_bit(n, g.q1), 0, 1.0, g.angle);
      break;
    case GateKind::YY: {
      const std::uint64_t m = m0 | qubit_bit(n, g.q1);
      detail::apply_pauli_rotation(s, m, m, -1.0, g.angle);
      break;
    }
    case GateKind::ZZ: {
      const std::uint64_t m = m0 | qubit_bit(n, g.q1);
      const Complex even = std::polar(1.0, -g.angle), odd = std::polar(1.0, g.angle);
      for (Eigen::Index b = 0; b < s.size(); ++b) s[b] *= parity_sign(static_cast<std::uint64_t>(b) & m) > 0 ? even : odd;
      break;
    }
    case GateKind::S: detail::apply_diagonal_phase(s, m0, 1.0, i); break;
    case GateKind::Sdg: detail::apply_diagonal_phase(s, m0, 1.0, -i); break;
    case GateKind::RZ:
      detail::apply_diagonal_phase(s, m0, std::polar(1.0, -0.5 * g.angle), std::polar(1.0, 0.5 * g.angle));
      break;
    case GateKind::RX: detail::apply_pauli_rotation(s, m0, 0, 1.0, 0.5 * g.angle); break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (Eigen::Index b = 0; b < s.size(); ++b) {
        if (static_cast<std::uint64_t>(b) & m0) continue;
        const Eigen::Index p = b | static_cast<Eigen::Index>(m0);
        const Complex a0 = s[b], a1 = s[p];
        s[b] = r * (a0 + a1);
        s[p] = r * (a0 - a1);
      }
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t mt = qubit_bit(n, g.q1);
      for (Eigen::Index b = 0; b < s.size(); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        if ((ub & m0) && !(ub & mt)) std::swap(s[b], s[static_cast<Eigen::Index>(ub | mt)]);
      }
      break;
    }
  }
}

inline Amplitudes apply_sequence(const GateSequence& seq, Amplitudes s) {
  seq.validate();
  if (static_cast<std::size_t>(s.size()) != (std::size_t{1} << seq.n_qubits)) {
    throw DimensionError("apply_sequence: state dimension " + std::to_string(s.size()) + " for " +
                         std::to_string(seq.n_qubits) + " qubits");
  }
  for (const auto& g : seq.gates) apply_gate(s, seq.n_qubits, g);
  return s;
}

inline StateVector apply_sequence(const GateSequence& seq, const StateVector& psi) {
  return StateVector::normalized(psi.n_qubits(), apply_sequence(seq, psi.amplitudes()));
}

/// Dense unitary of a sequence, column by column.
inline Eigen::MatrixXcd sequence_matrix(const GateSequence& seq) {
  const auto dim = Eigen::Index{1} << seq.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) u.col(c) = apply_sequence(seq, Amplitudes(Amplitudes::Unit(dim, c)));
  return u;
}

/// Removes adjacent inverse pairs (S.Sdg, Sdg.S, H.H) acting on the same qubit
/// with nothing in between on that qubit.
inline GateSequence cancel_adjacent_inverses(const GateSequence& seq) {
  auto inverse = [](GateKind a, GateKind b) {
    return (a == GateKind::S && b == GateKind::Sdg) || (a == GateKind::Sdg && b == GateKind::S) ||
           (a == GateKind::H && b == GateKind::H);
  };
  std::vector<Gate> out;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> last(seq.n_qubits);
  for (const auto& g : seq.gates) {
    if (!is_two_qubit(g.kind) && !last[g.q0].empty()) {
      const std::size_t top = last[g.q0].back();
      if (!is_two_qubit(out[top].kind) && inverse(out[top].kind, g.kind)) {
        alive[top] = false;
        last[g.q0].pop_back();
        continue;
      }
    }
    out.push_back(g);
    alive.push_back(true);
    last[g.q0].push_back(out.size() - 1);
    if (is_two_qubit(g.kind)) last[g.q1].push_back(out.size() - 1);
  }
  GateSequence result{seq.n_qubits, {}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (alive[i]) result.gates.push_back(out[i]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text form: optional "QUBITS n" line, then "GATE q0 [q1] [angle]" per line.

inline std::string to_gate_text(const GateSequence& seq) {
  std::string out = "QUBITS " + std::to_string(seq.n_qubits) + "\n";
  for (const auto& g : seq.gates) {
    out += gate_name(g.kind);
    out += ' ' + std::to_string(g.q0);
    if (is_two_qubit(g.kind)) out += ' ' + std::to_string(g.q1);
    if (has_angle(g.kind)) out += ' ' + detail::format_double(g.angle);
    out += '\n';
  }
  return out;
}

inline GateSequence parse_gate_text(std::string_view text) {
  GateSequence seq;
  bool explicit_qubits = false;
  std::size_t max_index = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    if (name == "QUBITS") {
      if (!(fields >> seq.n_qubits) || seq.n_qubits == 0) throw ParseError("invalid QUBITS line", line_no);
      explicit_qubits = true;
      continue;
    }
    static constexpr GateKind kAll[] = {GateKind::XX, GateKind::YY, GateKind::ZZ, GateKind::S,   GateKind::Sdg,
                                        GateKind::H,  GateKind::RZ, GateKind::RX, GateKind::CNOT};
    const auto* kind = std::find_if(std::begin(kAll), std::end(kAll), [&](GateKind k) { return gate_name(k) == name; });
    if (kind == std::end(kAll)) throw ParseError("unknown gate '" + name + "'", line_no);
    Gate g{*kind};
    if (!(fields >> g.q0)) throw ParseError("missing qubit index", line_no);
    if (is_two_qubit(g.kind) && !(fields >> g.q1)) throw ParseError("missing second qubit index", line_no);
    if (has_angle(g.kind)) {
      std::string angle;
      if (!(fields >> angle) || !detail::parse_double(angle, g.angle)) throw ParseError("invalid angle", line_no);
    }
    std::string extra;
    if (fields >> extra) throw ParseError("unexpected token '" + extra + "'", line_no);
    max_index = std::max({max_index, g.q0, is_two_qubit(g.kind) ? g.q1 : 0});
    seq.gates.push_back(g);
  }
  if (!explicit_qubits) seq.n_qubits = seq.gates.empty() ? 1 : max_index + 1;
  seq.validate();
  return seq;
}

}  // namespace hoa
