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
#include <random>
#include <string>
#include <string_view>

#include "hoa/error.hpp"
#include "hoa/pauli.hpp"

namespace hoa {

/// Norm tolerance enforced on every StateVector.
inline constexpr double kNormTolerance = 1e-10;

/// Dense N-qubit state of unit norm. Qubit 0 is the most significant bit of
/// the basis index, so basis_state(2, "10") sits at index 2.
class StateVector {
 public:
  StateVector() = default;

  StateVector(std::size_t n_qubits, Amplitudes amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > 30) {
      throw InvalidArgument("StateVector: qubit count must be in [1, 30], got " + std::to_string(n_qubits));
    }
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits)) {
      throw DimensionError("StateVector: " + std::to_string(amps_.size()) + " amplitudes for " +
                           std::to_string(n_qubits) + " qubits");
    }
    if (const double norm = amps_.norm(); std::abs(norm - 1.0) > kNormTolerance) {
      throw NumericalError("StateVector: norm " + detail::format_double(norm) + " is not 1");
    }
  }

  /// Rescales `amplitudes` to unit norm; throws on a (near) zero vector.
  static StateVector normalized(std::size_t n_qubits, Amplitudes amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 1e-300) || !std::isfinite(norm)) throw NumericalError("StateVector: cannot normalize a zero vector");
    amplitudes /= norm;
    return StateVector(n_qubits, std::move(amplitudes));
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Amplitudes& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  std::size_t n_qubits_ = 0;
  Amplitudes amps_;
};

/// H^(x)n |0...0>: every amplitude equals 2^(-n/2).
inline StateVector uniform_state(std::size_t n) {
  if (n == 0) throw InvalidArgument("uniform_state: n must be >= 1");
  const auto dim = Eigen::Index{1} << n;
  return StateVector(n, Amplitudes::Constant(dim, Complex(std::pow(2.0, -0.5 * static_cast<double>(n)), 0.0)));
}

inline std::size_t basis_index(std::string_view bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("basis_state: invalid bit '" + std::string(1, c) + "'");
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

inline StateVector basis_state(std::size_t n, std::string_view bits) {
  if (bits.size() != n) {
    throw DimensionError("basis_state: bitstring of length " + std::to_string(bits.size()) + " for " +
                         std::to_string(n) + " qubits");
  }
  Amplitudes a = Amplitudes::Zero(Eigen::Index{1} << n);
  a[static_cast<Eigen::Index>(basis_index(bits))] = 1.0;
  return StateVector(n, std::move(a));
}

/// Alternating product state |0101...>.
inline StateVector neel_state(std::size_t n) {
  std::string bits(n, '0');
  for (std::size_t q = 1; q < n; q += 2) bits[q] = '1';
  return basis_state(n, bits);
}

/// Haar-like random state from complex Gaussian amplitudes.
template <class Rng>
StateVector random_state(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  Amplitudes a(Eigen::Index{1} << n);
  for (auto& z : a) z = Complex(g(rng), g(rng));
  return StateVector::normalized(n, std::move(a));
}

inline void check_same_dimension(const Amplitudes& a, const Amplitudes& b, const char* where) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(where) + ": dimensions " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
}

/// <phi|psi>, conjugate-linear in the first argument.
inline Complex overlap(const Amplitudes& phi, const Amplitudes& psi) {
  check_same_dimension(phi, psi, "overlap");
  return phi.dot(psi);
}

inline Complex overlap(const StateVector& phi, const StateVector& psi) {
  return overlap(phi.amplitudes(), psi.amplitudes());
}

/// H|psi>, not normalized.
inline Amplitudes apply_operator(const PauliSum& h, const Amplitudes& psi) { return apply_pauli_sum(h, psi); }

inline Amplitudes apply_operator(const PauliSum& h, const StateVector& psi) {
  return apply_pauli_sum(h, psi.amplitudes());
}

/// Real part of <psi|H|psi>; a non-negligible imaginary part signals a
/// non-Hermitian input.
inline double expectation(const PauliSum& h, const Amplitudes& psi) {
  const Complex e = overlap(psi, apply_pauli_sum(h, psi));
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real()))) {
    throw NumericalError("expectation: imaginary residue " + detail::format_double(e.imag()));
  }
  return e.real();
}

inline double expectation(const PauliSum& h, const StateVector& psi) { return expectation(h, psi.amplitudes()); }

}  // namespace hoa
