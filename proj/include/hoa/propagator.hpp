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

#include <complex>
#include <concepts>
#include <memory>

#include <Eigen/Eigenvalues>

#include "hoa/pauli.hpp"
#include "hoa/statevector.hpp"

namespace hoa {

/// Anything that maps a state to exp(-iHt) applied to it (exactly or not).
template <class E>
concept Evolver = requires(const E& e, const Amplitudes& psi, double t) {
  { e.evolve(psi, t) } -> std::convertible_to<Amplitudes>;
  { e.n_qubits() } -> std::convertible_to<std::size_t>;
};

/// Exact exp(-iHt) through one cached Hermitian eigendecomposition.
/// Immutable after construction; safe to share between readers.
class Propagator {
 public:
  explicit Propagator(PauliSum h, std::size_t max_qubits = kDefaultDenseQubitCap) : h_(std::move(h)) {
    const Eigen::MatrixXcd dense = to_dense(h_, max_qubits);
    if (dense.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense.real());
      if (es.info() != Eigen::Success) throw NumericalError("Propagator: eigendecomposition failed");
      values_ = es.eigenvalues();
      vectors_ = es.eigenvectors().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
      if (es.info() != Eigen::Success) throw NumericalError("Propagator: eigendecomposition failed");
      values_ = es.eigenvalues();
      vectors_ = es.eigenvectors();
    }
  }

  const PauliSum& hamiltonian() const noexcept { return h_; }
  std::size_t n_qubits() const noexcept { return h_.n_qubits(); }
  std::size_t dimension() const noexcept { return h_.dimension(); }

  /// Ascending eigenvalues.
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }
  double ground_energy() const { return values_[0]; }
  Amplitudes ground_state() const { return vectors_.col(0); }

  /// Coordinates of `psi` in the eigenbasis.
  Amplitudes to_eigenbasis(const Amplitudes& psi) const {
    check(psi);
    return vectors_.adjoint() * psi;
  }

  Amplitudes evolve(const Amplitudes& psi, double t) const {
    check(psi);
    Amplitudes c = vectors_.adjoint() * psi;
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -values_[i] * t);
    return vectors_ * c;
  }

  StateVector evolve(const StateVector& psi, double t) const {
    return StateVector::normalized(psi.n_qubits(), evolve(psi.amplitudes(), t));
  }

  /// Dense exp(-iHt).
  Eigen::MatrixXcd step_matrix(double t) const {
    Eigen::VectorXcd phases(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) phases[i] = std::polar(1.0, -values_[i] * t);
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
  }

 private:
  void check(const Amplitudes& psi) const {
    if (static_cast<std::size_t>(psi.size()) != dimension()) {
      throw DimensionError("Propagator: state dimension " + std::to_string(psi.size()) + ", expected " +
                           std::to_string(dimension()));
    }
  }

  PauliSum h_;
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

static_assert(Evolver<Propagator>);

}  // namespace hoa
