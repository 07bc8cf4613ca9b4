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

#include <random>

#include <gtest/gtest.h>

#include "hoa/models.hpp"
#include "hoa/propagator.hpp"
#include "hoa/statevector.hpp"
#include "oracles.hpp"

namespace {

using hoa::Complex;
using hoa::PauliSum;

TEST(States, Uniform) {
  const auto one = hoa::uniform_state(1);
  EXPECT_NEAR(one[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(one[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  const auto three = hoa::uniform_state(3);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(three[i].real(), std::pow(2.0, -1.5), 1e-15);
  for (std::size_t n = 1; n <= 14; ++n) EXPECT_NEAR(hoa::uniform_state(n).amplitudes().norm(), 1.0, 1e-12);
}

TEST(States, BasisOrdering) {
  const auto zero = hoa::basis_state(2, "00");
  EXPECT_EQ(zero[0], Complex(1.0));
  const auto ten = hoa::basis_state(2, "10");
  EXPECT_EQ(ten[2], Complex(1.0));
  EXPECT_THROW(hoa::basis_state(3, "10"), hoa::DimensionError);
  for (const char* a : {"000", "011", "101"})
    for (const char* b : {"000", "011", "101"})
      EXPECT_EQ(hoa::overlap(hoa::basis_state(3, a), hoa::basis_state(3, b)), Complex(std::string(a) == b ? 1.0 : 0.0));
}

TEST(States, NormEnforced) {
  EXPECT_THROW(hoa::StateVector(1, hoa::Amplitudes::Ones(2)), hoa::NumericalError);
  EXPECT_THROW(hoa::StateVector(2, hoa::Amplitudes::Ones(2)), hoa::DimensionError);
  EXPECT_THROW(hoa::StateVector::normalized(1, hoa::Amplitudes::Zero(2)), hoa::NumericalError);
}

TEST(Overlap, Properties) {
  std::mt19937_64 rng(7);
  const auto psi = hoa::random_state(4, rng);
  const auto phi = hoa::random_state(4, rng);
  EXPECT_NEAR(std::abs(hoa::overlap(psi, psi) - 1.0), 0.0, 1e-14);
  const Complex a = hoa::overlap(phi, psi), b = hoa::overlap(psi, phi);
  EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-14);
  EXPECT_EQ(hoa::overlap(hoa::basis_state(1, "0"), hoa::basis_state(1, "1")), Complex(0.0));
  EXPECT_THROW(hoa::overlap(hoa::uniform_state(2), hoa::uniform_state(3)), hoa::DimensionError);
}

TEST(Operators, ApplyAndExpectation) {
  const PauliSum z(1, {{1.0, "Z"}});
  const auto up = hoa::basis_state(1, "0");
  EXPECT_EQ(hoa::apply_operator(z, up)[0], Complex(1.0));
  const PauliSum xz(1, {{1.0, "X"}, {1.0, "Z"}});
  const auto v = hoa::apply_operator(xz, up);
  EXPECT_EQ(v[0], Complex(1.0));
  EXPECT_EQ(v[1], Complex(1.0));
  EXPECT_NEAR(v.norm(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(hoa::expectation(z, hoa::uniform_state(1)), 0.0, 1e-15);

  std::mt19937_64 rng(8);
  const auto h = hoa::heisenberg(4, 0.8, 0.3, hoa::Boundary::ring);
  const auto psi = hoa::random_state(4, rng);
  EXPECT_LE((hoa::apply_operator(h, psi) - oracle::kron_dense(h) * psi.amplitudes()).norm(), 1e-13);
}

TEST(Operators, ExpectationOfEigenvector) {
  const hoa::Propagator p(hoa::heisenberg(4, 1.0, 0.2, hoa::Boundary::open));
  for (int i : {0, 5, 15}) {
    const auto v = hoa::StateVector::normalized(4, p.eigenvectors().col(i));
    EXPECT_NEAR(hoa::expectation(p.hamiltonian(), v), p.eigenvalues()[i], 1e-12);
  }
}

TEST(Propagator, Reconstruction) {
  const auto h = hoa::heisenberg(5, 1.0, 0.4, hoa::Boundary::ring, hoa::Coupling::antiferromagnetic);
  const hoa::Propagator p(h);
  const Eigen::MatrixXcd rec = p.eigenvectors() * p.eigenvalues().asDiagonal() * p.eigenvectors().adjoint();
  const Eigen::MatrixXcd dense = hoa::to_dense(h);
  EXPECT_LE((rec - dense).cwiseAbs().maxCoeff(), 1e-9 * dense.cwiseAbs().maxCoeff());
}

TEST(Propagator, ComplexHamiltonianPath) {
  const PauliSum h(2, {{0.7, "XY"}, {0.3, "ZI"}, {-0.2, "IY"}});
  const hoa::Propagator p(h);
  const Eigen::MatrixXcd ref = oracle::expm_minus_i(oracle::kron_dense(h), 0.9);
  EXPECT_LE((p.step_matrix(0.9) - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Propagator, EigenstatePhase) {
  const hoa::Propagator p(PauliSum(1, {{1.0, "Z"}}));
  const auto up = hoa::basis_state(1, "0");
  for (double t : {-2.0, 0.3, 5.0}) {
    const Complex o = hoa::overlap(up.amplitudes(), p.evolve(up.amplitudes(), t));
    EXPECT_NEAR(std::abs(o - std::polar(1.0, -t)), 0.0, 1e-14);
  }
}

TEST(Propagator, GroupPropertyNormAndIdentity) {
  std::mt19937_64 rng(13);
  const hoa::Propagator p(hoa::heisenberg(5, 1.0, 0.1, hoa::Boundary::open));
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = hoa::random_state(5, rng);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double t1 = u(rng), t2 = u(rng);
    const auto a = p.evolve(p.evolve(psi.amplitudes(), t1), t2);
    const auto b = p.evolve(psi.amplitudes(), t1 + t2);
    EXPECT_LE((a - b).norm(), 1e-10);
    EXPECT_NEAR(b.norm(), 1.0, 1e-10);
    EXPECT_LE((p.evolve(psi.amplitudes(), 0.0) - psi.amplitudes()).norm(), 1e-12);
    EXPECT_LE(std::abs(hoa::overlap(psi.amplitudes(), b)), 1.0 + 1e-12);
  }
  EXPECT_THROW(p.evolve(hoa::uniform_state(3).amplitudes(), 1.0), hoa::DimensionError);
}

TEST(Propagator, MatchesMatrixExponential) {
  const auto h = hoa::heisenberg(3, 1.0, 0.5, hoa::Boundary::ring);
  const hoa::Propagator p(h);
  EXPECT_LE((p.step_matrix(1.3) - oracle::expm_minus_i(oracle::kron_dense(h), 1.3)).cwiseAbs().maxCoeff(), 1e-11);
}

}  // namespace
