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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hoa/propagator.hpp"
#include "hoa/trotter.hpp"
#include "oracles.hpp"

namespace {

using hoa::Complex;
using hoa::Gate;
using hoa::GateKind;
using hoa::GateSequence;

oracle::Matrix two_qubit(const char* axes) { return oracle::kron_dense(hoa::PauliSum(2, {{1.0, axes}})); }

TEST(Gates, MatchMatrixExponentials) {
  const double a = 0.37;
  const std::pair<GateKind, const char*> pairs[] = {{GateKind::XX, "XX"}, {GateKind::YY, "YY"}, {GateKind::ZZ, "ZZ"}};
  for (auto [kind, axes] : pairs) {
    const auto u = hoa::sequence_matrix({2, {{kind, 0, 1, a}}});
    EXPECT_LE((u - oracle::expm_minus_i(two_qubit(axes), a)).cwiseAbs().maxCoeff(), 1e-14) << axes;
  }
  const auto rz = hoa::sequence_matrix({1, {{GateKind::RZ, 0, 0, a}}});
  EXPECT_LE((rz - oracle::expm_minus_i(oracle::pauli('Z'), a / 2)).cwiseAbs().maxCoeff(), 1e-14);
  const auto rx = hoa::sequence_matrix({1, {{GateKind::RX, 0, 0, a}}});
  EXPECT_LE((rx - oracle::expm_minus_i(oracle::pauli('X'), a / 2)).cwiseAbs().maxCoeff(), 1e-14);
  const auto s = hoa::sequence_matrix({1, {{GateKind::S, 0}}});
  EXPECT_EQ(s(1, 1), Complex(0, 1));
  const auto h = hoa::sequence_matrix({1, {{GateKind::H, 0}}});
  EXPECT_NEAR(h(1, 1).real(), -1 / std::sqrt(2.0), 1e-15);
  const auto cx = hoa::sequence_matrix({2, {{GateKind::CNOT, 0, 1}}});
  EXPECT_EQ(cx(3, 2), Complex(1.0));
  EXPECT_EQ(cx(2, 3), Complex(1.0));
  EXPECT_EQ(cx(1, 1), Complex(1.0));
  const auto cx10 = hoa::sequence_matrix({2, {{GateKind::CNOT, 1, 0}}});
  EXPECT_EQ(cx10(3, 1), Complex(1.0));
}

TEST(Gates, XXQuarterTurn) {
  const auto out = hoa::apply_sequence(GateSequence{2, {{GateKind::XX, 0, 1, M_PI / 2}}}, hoa::basis_state(2, "00"));
  EXPECT_LE(std::abs(out[3] - Complex(0, -1)), 1e-15);
  EXPECT_LE(std::abs(out[0]), 1e-15);
}

TEST(Gates, ConjugationIdentities) {
  const double phi = 0.81;
  const GateSequence yy{2, {{GateKind::Sdg, 0}, {GateKind::Sdg, 1}, {GateKind::XX, 0, 1, phi}, {GateKind::S, 0}, {GateKind::S, 1}}};
  EXPECT_LE((hoa::sequence_matrix(yy) - oracle::expm_minus_i(two_qubit("YY"), phi)).cwiseAbs().maxCoeff(), 1e-14);
  const GateSequence zz{2, {{GateKind::H, 0}, {GateKind::H, 1}, {GateKind::XX, 0, 1, phi}, {GateKind::H, 0}, {GateKind::H, 1}}};
  EXPECT_LE((hoa::sequence_matrix(zz) - oracle::expm_minus_i(two_qubit("ZZ"), phi)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gates, InversePairsAndValidation) {
  std::mt19937_64 rng(1);
  const auto psi = hoa::random_state(3, rng);
  const auto back = hoa::apply_sequence(GateSequence{3, {{GateKind::Sdg, 1}, {GateKind::S, 1}}}, psi);
  EXPECT_LE((back.amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_THROW(hoa::apply_sequence(GateSequence{2, {{GateKind::XX, 0, 0, 0.1}}}, hoa::uniform_state(2)), hoa::InvalidArgument);
  EXPECT_THROW(hoa::apply_sequence(GateSequence{2, {{GateKind::S, 2}}}, hoa::uniform_state(2)), hoa::InvalidArgument);
  EXPECT_THROW(hoa::apply_sequence(GateSequence{2, {}}, hoa::uniform_state(3)), hoa::DimensionError);
}

TEST(GateText, RoundTripAndErrors) {
  const hoa::TrotterPlan plan{{4, 1.0, 0.3, hoa::Boundary::ring}, 0.7, 2};
  const auto seq = hoa::compile_trotter(plan);
  const auto back = hoa::parse_gate_text(hoa::to_gate_text(seq));
  EXPECT_EQ(back.n_qubits, seq.n_qubits);
  EXPECT_EQ(back.gates, seq.gates);
  EXPECT_EQ(hoa::parse_gate_text("XX 0 2 0.5\nH 1\n").n_qubits, 3u);
  try {
    hoa::parse_gate_text("H 0\nFOO 1\n");
    FAIL();
  } catch (const hoa::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(hoa::parse_gate_text("RZ 0\n"), hoa::ParseError);
  EXPECT_THROW(hoa::parse_gate_text("H 0 1\n"), hoa::ParseError);
}

TEST(Trotter, TwoSiteCountAndLayout) {
  const hoa::TrotterPlan plan{{2, 1.0, 0.1, hoa::Boundary::open}, 0.5, 1};
  const auto seq = hoa::compile_trotter(plan);
  ASSERT_EQ(seq.size(), 24u);
  EXPECT_EQ(seq.gates[0].kind, GateKind::XX);
  EXPECT_DOUBLE_EQ(seq.gates[0].angle, -1.0 * 0.5 / 2.0);
  EXPECT_EQ(seq.gates[11].kind, GateKind::RZ);
  EXPECT_DOUBLE_EQ(seq.gates[11].angle, 2 * -0.1 * 0.5);
  EXPECT_EQ(seq.gates.back().kind, GateKind::XX);
}

TEST(Trotter, ReverseThenForwardBondOrder) {
  const hoa::TrotterPlan plan{{4, 1.0, 0.0, hoa::Boundary::ring}, 1.0, 1};
  const auto seq = hoa::compile_trotter(plan);
  EXPECT_EQ(seq.gates[0].q0, 3u);  // closing bond (3, 0) first
  EXPECT_EQ(seq.gates[0].q1, 0u);
  EXPECT_EQ(seq.gates[3].q0, 0u);
  EXPECT_EQ(seq.gates.back().q0, 3u);
}

TEST(Trotter, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(2);
  const auto psi = hoa::random_state(5, rng);
  const auto seq = hoa::compile_trotter({{5, 1.0, 0.4, hoa::Boundary::ring}, 0.0, 3});
  EXPECT_LE((hoa::apply_sequence(seq, psi.amplitudes()) - psi.amplitudes()).norm(), 1e-12);
}

TEST(Trotter, GateCountRing) {
  for (std::size_t n : {5u, 13u}) {
    for (int r : {1, 5}) {
      const auto rep = hoa::count_trotter_gates({{n, 1.0, 0.1, hoa::Boundary::ring}, 1.0, r});
      EXPECT_EQ(rep.total, rep.leading_term);
      EXPECT_EQ(rep.total, 23 * n * r);
      EXPECT_EQ(rep.residual, static_cast<long long>(3 * n));
    }
  }
  const auto paper = hoa::count_trotter_gates({{13, 1.0, 0.1, hoa::Boundary::ring}, 1.0, 5});
  EXPECT_EQ(paper.total, 1495u);
  EXPECT_EQ(paper.reference_total, 1534u);
  EXPECT_EQ(paper.xx_gates + paper.yy_gates + paper.zz_gates + paper.field_gates, paper.total);
}

TEST(Trotter, CancellationPassPreservesUnitary) {
  const hoa::TrotterPlan plan{{4, 1.0, 0.3, hoa::Boundary::open}, 0.9, 3};
  hoa::TrotterPlan cancelled = plan;
  cancelled.cancel_inverses = true;
  const auto a = hoa::compile_trotter(plan), b = hoa::compile_trotter(cancelled);
  EXPECT_LT(b.size(), a.size());
  EXPECT_LE((hoa::sequence_matrix(a) - hoa::sequence_matrix(b)).cwiseAbs().maxCoeff(), 1e-12);
  const GateSequence chain{2, {{GateKind::H, 0}, {GateKind::S, 0}, {GateKind::Sdg, 0}, {GateKind::H, 0}, {GateKind::H, 1}}};
  EXPECT_EQ(hoa::cancel_adjacent_inverses(chain).size(), 1u);
  const GateSequence blocked{2, {{GateKind::H, 0}, {GateKind::CNOT, 0, 1}, {GateKind::H, 0}}};
  EXPECT_EQ(hoa::cancel_adjacent_inverses(blocked).size(), 3u);
}

TEST(Trotter, SecondOrderConvergenceAndReversal) {
  std::mt19937_64 rng(3);
  const hoa::HeisenbergParams model{4, 1.0, 0.5, hoa::Boundary::ring, hoa::Coupling::antiferromagnetic};
  const hoa::Propagator exact(hoa::heisenberg(model));
  const auto psi = hoa::random_state(4, rng);
  const double tau = 1.3;
  std::vector<double> rs, errs;
  for (int r : {4, 8, 16, 32}) {
    const hoa::TrotterEvolver ev(model, r);
    rs.push_back(r);
    const auto v = ev.evolve(psi.amplitudes(), tau);
    errs.push_back((v - exact.evolve(psi.amplitudes(), tau)).norm());
    EXPECT_NEAR(v.norm(), 1.0, 1e-10);
    EXPECT_LE((ev.evolve(v, -tau) - psi.amplitudes()).norm(), 1e-9);
  }
  EXPECT_NEAR(oracle::loglog_slope(rs, errs), -2.0, 0.2);
}

TEST(Trotter, HoaConvergesToExactBackend) {
  const hoa::HeisenbergParams model{4, 1.0, 0.1, hoa::Boundary::ring};
  const hoa::Propagator exact(hoa::heisenberg(model));
  const auto psi = hoa::uniform_state(4);
  const hoa::HoaConfig cfg(hoa::centered_stencil(5), 0.1);
  const Complex ref = hoa::hoa_expectation(exact, psi, cfg);
  EXPECT_LE(std::abs(hoa::trotterized_hoa_energy(model, psi, cfg, 200) - ref), 1e-8);
}

}  // namespace
