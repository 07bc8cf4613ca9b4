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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "hoa/models.hpp"
#include "hoa/pauli.hpp"
#include "hoa/spectral.hpp"
#include "hoa/statevector.hpp"
#include "oracles.hpp"

namespace {

using hoa::Boundary;
using hoa::Coupling;
using hoa::PauliSum;

PauliSum random_sum(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> axis(0, 3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<hoa::PauliTerm> t;
  for (std::size_t i = 0; i < terms; ++i) {
    std::string s(n, 'I');
    for (auto& c : s) c = "IXYZ"[axis(rng)];
    t.push_back({coef(rng), s});
  }
  return PauliSum(n, t);
}

double ground(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

TEST(Heisenberg, TwoSiteTermsAndGround) {
  const auto h = hoa::heisenberg(2, 1.0, 0.1, Boundary::open);
  ASSERT_EQ(h.size(), 5u);
  for (const auto& t : h.terms()) {
    if (t.axes == "XX" || t.axes == "YY" || t.axes == "ZZ") {
      EXPECT_DOUBLE_EQ(t.coefficient, -1.0);
    } else {
      EXPECT_TRUE(t.axes == "ZI" || t.axes == "IZ");
      EXPECT_DOUBLE_EQ(t.coefficient, -0.1);
    }
  }
  EXPECT_NEAR(ground(oracle::kron_dense(h)), -1.2, 1e-12);
}

TEST(Heisenberg, FieldOnly) {
  const auto h = hoa::heisenberg(2, 0.0, 1.0, Boundary::open);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_NEAR(ground(hoa::to_dense(h)), -2.0, 1e-12);
}

TEST(Heisenberg, UniformStateProductExpectation) {
  const auto h = hoa::heisenberg(8, 1.0, 0.1, Boundary::open);
  EXPECT_NEAR(hoa::expectation(h, hoa::uniform_state(8)), -7.0, 1e-12);
}

TEST(Heisenberg, RingBondsAndSignFlag) {
  const auto ring = hoa::heisenberg(4, 1.0, 0.0, Boundary::ring);
  EXPECT_EQ(ring.size(), 12u);
  const auto afm = hoa::heisenberg(4, 1.0, 0.5, Boundary::ring, Coupling::antiferromagnetic);
  for (const auto& t : afm.terms()) {
    if (std::count(t.axes.begin(), t.axes.end(), 'I') == 2) EXPECT_DOUBLE_EQ(t.coefficient, 1.0);
    else EXPECT_DOUBLE_EQ(t.coefficient, -0.5);
  }
}

TEST(Heisenberg, RejectsSingleSite) { EXPECT_THROW(hoa::heisenberg(1, 1.0, 0.0, Boundary::open), hoa::InvalidArgument); }

TEST(Heisenberg, RingCommutesWithTotalZ) {
  const auto h = hoa::to_dense(hoa::heisenberg(5, 0.7, 0.0, Boundary::ring));
  std::vector<hoa::PauliTerm> z;
  for (std::size_t q = 0; q < 5; ++q) {
    std::string s(5, 'I');
    s[q] = 'Z';
    z.push_back({1.0, s});
  }
  const auto mz = hoa::to_dense(PauliSum(5, z));
  EXPECT_LE((h * mz - mz * h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dense, SmallCases) {
  const auto z = hoa::to_dense(PauliSum(1, {{1.0, "Z"}}));
  EXPECT_EQ(z(0, 0), hoa::Complex(1.0));
  EXPECT_EQ(z(1, 1), hoa::Complex(-1.0));
  EXPECT_EQ(z(0, 1), hoa::Complex(0.0));
  const auto xx = hoa::to_dense(PauliSum(2, {{1.0, "XX"}}));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(xx(r, c), hoa::Complex(r + c == 3 ? 1.0 : 0.0));
}

TEST(Dense, MatchesKroneckerOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_sum(4, 12, rng);
    EXPECT_LE((hoa::to_dense(h) - oracle::kron_dense(h)).cwiseAbs().maxCoeff(), 1e-14);
  }
  const auto h3 = hoa::heisenberg(3, 1.0, 0.3, Boundary::open);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(hoa::to_dense(h3)), b(oracle::kron_dense(h3));
  EXPECT_LE((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dense, Hermitian) {
  std::mt19937_64 rng(5);
  const auto m = hoa::to_dense(random_sum(5, 20, rng));
  EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dense, CapEnforced) {
  const PauliSum big(15, {{1.0, std::string(15, 'Z')}});
  EXPECT_THROW(hoa::to_dense(big), hoa::SizeLimitError);
  EXPECT_NO_THROW(hoa::to_dense(PauliSum(3, {{1.0, "ZZZ"}}), 3));
}

TEST(PauliSumCanonical, ShuffledTermsGiveSameOperator) {
  std::mt19937_64 rng(3);
  const auto h = random_sum(4, 15, rng);
  std::vector<hoa::PauliTerm> t(h.terms().begin(), h.terms().end());
  std::shuffle(t.begin(), t.end(), rng);
  const PauliSum shuffled(4, t);
  EXPECT_EQ(shuffled, h);
  EXPECT_LE((hoa::to_dense(shuffled) - hoa::to_dense(h)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PauliSumCanonical, MergesAndDrops) {
  const PauliSum h(2, {{0.5, "XI"}, {0.5, "XI"}, {1e-17, "ZZ"}});
  ASSERT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(h.terms()[0].coefficient, 1.0);
}

TEST(PauliSumCanonical, RejectsBadInput) {
  EXPECT_THROW(PauliSum(2, {{1.0, "X"}}), hoa::DimensionError);
  EXPECT_THROW(PauliSum(2, {{1.0, "XQ"}}), hoa::InvalidArgument);
  EXPECT_THROW(PauliSum(1, {{std::nan(""), "X"}}), hoa::InvalidArgument);
}

TEST(PauliText, ParsesAndMerges) {
  const auto h = hoa::parse_pauli_text("1.0 ZZ\n");
  ASSERT_EQ(h.n_qubits(), 2u);
  ASSERT_EQ(h.size(), 1u);
  const auto m = hoa::parse_pauli_text("# comment\n\n0.5 XI\n0.5 XI  # trailing\n");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m.terms()[0].coefficient, 1.0);
}

TEST(PauliText, ReportsLineNumbers) {
  try {
    hoa::parse_pauli_text("1.0 ZZ\n# ok\nfoo ZZ\n");
    FAIL();
  } catch (const hoa::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    hoa::parse_pauli_text("1.0 ZZ\n2.0 ZZZ\n");
    FAIL();
  } catch (const hoa::DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(hoa::parse_pauli_text("1.0\n"), hoa::ParseError);
  EXPECT_THROW(hoa::parse_pauli_text("# nothing\n"), hoa::ParseError);
}

TEST(PauliText, RoundTripRandomFiles) {
  std::mt19937_64 rng(99);
  const auto dir = std::filesystem::temp_directory_path();
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_sum(1 + trial % 6, 1 + trial, rng);
    const auto path = (dir / ("hoa_roundtrip_" + std::to_string(trial) + ".txt")).string();
    hoa::save_pauli_file(h, path);
    EXPECT_EQ(hoa::load_pauli_file(path), h);
    EXPECT_EQ(hoa::parse_pauli_text(hoa::to_pauli_text(h)), h);
    std::filesystem::remove(path);
  }
  EXPECT_THROW(hoa::load_pauli_file("/nonexistent/hoa.txt"), hoa::ParseError);
}

TEST(Hubbard, NoHoppingIsDiagonalWithZeroGround) {
  const auto h = hoa::hubbard_2x2_jw(1.0, 0.0, 0.0, 0.0);
  for (const auto& t : h.terms()) EXPECT_EQ(t.axes.find_first_of("XY"), std::string::npos);
  EXPECT_NEAR(ground(hoa::to_dense(h)), 0.0, 1e-12);
}

TEST(Hubbard, MatchesFermionicOracle) {
  const double U = 1.0, J = 0.1, mu = 0.03, hf = 0.02;
  const auto h = hoa::to_dense(hoa::hubbard_2x2_jw(U, J, mu, hf));
  std::vector<oracle::Matrix> c;
  for (int p = 0; p < 8; ++p) c.push_back(oracle::annihilator(8, p));
  oracle::Matrix ref = oracle::Matrix::Zero(256, 256);
  auto number = [&](int p) -> oracle::Matrix { return c[p].adjoint() * c[p]; };
  for (auto [i, j] : hoa::kPlaquetteBonds) {
    for (int s : {0, 1}) {
      const int a = static_cast<int>(2 * i) + s, b = static_cast<int>(2 * j) + s;
      ref -= J * (c[a].adjoint() * c[b] + c[b].adjoint() * c[a]);
    }
  }
  for (int site = 0; site < 4; ++site) {
    const int up = 2 * site, dn = 2 * site + 1;
    ref += U * number(up) * number(dn);
    ref -= mu * (number(up) + number(dn));
    ref -= hf * (number(up) - number(dn));
  }
  EXPECT_LE((h - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Hubbard, GershgorinWidth) {
  const auto h = hoa::hubbard_2x2_jw(1.0, 0.1, 0.05, 0.001);
  EXPECT_NEAR(hoa::spectral_bound(h, hoa::BoundMethod::gershgorin).kappa, 4.60, 5e-3);
}

TEST(Spectral, SingleZ) {
  const PauliSum z(1, {{1.0, "Z"}});
  EXPECT_DOUBLE_EQ(hoa::spectral_bound(z, hoa::BoundMethod::gershgorin).kappa, 2.0);
  EXPECT_DOUBLE_EQ(hoa::spectral_bound(z, hoa::BoundMethod::coefficient_sum).kappa, 2.0);
  EXPECT_NEAR(hoa::spectral_bound(z, hoa::BoundMethod::exact).kappa, 2.0, 1e-12);
}

TEST(Spectral, BoundsDominateExactSpread) {
  std::mt19937_64 rng(21);
  std::vector<PauliSum> models;
  for (int i = 0; i < 10; ++i) models.push_back(random_sum(4, 10, rng));
  models.push_back(hoa::heisenberg(6, 1.0, 1.0, Boundary::ring, Coupling::antiferromagnetic));
  models.push_back(hoa::hubbard_2x2_jw(1.0, 0.1, 0.05, 0.001));
  for (const auto& h : models) {
    const double exact = hoa::spectral_bound(h, hoa::BoundMethod::exact).kappa;
    EXPECT_GE(hoa::spectral_bound(h, hoa::BoundMethod::gershgorin).kappa, exact - 1e-12);
    EXPECT_GE(hoa::spectral_bound(h, hoa::BoundMethod::coefficient_sum).kappa, exact - 1e-12);
  }
}

}  // namespace
