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

#include "hoa/ground.hpp"
#include "hoa/models.hpp"
#include "oracles.hpp"

namespace {

using hoa::Complex;
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

TEST(DirectIteration, TwoLevelPowerMethod) {
  const PauliSum h(1, {{2.0, "I"}, {1.0, "Z"}});  // diag(3, 1)
  const hoa::Propagator p(h);
  const auto trace = hoa::direct_iteration(h, p, hoa::uniform_state(1), {5, std::nullopt, 0.0});
  ASSERT_EQ(trace.energies.size(), 6u);
  for (std::size_t k = 0; k < trace.energies.size(); ++k) {
    const double w = std::pow(9.0, static_cast<double>(k));
    EXPECT_NEAR(trace.energies[k], (3 * w + 1) / (w + 1), 1e-12);
  }
  EXPECT_NEAR(trace.energies.back(), 3.0, 1e-4);
  EXPECT_TRUE(trace.hoa_energies.empty());
}

TEST(DirectIteration, FixedPoint) {
  const auto h = hoa::heisenberg(4, 1.0, 0.3, hoa::Boundary::ring, hoa::Coupling::antiferromagnetic);
  const hoa::Propagator p(h);
  Eigen::Index dominant;
  p.eigenvalues().cwiseAbs().maxCoeff(&dominant);
  const auto v = hoa::StateVector::normalized(4, p.eigenvectors().col(dominant));
  const auto trace = hoa::direct_iteration(h, p, v, {4, std::nullopt, 0.0});
  for (double e : trace.energies) EXPECT_NEAR(e, p.eigenvalues()[dominant], 1e-10);
}

TEST(DirectIteration, ShiftIsReportedUnshifted) {
  const auto h = hoa::heisenberg(4, 1.0, 0.3, hoa::Boundary::open, hoa::Coupling::antiferromagnetic);
  const double lambda = 1.7;
  const auto shifted_h = h + PauliSum(4, {{-lambda, "IIII"}});
  const hoa::Propagator p(h), ps(shifted_h);
  const auto start = hoa::neel_state(4);
  const auto a = hoa::direct_iteration(h, p, start, {6, std::nullopt, lambda});
  const auto b = hoa::direct_iteration(shifted_h, ps, start, {6, std::nullopt, 0.0});
  for (std::size_t k = 0; k < a.energies.size(); ++k) EXPECT_NEAR(a.energies[k], b.energies[k] + lambda, 1e-9);
}

TEST(DirectIteration, HoaModeTracksExactMode) {
  const auto h = hoa::heisenberg(4, 1.0, 1.0, hoa::Boundary::open, hoa::Coupling::antiferromagnetic);
  const hoa::Propagator p(h);
  const hoa::HoaConfig cfg(hoa::centered_stencil(7), 0.02);
  const auto exact = hoa::direct_iteration(h, p, hoa::neel_state(4), {4, std::nullopt, 0.0});
  const auto approx = hoa::direct_iteration(h, p, hoa::neel_state(4), {4, cfg, 0.0});
  ASSERT_EQ(approx.hoa_energies.size(), 5u);
  for (std::size_t k = 0; k < exact.energies.size(); ++k) {
    EXPECT_NEAR(exact.energies[k], approx.energies[k], 1e-6);
    EXPECT_NEAR(approx.hoa_energies[k], approx.energies[k], 1e-6);
  }
}

TEST(DirectIteration, DegenerateStart) {
  const PauliSum proj(1, {{0.5, "I"}, {0.5, "Z"}});
  const hoa::Propagator p(proj);
  EXPECT_THROW(hoa::direct_iteration(proj, p, hoa::basis_state(1, "1"), {1, std::nullopt, 0.0}), hoa::NumericalError);
}

TEST(Qfd, SingleElement) {
  const auto h = hoa::heisenberg(3, 1.0, 0.2, hoa::Boundary::open);
  const hoa::Propagator p(h);
  hoa::QfdConfig cfg;
  cfg.k_max = 0;
  cfg.kappa = 5.0;
  cfg.references = {hoa::uniform_state(3)};
  const auto m = hoa::qfd_build(h, p, cfg);
  ASSERT_EQ(m.S.rows(), 1);
  EXPECT_NEAR(std::abs(m.S(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(m.H(0, 0).real(), hoa::expectation(h, hoa::uniform_state(3)), 1e-13);
  EXPECT_THROW(hoa::qfd_build(h, p, {0, 0.0, cfg.references}), hoa::InvalidArgument);
}

TEST(Qfd, BlockToeplitzAndHermitian) {
  std::mt19937_64 rng(3);
  const auto h = random_sum(3, 8, rng);
  const hoa::Propagator p(h);
  hoa::QfdConfig cfg{3, hoa::spectral_bound(h, hoa::BoundMethod::gershgorin).kappa,
                     {hoa::random_state(3, rng), hoa::random_state(3, rng)}};
  const auto m = hoa::qfd_build(h, p, cfg);
  EXPECT_LE((m.S - m.S.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((m.H - m.H.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  for (std::size_t jp = 0; jp < 2; ++jp)
    for (std::size_t j = 0; j < 2; ++j)
      for (int kp = -2; kp <= 3; ++kp)
        for (int k = -2; k <= 3; ++k) {
          if (kp - 1 < -3 || k - 1 < -3) continue;
          const auto a = m.S(m.index(jp, kp), m.index(j, k));
          const auto b = m.S(m.index(jp, kp - 1), m.index(j, k - 1));
          EXPECT_LE(std::abs(a - b), 1e-12);
        }
}

TEST(GeneralizedSolve, IdentityOverlap) {
  std::mt19937_64 rng(4);
  const auto hm = hoa::to_dense(random_sum(3, 8, rng));
  const auto r = hoa::solve_generalized(hm, Eigen::MatrixXcd::Identity(8, 8), 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
  EXPECT_EQ(r.retained_dim, 8u);
  EXPECT_LE((r.eigenvalues - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GeneralizedSolve, DuplicatedBasisVector) {
  std::mt19937_64 rng(5);
  const auto hd = hoa::to_dense(random_sum(3, 8, rng));
  Eigen::MatrixXcd basis(8, 4);
  for (int c = 0; c < 4; ++c) basis.col(c) = hoa::random_state(3, rng).amplitudes();
  Eigen::MatrixXcd dup(8, 5);
  dup << basis, basis.col(1);
  const auto base = hoa::solve_generalized(basis.adjoint() * hd * basis, basis.adjoint() * basis, 1e-10);
  const auto with = hoa::solve_generalized(dup.adjoint() * hd * dup, dup.adjoint() * dup, 1e-10);
  EXPECT_EQ(base.retained_dim, 4u);
  EXPECT_EQ(with.retained_dim, 4u);
  EXPECT_EQ(with.basis_dim, 5u);
  EXPECT_LE((base.eigenvalues - with.eigenvalues).cwiseAbs().maxCoeff(), 1e-9);
  // Coefficients map back to Ritz vectors.
  const Eigen::VectorXcd v = dup * with.coefficients.col(0);
  EXPECT_NEAR(v.norm(), 1.0, 1e-9);
  EXPECT_NEAR(v.dot(hd * v).real(), with.lowest(), 1e-9);
}

TEST(GeneralizedSolve, Errors) {
  EXPECT_THROW(hoa::solve_generalized(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(3, 3), 1e-10),
               hoa::DimensionError);
  EXPECT_THROW(hoa::solve_generalized(Eigen::MatrixXcd::Identity(2, 2), -Eigen::MatrixXcd::Identity(2, 2), 1e-10),
               hoa::NumericalError);
}

TEST(Qfd, RayleighRitzOnModels) {
  std::mt19937_64 rng(6);
  struct Case {
    PauliSum h;
    hoa::StateVector ref;
  };
  std::vector<Case> cases;
  cases.push_back({hoa::heisenberg(4, 1.0, 1.0, hoa::Boundary::ring, hoa::Coupling::antiferromagnetic), hoa::neel_state(4)});
  cases.push_back({hoa::heisenberg(5, 1.0, 0.1, hoa::Boundary::open), hoa::neel_state(5)});
  cases.push_back({random_sum(4, 12, rng), hoa::random_state(4, rng)});
  cases.push_back({hoa::hubbard_2x2_jw(1.0, 0.1, 0.05, 0.001), hoa::uniform_state(8)});
  for (const auto& c : cases) {
    const hoa::Propagator p(c.h);
    hoa::QfdConfig cfg{4, hoa::spectral_bound(c.h, hoa::BoundMethod::gershgorin).kappa, {c.ref}};
    cfg.threshold = 1e-12;
    const auto sweep = hoa::qfd_sweep(c.h, p, cfg);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& r : sweep) {
      EXPECT_GE(r.lowest(), p.ground_energy() - 1e-9);
      EXPECT_LE(r.lowest(), prev + 1e-9);
      prev = r.lowest();
    }
  }
}

TEST(Qfd, HoaModeConvergesAtSchemeOrder) {
  const auto h = hoa::heisenberg(4, 1.0, 0.5, hoa::Boundary::ring, hoa::Coupling::antiferromagnetic);
  const hoa::Propagator p(h);
  hoa::QfdConfig cfg{1, hoa::spectral_bound(h, hoa::BoundMethod::gershgorin).kappa, {hoa::neel_state(4)}};
  const double exact = hoa::solve_generalized(hoa::qfd_build(h, p, cfg).H, hoa::qfd_build(h, p, cfg).S, 1e-10).lowest();
  std::vector<double> dts, errs;
  for (double dt : {0.2, 0.1, 0.05}) {
    cfg.hoa = hoa::HoaConfig(hoa::centered_stencil(3), dt);
    const auto m = hoa::qfd_build(h, p, cfg);
    dts.push_back(dt);
    errs.push_back(std::abs(hoa::solve_generalized(m.H, m.S, 1e-10).lowest() - exact));
  }
  EXPECT_NEAR(oracle::loglog_slope(dts, errs), 2.0, 0.3);
}

TEST(Qfd, OverlapCountFormula) {
  EXPECT_EQ(hoa::unique_overlap_count(4, 5, true), 21u);
  EXPECT_EQ(hoa::unique_overlap_count(0, 5, false), 5u);
  EXPECT_EQ(hoa::unique_overlap_count(4, 5, false), 85u);
  const auto h = hoa::heisenberg(3, 1.0, 0.1, hoa::Boundary::open);
  const hoa::Propagator p(h);
  for (int k_max : {0, 1, 4}) {
    const double kappa = 4.0;
    hoa::QfdConfig aligned{k_max, kappa, {hoa::uniform_state(3)}, hoa::HoaConfig(hoa::centered_stencil(5), 1.0 / kappa)};
    EXPECT_EQ(hoa::qfd_build(h, p, aligned).times.size(), hoa::unique_overlap_count(k_max, 5, true));
    hoa::QfdConfig loose = aligned;
    loose.hoa = hoa::HoaConfig(hoa::centered_stencil(5), 0.0137);
    EXPECT_EQ(hoa::qfd_build(h, p, loose).times.size(), hoa::unique_overlap_count(k_max, 5, false));
  }
}

TEST(Qfd, CsvRendering) {
  const auto r = hoa::solve_generalized(Eigen::MatrixXcd::Identity(2, 2) * 2.0, Eigen::MatrixXcd::Identity(2, 2), 1e-10);
  const auto csv = hoa::qfd_result_csv(r);
  EXPECT_NE(csv.find("# retained_dim=2"), std::string::npos);
  EXPECT_NE(csv.find("index,eigenvalue\n0,2\n1,2\n"), std::string::npos);
}

}  // namespace
