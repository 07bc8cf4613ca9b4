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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hoa/approximation.hpp"
#include "hoa/error.hpp"
#include "hoa/spectral.hpp"

namespace hoa {

// ---------------------------------------------------------------------------
// Direct (power) iteration

struct DirectIterationConfig {
  int iterations = 4;
  /// Exact H when empty, otherwise its stencil representation.
  std::optional<HoaConfig> hoa;
  /// Iterates H - shift * I; energies are reported unshifted.
  double shift = 0.0;
};

struct DirectIterationTrace {
  /// <Psi_k|H|Psi_k> for k = 0 .. K.
  std::vector<double> energies;
  /// Stencil estimate of <Psi_k|H|Psi_k>, filled in HOA mode.
  std::vector<double> hoa_energies;
  std::vector<Amplitudes> states;
};

/// |Psi_k> = Op |Psi_{k-1}> / norm with Op = H - shift or its HOA version.
/// Converges to the eigenvector of Op with the largest |eigenvalue| when the
/// start overlaps it.
template <Evolver E>
DirectIterationTrace direct_iteration(const PauliSum& h, const E& evolver, const StateVector& psi0,
                                      const DirectIterationConfig& cfg) {
  if (cfg.iterations < 0) throw InvalidArgument("direct_iteration: iterations must be >= 0");
  if (psi0.n_qubits() != h.n_qubits()) throw DimensionError("direct_iteration: state and Hamiltonian sizes differ");
  DirectIterationTrace trace;
  Amplitudes psi = psi0.amplitudes();
  auto record = [&](const Amplitudes& s) {
    trace.energies.push_back(expectation(h, s));
    if (cfg.hoa) trace.hoa_energies.push_back(hoa_expectation(evolver, s, *cfg.hoa).real());
    trace.states.push_back(s);
  };
  record(psi);
  for (int k = 0; k < cfg.iterations; ++k) {
    Amplitudes next = cfg.hoa ? hoa_apply(evolver, psi, *cfg.hoa) : apply_pauli_sum(h, psi);
    if (cfg.shift != 0.0) next -= cfg.shift * psi;
    const double norm = next.norm();
    if (!(norm >= 1e-12)) throw NumericalError("direct_iteration: norm collapsed at iteration " + std::to_string(k + 1));
    psi = next / norm;
    record(psi);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Quantum filter diagonalization

struct QfdConfig {
  int k_max = 0;
  /// Spectral width; the time grid is k / kappa.
  double kappa = 1.0;
  std::vector<StateVector> references;
  std::optional<HoaConfig> hoa;
  /// Relative cutoff on overlap-matrix eigenvalues.
  double threshold = 1e-10;
};

struct QfdMatrices {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd S;
  /// Distinct evolution times (rounded to 1e-12) that were evaluated.
  std::set<std::int64_t> times;
  int k_max = 0;
  std::size_t n_references = 0;

  std::size_t index(std::size_t ref, int k) const {
    return ref * static_cast<std::size_t>(2 * k_max + 1) + static_cast<std::size_t>(k + k_max);
  }
};

struct QfdResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd coefficients;
  std::size_t retained_dim = 0;
  std::size_t basis_dim = 0;
  double s_max = 0.0;
  double s_min_retained = 0.0;

  double lowest() const { return eigenvalues[0]; }
  double condition() const { return s_min_retained > 0 ? s_max / s_min_retained : 0.0; }
};

inline std::int64_t time_key(double t) { return static_cast<std::int64_t>(std::llround(t * 1e12)); }

/// Builds S[(j',k'),(j,k)] = <psi_j'|U((k-k')/kappa)|psi_j> and the matching H
/// matrix. Exact mode inserts H directly; HOA mode replaces it with the
/// stencil, so every element is a propagator overlap at shifted times.
template <Evolver E>
QfdMatrices qfd_build(const PauliSum& h, const E& evolver, const QfdConfig& cfg) {
  if (!(cfg.kappa > 0.0) || !std::isfinite(cfg.kappa)) throw InvalidArgument("qfd_build: kappa must be > 0");
  if (cfg.k_max < 0) throw InvalidArgument("qfd_build: k_max must be >= 0");
  if (cfg.references.empty()) throw InvalidArgument("qfd_build: need at least one reference state");
  if (cfg.hoa && cfg.hoa->scheme.order() != 1) throw InvalidArgument("qfd_build: scheme order must be 1");
  for (const auto& r : cfg.references) {
    if (r.n_qubits() != h.n_qubits()) throw DimensionError("qfd_build: reference size differs from Hamiltonian");
  }

  const std::size_t refs = cfg.references.size();
  const int width = 2 * cfg.k_max + 1;
  const auto dim = static_cast<Eigen::Index>(refs * static_cast<std::size_t>(width));
  QfdMatrices out{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim), {}, cfg.k_max, refs};

  std::vector<Amplitudes> h_refs;
  if (!cfg.hoa) {
    for (const auto& r : cfg.references) h_refs.push_back(apply_pauli_sum(h, r.amplitudes()));
  }
  std::map<std::pair<std::size_t, std::int64_t>, Amplitudes> evolved;
  auto propagate = [&](std::size_t j, double t) -> const Amplitudes& {
    const auto key = std::make_pair(j, time_key(t));
    out.times.insert(key.second);
    if (auto it = evolved.find(key); it != evolved.end()) return it->second;
    return evolved.emplace(key, evolver.evolve(cfg.references[j].amplitudes(), t)).first->second;
  };

  for (std::size_t jp = 0; jp < refs; ++jp) {
    for (std::size_t j = 0; j < refs; ++j) {
      const auto& bra = cfg.references[jp].amplitudes();
      for (int kp = -cfg.k_max; kp <= cfg.k_max; ++kp) {
        for (int k = -cfg.k_max; k <= cfg.k_max; ++k) {
          const double t = (k - kp) / cfg.kappa;
          const auto row = static_cast<Eigen::Index>(out.index(jp, kp));
          const auto col = static_cast<Eigen::Index>(out.index(j, k));
          const Amplitudes& u = propagate(j, t);
          out.S(row, col) = bra.dot(u);
          if (!cfg.hoa) {
            out.H(row, col) = h_refs[jp].dot(u);
          } else {
            Complex acc{0.0, 0.0};
            for (int n : cfg.hoa->scheme.offsets()) {
              if (cfg.hoa->scheme.weight(n) == 0) continue;
              acc += cfg.hoa->scheme.value(n) * bra.dot(propagate(j, t + n * cfg.hoa->dt));
            }
            out.H(row, col) = Complex(0.0, 1.0 / cfg.hoa->dt) * acc;
          }
        }
      }
    }
  }
  out.H = (0.5 * (out.H + out.H.adjoint())).eval();
  out.S = (0.5 * (out.S + out.S.adjoint())).eval();
  return out;
}

/// Canonical orthogonalization: drop overlap eigenvalues below
/// threshold * max, solve the projected Hermitian problem, map back.
inline QfdResult solve_generalized(const Eigen::MatrixXcd& Hm, const Eigen::MatrixXcd& Sm, double threshold) {
  if (Hm.rows() != Hm.cols() || Sm.rows() != Sm.cols() || Hm.rows() != Sm.rows()) {
    throw DimensionError("solve_generalized: matrices must be square and of equal size");
  }
  if (Hm.rows() == 0) throw DimensionError("solve_generalized: empty matrices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s_eig(Sm);
  const Eigen::VectorXd& s = s_eig.eigenvalues();
  const double s_max = s.maxCoeff();
  if (!(s_max > 0.0)) throw NumericalError("solve_generalized: overlap matrix has no positive eigenvalue");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > threshold * s_max) keep.push_back(i);
  }
  if (keep.empty()) throw NumericalError("solve_generalized: every direction was discarded");

  Eigen::MatrixXcd X(Sm.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    X.col(static_cast<Eigen::Index>(c)) = s_eig.eigenvectors().col(keep[c]) / std::sqrt(s[keep[c]]);
  }
  Eigen::MatrixXcd Hp = X.adjoint() * Hm * X;
  Hp = (0.5 * (Hp + Hp.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_eig(Hp);

  QfdResult r;
  r.eigenvalues = h_eig.eigenvalues();
  r.coefficients = X * h_eig.eigenvectors();
  r.retained_dim = keep.size();
  r.basis_dim = static_cast<std::size_t>(Sm.rows());
  r.s_max = s_max;
  r.s_min_retained = s[keep.front()];
  return r;
}

/// Restriction of a build to |k| <= k, all references.
inline std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> qfd_submatrices(const QfdMatrices& m, int k) {
  if (k < 0 || k > m.k_max) throw InvalidArgument("qfd_submatrices: k out of range");
  std::vector<Eigen::Index> idx;
  for (std::size_t j = 0; j < m.n_references; ++j) {
    for (int kk = -k; kk <= k; ++kk) idx.push_back(static_cast<Eigen::Index>(m.index(j, kk)));
  }
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd h(n, n), s(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      h(a, b) = m.H(idx[a], idx[b]);
      s(a, b) = m.S(idx[a], idx[b]);
    }
  }
  return {h, s};
}

/// Lowest-energy results for every k = 0 .. k_max from one build (nested bases).
template <Evolver E>
std::vector<QfdResult> qfd_sweep(const PauliSum& h, const E& evolver, const QfdConfig& cfg) {
  const auto m = qfd_build(h, evolver, cfg);
  std::vector<QfdResult> out;
  for (int k = 0; k <= cfg.k_max; ++k) {
    const auto [hk, sk] = qfd_submatrices(m, k);
    out.push_back(solve_generalized(hk, sk, cfg.threshold));
  }
  return out;
}

/// Number of distinct propagation times in a QFD build with one reference:
/// (4 k_max + 1) + (S - 1) when dt = 1/kappa, (4 k_max + 1) S otherwise.
inline std::size_t unique_overlap_count(int k_max, int S, bool aligned) {
  if (k_max < 0 || S < 1) throw InvalidArgument("unique_overlap_count: k_max >= 0 and S >= 1 required");
  const auto shifts = static_cast<std::size_t>(4 * k_max + 1);
  return aligned ? shifts + static_cast<std::size_t>(S - 1) : shifts * static_cast<std::size_t>(S);
}

inline std::string qfd_result_csv(const QfdResult& r) {
  std::string out;
  out += "# retained_dim=" + std::to_string(r.retained_dim) + "\n";
  out += "# basis_dim=" + std::to_string(r.basis_dim) + "\n";
  out += "# s_max=" + detail::format_double(r.s_max) + "\n";
  out += "# condition=" + detail::format_double(r.condition()) + "\n";
  out += "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    out += std::to_string(i) + "," + detail::format_double(r.eigenvalues[i]) + "\n";
  }
  return out;
}

}  // namespace hoa
