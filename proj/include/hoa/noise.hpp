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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hoa/measurement.hpp"
#include "hoa/propagator.hpp"

namespace hoa {

/// Amplitude decay of every qubit at rate gamma, unravelled into quantum
/// trajectories with a fixed substep.
struct NoiseConfig {
  double gamma = 0.0;
  double substep = 1e-3;
  std::uint64_t n_trajectories = 1;

  /// Largest gamma * substep accepted by the first-order unravelling.
  static constexpr double kMaxRateStep = 1e-3;

  NoiseConfig() = default;
  NoiseConfig(double rate, double step, std::uint64_t trajectories = 1)
      : gamma(rate), substep(step), n_trajectories(trajectories) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("NoiseConfig: gamma must be >= 0");
    if (!(substep > 0.0)) throw InvalidArgument("NoiseConfig: substep must be > 0");
    if (gamma * substep > kMaxRateStep * (1.0 + 1e-12)) {
      throw InvalidArgument("NoiseConfig: gamma * substep = " + detail::format_double(gamma * substep) +
                            " exceeds " + detail::format_double(kMaxRateStep));
    }
    if (n_trajectories == 0) throw InvalidArgument("NoiseConfig: need at least one trajectory");
  }

  /// Substep for a rate: the largest allowed, capped at `cap`.
  static double default_substep(double rate, double cap = 1e-2) {
    return rate > 0.0 ? std::min(cap, kMaxRateStep / rate) : cap;
  }
};

struct Trajectory {
  StateVector state;
  std::uint64_t jumps = 0;
};

/// Reusable trajectory machinery for one Hamiltonian and noise setting.
///
/// Decay acts on the |1> level of each qubit: L_j = sqrt(gamma) |0><1|_j.
/// Each substep h is split symmetrically: exp(-iHh/2), then either a jump
/// (probability p_j = gamma h <n_j>) or the no-jump damping
/// exp(-gamma h/2 sum_j n_j) with renormalization, then exp(-iHh/2).
class TrajectoryEngine {
 public:
  /// Total jump probability per substep above which the step is rejected.
  static constexpr double kMaxJumpProbability = 0.1;

  TrajectoryEngine(const Propagator& propagator, NoiseConfig cfg) : prop_(&propagator), cfg_(cfg) {
    n_qubits_ = propagator.n_qubits();
    const auto dim = propagator.dimension();
    popcount_.resize(dim);
    for (std::size_t b = 0; b < dim; ++b) popcount_[b] = std::popcount(b);
  }

  const NoiseConfig& config() const noexcept { return cfg_; }

  /// One stochastic trajectory from `psi` over time t >= 0.
  Trajectory evolve(const Amplitudes& psi, double t, Rng& rng) const {
    check_time(t);
    if (cfg_.gamma == 0.0 || t == 0.0) {
      return {StateVector::normalized(n_qubits_, prop_->evolve(psi, t)), 0};
    }
    const auto& g = grid(t);
    Amplitudes state = g.half * psi;
    std::uint64_t jumps = 0;
    run_from(g, state, 0, rng, jumps);
    return {StateVector::normalized(n_qubits_, std::move(state)), jumps};
  }

  /// Distribution of trajectory end states at time t, drawn `count` times.
  /// `visit(state, multiplicity)` receives the shared no-jump end state once
  /// with its multiplicity and every jumped trajectory individually.
  template <class Visitor>
  std::uint64_t sample_endpoints(const Amplitudes& psi, double t, std::uint64_t count, Rng& rng, Visitor&& visit) const {
    check_time(t);
    if (cfg_.gamma == 0.0 || t == 0.0) {
      visit(prop_->evolve(psi, t), count);
      return 0;
    }
    const auto& g = grid(t);
    const NoJumpPath path = no_jump_path(g, psi);
    std::binomial_distribution<std::uint64_t> clean(count, path.survival.back());
    const std::uint64_t n_clean = clean(rng);
    if (n_clean > 0) visit(path.final_state, n_clean);

    const double jump_mass = 1.0 - path.survival.back();
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uint64_t jumps = 0;
    for (std::uint64_t i = n_clean; i < count; ++i) {
      // First jump: smallest k with 1 - survival[k] > u * jump_mass.
      const double target = u01(rng) * jump_mass;
      const auto it = std::upper_bound(path.survival.begin(), path.survival.end(), 1.0 - target,
                                       [](double a, double b) { return a > b; });
      const auto k = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
          it - path.survival.begin(), static_cast<std::ptrdiff_t>(g.steps) - 1));
      Amplitudes state = path.pre[k];
      apply_jump(state, pick_qubit(path.pre[k], g.h, rng));
      ++jumps;
      advance(g, state, k);
      run_from(g, state, k + 1, rng, jumps);
      visit(Amplitudes(state.normalized()), std::uint64_t{1});
    }
    return jumps;
  }

 private:
  struct Grid {
    std::size_t steps;
    double h;
    Eigen::MatrixXcd half;
    Eigen::MatrixXcd full;
    Eigen::VectorXd damping;
  };

  struct NoJumpPath {
    std::vector<Amplitudes> pre;    // state before the decision of each substep
    std::vector<double> survival;   // P(no jump through substep k)
    Amplitudes final_state;
  };

  void check_time(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("trajectory: time must be >= 0");
  }

  const Grid& grid(double t) const {
    const auto key = static_cast<std::int64_t>(std::llround(t * 1e12));
    if (auto it = grids_.find(key); it != grids_.end()) return it->second;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t / cfg_.substep - 1e-9)));
    const double h = t / static_cast<double>(steps);
    Grid g{steps, h, prop_->step_matrix(0.5 * h), prop_->step_matrix(h), Eigen::VectorXd(popcount_.size())};
    for (std::size_t b = 0; b < popcount_.size(); ++b) {
      g.damping[static_cast<Eigen::Index>(b)] = std::exp(-0.5 * cfg_.gamma * h * popcount_[b]);
    }
    return grids_.emplace(key, std::move(g)).first->second;
  }

  std::uint64_t bit(std::size_t q) const { return std::uint64_t{1} << (n_qubits_ - 1 - q); }

  // Jump probabilities gamma h <n_j>; throws when their sum is too large.
  std::vector<double> jump_probabilities(const Amplitudes& s, double h) const {
    std::vector<double> p(n_qubits_, 0.0);
    const double norm2 = s.squaredNorm();
    for (Eigen::Index b = 0; b < s.size(); ++b) {
      const double w = std::norm(s[b]);
      if (w == 0.0) continue;
      for (std::size_t q = 0; q < n_qubits_; ++q) {
        if (static_cast<std::uint64_t>(b) & bit(q)) p[q] += w;
      }
    }
    double total = 0.0;
    for (auto& x : p) total += (x *= cfg_.gamma * h / norm2);
    if (total > kMaxJumpProbability) {
      throw NumericalError("trajectory: jump probability " + detail::format_double(total) +
                           " per substep exceeds " + detail::format_double(kMaxJumpProbability));
    }
    return p;
  }

  std::size_t pick_qubit(const Amplitudes& s, double h, Rng& rng) const {
    const auto p = jump_probabilities(s, h);
    std::discrete_distribution<std::size_t> d(p.begin(), p.end());
    return d(rng);
  }

  void apply_jump(Amplitudes& s, std::size_t q) const {
    const std::uint64_t m = bit(q);
    for (Eigen::Index b = 0; b < s.size(); ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      if (!(ub & m)) {
        s[b] = s[static_cast<Eigen::Index>(ub | m)];
      }
    }
    for (Eigen::Index b = 0; b < s.size(); ++b) {
      if (static_cast<std::uint64_t>(b) & m) s[b] = 0.0;
    }
    const double norm = s.norm();
    if (!(norm > 0.0)) throw NumericalError("trajectory: jump from an unpopulated level");
    s /= norm;
  }

  void damp(const Grid& g, Amplitudes& s) const {
    s = s.cwiseProduct(g.damping.cast<Complex>());
    s /= s.norm();
  }

  // Closes substep k (second half step) and opens k+1 when it exists.
  void advance(const Grid& g, Amplitudes& s, std::size_t k) const {
    s = (k + 1 < g.steps ? g.full : g.half) * s;
  }

  void run_from(const Grid& g, Amplitudes& s, std::size_t k0, Rng& rng, std::uint64_t& jumps) const {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t k = k0; k < g.steps; ++k) {
      const auto p = jump_probabilities(s, g.h);
      double u = u01(rng);
      std::size_t hit = n_qubits_;
      for (std::size_t q = 0; q < n_qubits_; ++q) {
        if (u < p[q]) {
          hit = q;
          break;
        }
        u -= p[q];
      }
      if (hit < n_qubits_) {
        apply_jump(s, hit);
        ++jumps;
      } else {
        damp(g, s);
      }
      advance(g, s, k);
    }
  }

  NoJumpPath no_jump_path(const Grid& g, const Amplitudes& psi) const {
    NoJumpPath path;
    path.pre.reserve(g.steps);
    path.survival.reserve(g.steps);
    Amplitudes s = g.half * psi;
    double survive = 1.0;
    for (std::size_t k = 0; k < g.steps; ++k) {
      path.pre.push_back(s);
      const auto p = jump_probabilities(s, g.h);
      double total = 0.0;
      for (double x : p) total += x;
      survive *= 1.0 - total;
      path.survival.push_back(survive);
      damp(g, s);
      advance(g, s, k);
    }
    path.final_state = s.normalized();
    return path;
  }

  const Propagator* prop_;
  NoiseConfig cfg_;
  std::size_t n_qubits_ = 0;
  std::vector<int> popcount_;
  mutable std::map<std::int64_t, Grid> grids_;
};

/// One trajectory of duration t; gamma = 0 is exact unitary evolution.
inline Trajectory mcwf_evolve(const Propagator& p, const StateVector& psi, double t, const NoiseConfig& cfg, Rng& rng) {
  if (!(t >= 0.0)) throw InvalidArgument("mcwf_evolve: time must be >= 0");
  return TrajectoryEngine(p, cfg).evolve(psi.amplitudes(), t, rng);
}

/// Trajectory-averaged density matrix over cfg.n_trajectories runs.
inline Eigen::MatrixXcd trajectory_density(const Propagator& p, const StateVector& psi, double t,
                                           const NoiseConfig& cfg, Rng& rng) {
  const TrajectoryEngine engine(p, cfg);
  const auto dim = static_cast<Eigen::Index>(p.dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  engine.sample_endpoints(psi.amplitudes(), t, cfg.n_trajectories, rng, [&](const Amplitudes& s, std::uint64_t m) {
    rho += static_cast<double>(m) * (s * s.adjoint());
  });
  return rho / static_cast<double>(cfg.n_trajectories);
}

/// Energy estimate with a noisy propagated branch.
struct NoisyEnergyEstimate : EnergyEstimate {
  std::uint64_t trajectories = 0;
  std::uint64_t jumps = 0;

  double mean_jumps() const { return trajectories ? static_cast<double>(jumps) / trajectories : 0.0; }
};

/// Sampled HOA energy where every shot reads a fresh trajectory U_noisy|psi>
/// against the ideal reference <psi|. With `shots_total = nullopt` the
/// overlaps are trajectory averages over cfg_noise.n_trajectories runs per
/// time point, without readout noise.
inline NoisyEnergyEstimate noisy_hoa_energy(const Propagator& p, const StateVector& psi, const HoaConfig& cfg,
                                            const NoiseConfig& noise, std::optional<std::uint64_t> shots_total,
                                            Rng& rng) {
  NoisyEnergyEstimate out;
  if (noise.gamma == 0.0) {
    static_cast<EnergyEstimate&>(out) = sampled_hoa_energy(p, psi, cfg, shots_total, rng);
    return out;
  }
  if (cfg.scheme.order() != 1) throw InvalidArgument("noisy_hoa_energy: scheme order must be 1");
  const TrajectoryEngine engine(p, noise);
  const Amplitudes& ref = psi.amplitudes();

  if (!shots_total) {
    const std::uint64_t base = rng();
    std::map<int, Complex> mean;
    std::uint64_t index = 0;
    for (int n : measured_offsets(cfg.scheme)) {
      Rng r(child_seed(base, index++));
      Complex acc{0.0, 0.0};
      const double t = std::abs(n * cfg.dt);
      out.jumps += engine.sample_endpoints(ref, t, noise.n_trajectories, r, [&](const Amplitudes& s, std::uint64_t m) {
        acc += static_cast<double>(m) * overlap(ref, s);
      });
      out.trajectories += noise.n_trajectories;
      Complex o = acc / static_cast<double>(noise.n_trajectories);
      if (n < 0) o = std::conj(o);
      mean[n] = o;
      out.overlaps[n] = OverlapEstimate{o.real(), o.imag(), 0, 0, 0.0, 0.0};
    }
    if (cfg.scheme.is_antisymmetric()) {
      std::map<int, double> im;
      for (const auto& [n, o] : mean) im[n] = o.imag();
      out.energy = collapsed_energy(im, cfg);
    } else {
      Complex acc = cfg.scheme.value(0);
      for (const auto& [n, o] : mean) acc += cfg.scheme.value(n) * o;
      out.energy = Complex(0.0, 1.0 / cfg.dt) * acc;
    }
    return out;
  }

  const std::uint64_t base = rng();
  static_cast<EnergyEstimate&>(out) = detail::assemble_sampled_energy(
      cfg, *shots_total, base, [&](int n, std::uint64_t shots, Rng& r, OverlapPart part) {
        // Negative times run the conjugate experiment: O_{-n} = conj(O_n)
        // holds trajectory by trajectory for the forward-time unravelling.
        const double t = std::abs(n * cfg.dt);
        const bool flip = n < 0 && part == OverlapPart::im;
        std::int64_t ups = 0;
        out.jumps += engine.sample_endpoints(ref, t, shots, r, [&](const Amplitudes& s, std::uint64_t m) {
          Complex o = overlap(ref, s);
          if (flip) o = std::conj(o);
          const double pz = std::clamp(0.5 * (1.0 + ancilla_z(o, part)), 0.0, 1.0);
          std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(m), pz);
          ups += draw(r);
        });
        out.trajectories += shots;
        const double z_hat = 2.0 * static_cast<double>(ups) / static_cast<double>(shots) - 1.0;
        return part == OverlapPart::im ? -z_hat : z_hat;
      });
  return out;
}

}  // namespace hoa
