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
#include <random>

#include "hoa/approximation.hpp"
#include "hoa/error.hpp"

namespace hoa {

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (seed, index): decorrelated child streams that do
/// not depend on evaluation order.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class OverlapPart { re, im };

/// Shot-sampled estimate of one overlap <psi|U|psi>.
struct OverlapEstimate {
  double re = 0.0;
  double im = 0.0;
  std::uint64_t shots_re = 0;
  std::uint64_t shots_im = 0;
  double variance_re = 0.0;
  double variance_im = 0.0;
};

/// Binomial law of a +-1 readout averaged over `shots`.
inline double readout_variance(double value, std::uint64_t shots) {
  return shots == 0 ? 0.0 : std::max(0.0, 1.0 - value * value) / static_cast<double>(shots);
}

/// Ancilla readout of one overlap part. The imaginary-part circuit prepares
/// (|psi>|0> + iU|psi>|1>)/sqrt2 so that <Z> = -Im<psi|U|psi>; the real-part
/// circuit drops the i and reads <Z> = Re<psi|U|psi>.
inline double ancilla_z(Complex overlap_value, OverlapPart part) {
  return part == OverlapPart::im ? -overlap_value.imag() : overlap_value.real();
}

/// Draws `shots` ancilla outcomes with P(+1) = (1 + <Z>)/2 and maps the
/// empirical mean back to the requested overlap part.
inline double sample_overlap_part(Complex true_overlap, OverlapPart part, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw InvalidArgument("sample_overlap_part: shots must be >= 1");
  if (!(std::abs(true_overlap) <= 1.0 + 1e-9)) {
    throw InvalidArgument("sample_overlap_part: |overlap| exceeds 1");
  }
  const double z = ancilla_z(true_overlap, part);
  const double p = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
  std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(shots), p);
  const double z_hat = 2.0 * static_cast<double>(draw(rng)) / static_cast<double>(shots) - 1.0;
  return part == OverlapPart::im ? -z_hat : z_hat;
}

/// Splits `total` as evenly as possible over `parts`; the remainder goes to
/// the first entries.
inline std::vector<std::uint64_t> split_shots(std::uint64_t total, std::size_t parts) {
  if (parts == 0) return {};
  std::vector<std::uint64_t> out(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++out[i];
  if (out.back() == 0) {
    throw InvalidArgument("shot budget " + std::to_string(total) + " is smaller than the " +
                          std::to_string(parts) + " overlaps to measure");
  }
  return out;
}

/// Energy assembled from sampled overlaps.
struct EnergyEstimate {
  Complex energy;
  /// Propagated variance of Re(energy).
  double variance = 0.0;
  std::map<int, OverlapEstimate> overlaps;
  std::uint64_t shots_used = 0;

  double std_error() const { return std::sqrt(variance); }
};

/// Offsets whose overlaps are measured: n > 0 for antisymmetric schemes
/// (O_{-n} = conj O_n), every nonzero-weight n != 0 otherwise. O_0 = 1 needs
/// no circuit.
inline std::vector<int> measured_offsets(const StencilScheme& scheme) {
  std::vector<int> out;
  for (int n : scheme.offsets()) {
    if (n == 0 || scheme.weight(n) == 0) continue;
    if (scheme.is_antisymmetric() && n < 0) continue;
    out.push_back(n);
  }
  return out;
}

namespace detail {

// Shared assembly for exact or noisy overlap sources. `source(n, shots, rng,
// part)` returns the sampled value of one overlap part.
template <class Source>
EnergyEstimate assemble_sampled_energy(const HoaConfig& cfg, std::uint64_t shots_total, std::uint64_t base_seed,
                                       Source&& source) {
  if (cfg.scheme.order() != 1) throw InvalidArgument("sampled energy: scheme order must be 1");
  const auto offsets = measured_offsets(cfg.scheme);
  EnergyEstimate out;
  if (cfg.scheme.is_antisymmetric()) {
    const auto shots = split_shots(shots_total, offsets.size());
    std::map<int, double> im;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const int n = offsets[i];
      Rng rng(child_seed(base_seed, i));
      OverlapEstimate est;
      est.im = source(n, shots[i], rng, OverlapPart::im);
      est.shots_im = shots[i];
      est.variance_im = readout_variance(est.im, shots[i]);
      im[n] = est.im;
      const double w = 2.0 * cfg.scheme.value(n) / cfg.dt;
      out.variance += w * w * est.variance_im;
      out.overlaps[n] = est;
    }
    out.energy = Complex(collapsed_energy(im, cfg), 0.0);
  } else {
    const auto shots = split_shots(shots_total, 2 * offsets.size());
    Complex acc = cfg.scheme.value(0);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const int n = offsets[i];
      Rng rng(child_seed(base_seed, i));
      OverlapEstimate est;
      est.re = source(n, shots[2 * i], rng, OverlapPart::re);
      est.im = source(n, shots[2 * i + 1], rng, OverlapPart::im);
      est.shots_re = shots[2 * i];
      est.shots_im = shots[2 * i + 1];
      est.variance_re = readout_variance(est.re, est.shots_re);
      est.variance_im = readout_variance(est.im, est.shots_im);
      acc += cfg.scheme.value(n) * Complex(est.re, est.im);
      const double w = cfg.scheme.value(n) / cfg.dt;
      out.variance += w * w * est.variance_im;
      out.overlaps[n] = est;
    }
    out.energy = Complex(0.0, 1.0 / cfg.dt) * acc;
  }
  out.shots_used = shots_total;
  return out;
}

}  // namespace detail

/// HOA energy from shot-sampled ancilla readouts. Centered first-derivative
/// schemes read only Im O_n for n > 0, with the budget split evenly; other
/// schemes sample both parts of every overlap, half the shots each.
/// `shots_total = nullopt` is the analytic (infinite-shot) limit.
template <Evolver E>
EnergyEstimate sampled_hoa_energy(const E& evolver, const Amplitudes& psi, const HoaConfig& cfg,
                                  std::optional<std::uint64_t> shots_total, Rng& rng) {
  if (!shots_total) {
    EnergyEstimate out;
    const auto table = stencil_overlaps(evolver, psi, cfg);
    for (const auto& [n, o] : table) out.overlaps[n] = OverlapEstimate{o.real(), o.imag(), 0, 0, 0.0, 0.0};
    out.energy = hoa_expectation(evolver, psi, cfg);
    return out;
  }
  const std::uint64_t base = rng();
  std::map<int, Complex> exact;
  for (int n : measured_offsets(cfg.scheme)) exact[n] = overlap(psi, evolver.evolve(psi, n * cfg.dt));
  return detail::assemble_sampled_energy(
      cfg, *shots_total, base,
      [&](int n, std::uint64_t shots, Rng& r, OverlapPart part) { return sample_overlap_part(exact.at(n), part, shots, r); });
}

template <Evolver E>
EnergyEstimate sampled_hoa_energy(const E& evolver, const StateVector& psi, const HoaConfig& cfg,
                                  std::optional<std::uint64_t> shots_total, Rng& rng) {
  return sampled_hoa_energy(evolver, psi.amplitudes(), cfg, shots_total, rng);
}

}  // namespace hoa
