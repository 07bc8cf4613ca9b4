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

#include <string>
#include <utility>
#include <vector>

#include "hoa/error.hpp"
#include "hoa/pauli.hpp"

namespace hoa {

enum class Boundary { open, ring };

/// Sign of the exchange term. `ferromagnetic` is the literal -J convention;
/// `antiferromagnetic` flips it to +J while keeping the -h field.
enum class Coupling { ferromagnetic, antiferromagnetic };

struct HeisenbergParams {
  std::size_t n = 2;
  double J = 1.0;
  double h = 0.0;
  Boundary boundary = Boundary::open;
  Coupling coupling = Coupling::ferromagnetic;

  double exchange_coefficient() const { return coupling == Coupling::ferromagnetic ? -J : J; }

  /// Nearest-neighbour pairs in emission order; the ring closes with (n-1, 0).
  std::vector<std::pair<std::size_t, std::size_t>> bonds() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j + 1 < n; ++j) out.emplace_back(j, j + 1);
    if (boundary == Boundary::ring && n > 2) out.emplace_back(n - 1, 0);
    return out;
  }
};

namespace detail {

inline std::string axes_with(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> ops) {
  std::string s(n, 'I');
  for (auto [q, c] : ops) s[q] = c;
  return s;
}

}  // namespace detail

/// -J sum (XX + YY + ZZ) - h sum Z over nearest neighbours (sign of J per
/// `coupling`). A two-site ring has a single bond.
inline PauliSum heisenberg(const HeisenbergParams& p) {
  if (p.n < 2) throw InvalidArgument("heisenberg: need n >= 2, got " + std::to_string(p.n));
  std::vector<PauliTerm> terms;
  const double c = p.exchange_coefficient();
  for (auto [a, b] : p.bonds()) {
    for (char axis : {'X', 'Y', 'Z'}) {
      terms.push_back({c, detail::axes_with(p.n, {{a, axis}, {b, axis}})});
    }
  }
  for (std::size_t j = 0; j < p.n; ++j) {
    terms.push_back({-p.h, detail::axes_with(p.n, {{j, 'Z'}})});
  }
  return PauliSum(p.n, std::move(terms));
}

inline PauliSum heisenberg(std::size_t n, double J, double h, Boundary boundary,
                           Coupling coupling = Coupling::ferromagnetic) {
  return heisenberg(HeisenbergParams{n, J, h, boundary, coupling});
}

struct HubbardParams {
  double U = 1.0;
  double J = 0.1;
  double mu = 0.0;
  double h = 0.0;
};

/// Spin-orbital index for the 2x2 lattice: site-major, spin-minor.
inline constexpr std::size_t hubbard_mode(std::size_t site, int spin) {
  return 2 * site + static_cast<std::size_t>(spin);
}

/// Plaquette bonds of the 2x2 lattice (sites numbered row-major).
inline constexpr std::pair<std::size_t, std::size_t> kPlaquetteBonds[4] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};

/// Four-site Fermi-Hubbard model on 8 qubits via Jordan-Wigner:
///   -J sum_<ij>,s (c+_is c_js + h.c.) + U sum_i n_iu n_id - mu sum_is n_is - h sum_i (n_iu - n_id)
/// with n = (I - Z)/2, i.e. |1> is an occupied orbital.
inline PauliSum hubbard_2x2_jw(const HubbardParams& p) {
  constexpr std::size_t n = 8;
  std::vector<PauliTerm> terms;
  auto add_number = [&](std::size_t q, double w) {
    terms.push_back({0.5 * w, std::string(n, 'I')});
    terms.push_back({-0.5 * w, detail::axes_with(n, {{q, 'Z'}})});
  };

  for (auto [i, j] : kPlaquetteBonds) {
    for (int spin : {0, 1}) {
      const std::size_t a = std::min(hubbard_mode(i, spin), hubbard_mode(j, spin));
      const std::size_t b = std::max(hubbard_mode(i, spin), hubbard_mode(j, spin));
      for (char axis : {'X', 'Y'}) {
        std::string s(n, 'I');
        s[a] = axis;
        s[b] = axis;
        for (std::size_t k = a + 1; k < b; ++k) s[k] = 'Z';
        terms.push_back({-0.5 * p.J, s});
      }
    }
  }
  for (std::size_t site = 0; site < 4; ++site) {
    const auto up = hubbard_mode(site, 0);
    const auto dn = hubbard_mode(site, 1);
    // n_u n_d = (I - Z_u - Z_d + Z_u Z_d) / 4
    terms.push_back({0.25 * p.U, std::string(n, 'I')});
    terms.push_back({-0.25 * p.U, detail::axes_with(n, {{up, 'Z'}})});
    terms.push_back({-0.25 * p.U, detail::axes_with(n, {{dn, 'Z'}})});
    terms.push_back({0.25 * p.U, detail::axes_with(n, {{up, 'Z'}, {dn, 'Z'}})});
    add_number(up, -p.mu - p.h);
    add_number(dn, -p.mu + p.h);
  }
  return PauliSum(n, std::move(terms));
}

inline PauliSum hubbard_2x2_jw(double U, double J, double mu, double h) {
  return hubbard_2x2_jw(HubbardParams{U, J, mu, h});
}

}  // namespace hoa
