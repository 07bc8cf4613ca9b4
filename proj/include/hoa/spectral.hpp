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
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hoa/pauli.hpp"

namespace hoa {

enum class BoundMethod { gershgorin, coefficient_sum, exact };

inline std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::gershgorin: return "gershgorin";
    case BoundMethod::coefficient_sum: return "coefficient_sum";
    case BoundMethod::exact: return "exact";
  }
  return "?";
}

/// Estimate of the spectral spread E_max - E_min.
struct SpectralBound {
  double kappa = 0.0;
  BoundMethod method = BoundMethod::gershgorin;
};

namespace detail {

// Row-wise Gershgorin discs from the mask form; never builds the matrix.
// Terms sharing an x-mask land in the same column of a given row, so they are
// summed before taking magnitudes.
inline double gershgorin_spread(const PauliSum& h) {
  std::map<std::uint64_t, std::vector<MaskedTerm>> groups;
  for (const auto& t : mask_terms(h)) groups[t.x_mask].push_back(t);

  const auto dim = static_cast<std::uint64_t>(h.dimension());
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::uint64_t row = 0; row < dim; ++row) {
    double diag = 0.0;
    double radius = 0.0;
    for (const auto& [x, terms] : groups) {
      const std::uint64_t col = row ^ x;
      Complex entry{0.0, 0.0};
      for (const auto& t : terms) entry += t.factor * parity_sign(col & t.z_mask);
      if (x == 0) {
        diag = entry.real();
      } else {
        radius += std::abs(entry);
      }
    }
    hi = std::max(hi, diag + radius);
    lo = std::min(lo, diag - radius);
  }
  return hi - lo;
}

}  // namespace detail

inline SpectralBound spectral_bound(const PauliSum& h, BoundMethod method) {
  switch (method) {
    case BoundMethod::gershgorin:
      return {detail::gershgorin_spread(h), method};
    case BoundMethod::coefficient_sum: {
      double sum = 0.0;
      const std::string identity(h.n_qubits(), 'I');
      for (const auto& t : h.terms()) {
        if (t.axes != identity) sum += std::abs(t.coefficient);
      }
      return {2.0 * sum, method};
    }
    case BoundMethod::exact: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h), Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      return {ev[ev.size() - 1] - ev[0], method};
    }
  }
  return {};
}

/// Upper bound on the spectral norm: sum of |c| over all terms.
inline double coefficient_norm(const PauliSum& h) {
  double sum = 0.0;
  for (const auto& t : h.terms()) sum += std::abs(t.coefficient);
  return sum;
}

}  // namespace hoa
