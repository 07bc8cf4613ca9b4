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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hoa/error.hpp"

namespace hoa {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Finite-difference weights q_n on the integer offsets n = -s .. S-s-1 with
///   sum_n q_n n^j = k! delta_{jk},  j = 0 .. S-1.
/// Weights are exact rationals.
class StencilScheme {
 public:
  StencilScheme(int points, int shift, int order, std::vector<Rational> weights)
      : S_(points), s_(shift), k_(order), weights_(std::move(weights)) {
    values_.reserve(weights_.size());
    for (const auto& w : weights_) values_.push_back(w.convert_to<double>());
  }

  int points() const noexcept { return S_; }
  int shift() const noexcept { return s_; }
  int order() const noexcept { return k_; }

  int first_offset() const noexcept { return -s_; }
  int last_offset() const noexcept { return S_ - s_ - 1; }
  std::vector<int> offsets() const {
    std::vector<int> out;
    for (int n = first_offset(); n <= last_offset(); ++n) out.push_back(n);
    return out;
  }

  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Weight attached to offset n (zero outside the grid).
  const Rational& weight(int n) const {
    static const Rational zero{0};
    if (n < first_offset() || n > last_offset()) return zero;
    return weights_[static_cast<std::size_t>(n + s_)];
  }
  double value(int n) const {
    if (n < first_offset() || n > last_offset()) return 0.0;
    return values_[static_cast<std::size_t>(n + s_)];
  }

  /// Centered grid (s = (S-1)/2, S odd).
  bool is_centered() const noexcept { return S_ % 2 == 1 && s_ == (S_ - 1) / 2; }

  /// Centered first-derivative grid: q_{-n} = -q_n, q_0 = 0.
  bool is_antisymmetric() const noexcept { return is_centered() && k_ % 2 == 1; }

  /// Largest |n| reached, i.e. the longest propagation in units of dt.
  int reach() const noexcept { return std::max(s_, S_ - s_ - 1); }

  /// sum_n q_n n^p, exactly.
  Rational moment(int p) const {
    Rational acc{0};
    for (int n = first_offset(); n <= last_offset(); ++n) {
      acc += weight(n) * Rational(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(p)));
    }
    return acc;
  }

  double abs_weight_sum() const {
    double acc = 0.0;
    for (double v : values_) acc += std::abs(v);
    return acc;
  }

 private:
  int S_;
  int s_;
  int k_;
  std::vector<Rational> weights_;
  std::vector<double> values_;
};

namespace detail {

// Exact Gaussian elimination; `a` is square and nonsingular.
inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw NumericalError("stencil: singular moment matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

inline BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Exact weights for the k-th derivative on S points shifted by s.
inline StencilScheme stencil_coefficients(int S, int s, int k) {
  if (S < 2) throw InvalidArgument("stencil: S must be >= 2, got " + std::to_string(S));
  if (s < 0 || s > S - 1) {
    throw InvalidArgument("stencil: shift " + std::to_string(s) + " outside [0, " + std::to_string(S - 1) + "]");
  }
  if (k < 1) throw InvalidArgument("stencil: derivative order must be >= 1, got " + std::to_string(k));
  if (k >= S) {
    throw InvalidArgument("stencil: derivative order " + std::to_string(k) + " needs more than " +
                          std::to_string(S) + " points (underdetermined)");
  }
  const auto size = static_cast<std::size_t>(S);
  std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
  for (std::size_t j = 0; j < size; ++j) {
    for (std::size_t c = 0; c < size; ++c) {
      const BigInt n = static_cast<int>(c) - s;
      m[j][c] = Rational(boost::multiprecision::pow(n, static_cast<unsigned>(j)));
    }
  }
  std::vector<Rational> rhs(size, Rational{0});
  rhs[static_cast<std::size_t>(k)] = Rational(detail::factorial(k));
  return StencilScheme(S, s, k, detail::solve_rational(std::move(m), std::move(rhs)));
}

/// Centered scheme, s = (S-1)/2; S must be odd.
inline StencilScheme centered_stencil(int S, int k = 1) {
  if (S % 2 == 0) {
    throw InvalidArgument("stencil: centered shift (S-1)/2 needs odd S, got S=" + std::to_string(S));
  }
  return stencil_coefficients(S, (S - 1) / 2, k);
}

/// First power p >= S with a nonzero residual moment sum_n q_n n^p.
inline int leading_residual_power(const StencilScheme& scheme) {
  for (int p = scheme.points(); p <= 2 * scheme.points() + 4; ++p) {
    if (scheme.moment(p) != 0) return p;
  }
  throw NumericalError("stencil: no nonzero residual moment found");
}

/// Power of dt in the leading error term: p - k.
inline int effective_order(const StencilScheme& scheme) { return leading_residual_power(scheme) - scheme.order(); }

/// |sum_n q_n n^p| / p! at the leading residual power p.
inline double truncation_constant(const StencilScheme& scheme) {
  const int p = leading_residual_power(scheme);
  const Rational c = abs(scheme.moment(p)) / Rational(detail::factorial(p));
  return c.convert_to<double>();
}

}  // namespace hoa
