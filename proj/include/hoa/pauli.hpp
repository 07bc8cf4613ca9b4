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
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <Eigen/Dense>

#include "hoa/error.hpp"

namespace hoa {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Largest qubit count for which dense matrices are ever built.
inline constexpr std::size_t kDefaultDenseQubitCap = 14;

/// Coefficients below this magnitude are dropped when a sum is canonicalized.
inline constexpr double kDropTolerance = 1e-15;

/// One weighted Pauli string. `axes[j]` acts on qubit j; qubit 0 is the most
/// significant bit of a basis index.
struct PauliTerm {
  double coefficient = 0.0;
  std::string axes;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

namespace detail {

inline bool is_pauli_char(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

}  // namespace detail

/// Real-weighted sum of N-qubit Pauli strings, kept in canonical form:
/// terms sorted by axes, duplicates merged, negligible weights dropped.
class PauliSum {
 public:
  PauliSum() = default;

  PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 63) {
      throw InvalidArgument("PauliSum: qubit count must be in [1, 63], got " +
                            std::to_string(n_qubits));
    }
    std::map<std::string, double> merged;
    for (auto& t : terms) {
      if (t.axes.size() != n_qubits) {
        throw DimensionError("PauliSum: term '" + t.axes + "' has length " +
                             std::to_string(t.axes.size()) + ", expected " +
                             std::to_string(n_qubits));
      }
      if (!std::all_of(t.axes.begin(), t.axes.end(), detail::is_pauli_char)) {
        throw InvalidArgument("PauliSum: invalid Pauli string '" + t.axes + "'");
      }
      if (!std::isfinite(t.coefficient)) {
        throw InvalidArgument("PauliSum: non-finite coefficient on '" + t.axes + "'");
      }
      merged[t.axes] += t.coefficient;
    }
    for (auto& [axes, c] : merged) {
      if (std::abs(c) >= kDropTolerance) terms_.push_back({c, axes});
    }
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_qubits_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  PauliSum scaled(double factor) const {
    auto t = terms_;
    for (auto& term : t) term.coefficient *= factor;
    return PauliSum(n_qubits_, std::move(t));
  }

  PauliSum operator+(const PauliSum& other) const {
    if (other.n_qubits_ != n_qubits_) throw DimensionError("PauliSum: qubit count mismatch in sum");
    auto t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    return PauliSum(n_qubits_, std::move(t));
  }

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Bit-mask form of a Pauli string: P|b> = factor * (-1)^popcount(b & z) |b ^ x>,
/// with factor = coefficient * i^(number of Y).
struct MaskedTerm {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  Complex factor;
};

inline MaskedTerm mask_term(const PauliTerm& term) {
  const std::size_t n = term.axes.size();
  MaskedTerm m;
  int n_y = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (term.axes[q]) {
      case 'X': m.x_mask |= bit; break;
      case 'Y': m.x_mask |= bit; m.z_mask |= bit; ++n_y; break;
      case 'Z': m.z_mask |= bit; break;
      default: break;
    }
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.factor = term.coefficient * kIPow[n_y % 4];
  return m;
}

inline std::vector<MaskedTerm> mask_terms(const PauliSum& h) {
  std::vector<MaskedTerm> out;
  out.reserve(h.size());
  for (const auto& t : h.terms()) out.push_back(mask_term(t));
  return out;
}

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

/// H|psi> without forming a matrix; cost O(terms * 2^N).
inline Amplitudes apply_pauli_sum(const PauliSum& h, const Amplitudes& psi) {
  if (static_cast<std::size_t>(psi.size()) != h.dimension()) {
    throw DimensionError("apply: state has dimension " + std::to_string(psi.size()) +
                         ", operator acts on " + std::to_string(h.dimension()));
  }
  Amplitudes out = Amplitudes::Zero(psi.size());
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (const auto& t : mask_terms(h)) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      out[b ^ t.x_mask] += t.factor * parity_sign(b & t.z_mask) * psi[b];
    }
  }
  return out;
}

/// Dense 2^N x 2^N realization; refuses sizes above `max_qubits`.
inline Eigen::MatrixXcd to_dense(const PauliSum& h, std::size_t max_qubits = kDefaultDenseQubitCap) {
  if (h.n_qubits() > max_qubits) {
    throw SizeLimitError("to_dense: " + std::to_string(h.n_qubits()) +
                         " qubits exceeds the dense cap of " + std::to_string(max_qubits));
  }
  const auto dim = static_cast<std::uint64_t>(h.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : mask_terms(h)) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ t.x_mask, b) += t.factor * parity_sign(b & t.z_mask);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Text format: "<coefficient> <string>" per line, '#' starts a comment.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline PauliSum parse_pauli_text(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::size_t n_qubits = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto gap = line.find_first_of(" \t");
    if (gap == std::string_view::npos) {
      throw ParseError("expected '<coefficient> <pauli string>'", line_no);
    }
    double coefficient = 0.0;
    if (!detail::parse_double(line.substr(0, gap), coefficient) || !std::isfinite(coefficient)) {
      throw ParseError("invalid coefficient '" + std::string(line.substr(0, gap)) + "'", line_no);
    }
    const auto axes = detail::trim(line.substr(gap));
    if (axes.empty() || axes.find_first_of(" \t") != std::string_view::npos ||
        !std::all_of(axes.begin(), axes.end(), detail::is_pauli_char)) {
      throw ParseError("invalid Pauli string '" + std::string(axes) + "'", line_no);
    }
    if (n_qubits == 0) {
      n_qubits = axes.size();
    } else if (axes.size() != n_qubits) {
      throw DimensionError("line " + std::to_string(line_no) + ": Pauli string has length " +
                           std::to_string(axes.size()) + ", expected " + std::to_string(n_qubits));
    }
    terms.push_back({coefficient, std::string(axes)});
  }
  if (n_qubits == 0) throw ParseError("no Pauli terms found", 0);
  return PauliSum(n_qubits, std::move(terms));
}

inline PauliSum load_pauli_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open Pauli file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pauli_text(buf.str());
}

/// Shortest round-trip representation; `parse_pauli_text` restores an equal sum.
inline std::string to_pauli_text(const PauliSum& h) {
  std::string out;
  for (const auto& t : h.terms()) {
    out += detail::format_double(t.coefficient);
    out += ' ';
    out += t.axes;
    out += '\n';
  }
  return out;
}

inline void save_pauli_file(const PauliSum& h, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write Pauli file '" + path + "'");
  out << to_pauli_text(h);
}

}  // namespace hoa
