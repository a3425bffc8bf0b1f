// Copyright 2026 The magic-sre Authors
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
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "magic/core.hpp"
#include "magic/state.hpp"

namespace magic {

/// Element of the n-qubit Pauli group modulo phases, stored as X/Z bitmasks
/// over basis-index bits. The represented Hermitian operator is
/// P = i^{|x & z|} X^x Z^z, so every expectation value is real.
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliString() = default;
  PauliString(int n_, std::uint64_t x, std::uint64_t z) : n(n_), x_mask(x), z_mask(z) {
    if (n < 0 || n > 32) throw DimensionError("Pauli qubit count out of range");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if ((x & ~full) || (z & ~full)) throw DimensionError("Pauli mask wider than n bits");
  }

  static PauliString identity(int n) { return {n, 0, 0}; }

  /// Parses a label such as "XIZY"; character k addresses qubit k.
  static PauliString from_label(std::string_view label) {
    const int n = static_cast<int>(label.size());
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      switch (label[static_cast<std::size_t>(q)]) {
        case 'I': break;
        case 'X': x |= bit; break;
        case 'Y': x |= bit; z |= bit; break;
        case 'Z': z |= bit; break;
        default: throw DimensionError("invalid Pauli label character");
      }
    }
    return {n, x, z};
  }

  std::string label() const {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      const bool hx = x_mask & bit;
      const bool hz = z_mask & bit;
      s[static_cast<std::size_t>(q)] = hx ? (hz ? 'Y' : 'X') : (hz ? 'Z' : 'I');
    }
    return s;
  }

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }

  /// Phase factor i^{|x & z|} of the Hermitian representative.
  Complex hermitian_phase() const { return i_pow(popcount(x_mask & z_mask)); }

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const PauliString& p) {
  return os << p.label();
}

/// Dense matrix of P, mostly for tests and small constructions.
inline CMatrix pauli_matrix(const PauliString& p) {
  const auto d = static_cast<Eigen::Index>(dim_of(p.n));
  CMatrix m = CMatrix::Zero(d, d);
  const Complex phase = p.hermitian_phase();
  for (std::uint64_t b = 0; b < dim_of(p.n); ++b) {
    const double sign = (popcount(p.z_mask & b) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ p.x_mask), static_cast<Eigen::Index>(b)) = phase * sign;
  }
  return m;
}

/// P|psi> for raw amplitudes; sizes are not checked.
inline void apply_pauli_raw(const CVector& in, const PauliString& p, CVector& out) {
  const Complex phase = p.hermitian_phase();
  out.resize(in.size());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(in.size()); ++b) {
    const Complex v = (popcount(p.z_mask & b) & 1) ? -in[static_cast<Eigen::Index>(b)]
                                                   : in[static_cast<Eigen::Index>(b)];
    out[static_cast<Eigen::Index>(b ^ p.x_mask)] = phase * v;
  }
}

inline StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  if (state.n() != p.n) throw DimensionError("Pauli and state qubit counts differ");
  CVector out;
  apply_pauli_raw(state.amplitudes(), p, out);
  return StateVector(state.n(), std::move(out));
}

namespace detail {
inline constexpr double kImagResidueTolerance = 1e-10;
inline constexpr double kInputNormTolerance = 1e-8;

inline void require_normalized(const StateVector& s) {
  if (std::abs(s.amplitudes().squaredNorm() - 1.0) > kInputNormTolerance) {
    throw DimensionError("state is not normalized");
  }
}
}  // namespace detail

/// <psi|P|psi>.
inline double expectation(const StateVector& state, const PauliString& p) {
  if (state.n() != p.n) throw DimensionError("Pauli and state qubit counts differ");
  detail::require_normalized(state);
  const CVector& a = state.amplitudes();
  Complex acc = 0.0;
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const Complex v = a[static_cast<Eigen::Index>(b)];
    const Complex w = std::conj(a[static_cast<Eigen::Index>(b ^ p.x_mask)]);
    acc += (popcount(p.z_mask & b) & 1) ? -(w * v) : w * v;
  }
  acc *= p.hermitian_phase();
  if (std::abs(acc.imag()) > detail::kImagResidueTolerance) {
    throw NumericalError("Pauli expectation has a non-negligible imaginary part");
  }
  return acc.real();
}

/// All 4^n Pauli expectations of a pure state, stored x-major:
/// values[(x << n) | z] = <psi| i^{|x&z|} X^x Z^z |psi>.
class PauliSpectrum {
 public:
  PauliSpectrum() = default;
  PauliSpectrum(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != dim_of(2 * n)) throw DimensionError("spectrum size must be 4^n");
  }

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  double operator[](std::size_t index) const { return values_[index]; }
  double at(std::uint64_t x, std::uint64_t z) const {
    return values_[(x << n_) | z];
  }
  double at(const PauliString& p) const { return at(p.x_mask, p.z_mask); }

  PauliString pauli(std::size_t index) const {
    const std::uint64_t mask = dim_of(n_) - 1;
    return {n_, static_cast<std::uint64_t>(index) >> n_, static_cast<std::uint64_t>(index) & mask};
  }

  /// sum_P e_P^2; equals 2^n for a pure state.
  double purity_sum() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
  }

  /// CSV with header `x_mask,z_mask,expectation`, 17 significant digits.
  void write_csv(std::ostream& os) const {
    os << "x_mask,z_mask,expectation\n";
    char buf[64];
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto p = pauli(i);
      std::snprintf(buf, sizeof buf, "%.17g", values_[i]);
      os << p.x_mask << ',' << p.z_mask << ',' << buf << '\n';
    }
  }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// Reference path: one apply + inner product per Pauli, O(8^n).
inline PauliSpectrum full_spectrum_naive(const StateVector& state) {
  detail::require_normalized(state);
  const int n = state.n();
  const std::uint64_t d = state.dim();
  std::vector<double> values(dim_of(2 * n));
  for (std::uint64_t x = 0; x < d; ++x) {
    for (std::uint64_t z = 0; z < d; ++z) {
      values[(x << n) | z] = expectation(state, PauliString(n, x, z));
    }
  }
  return {n, std::move(values)};
}

/// In-place unnormalized Walsh-Hadamard transform:
/// out[z] = sum_b (-1)^{z.b} in[b].
template <class T>
void walsh_hadamard(std::vector<T>& data) {
  const std::size_t len = data.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = data[j];
        const T b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

/// Fast path, O(4^n n). For each x-row a, c_a(b) = conj(psi(b^a)) psi(b) is
/// Walsh-Hadamard transformed over b, giving every z in the row at once.
inline PauliSpectrum full_spectrum(const StateVector& state) {
  detail::require_normalized(state);
  const int n = state.n();
  const std::uint64_t d = state.dim();
  const CVector& psi = state.amplitudes();
  std::vector<double> values(dim_of(2 * n));
  parallel_for(d, [&](std::size_t row) {
    const std::uint64_t a = row;
    std::vector<Complex> c(d);
    for (std::uint64_t b = 0; b < d; ++b) {
      c[b] = std::conj(psi[static_cast<Eigen::Index>(b ^ a)]) * psi[static_cast<Eigen::Index>(b)];
    }
    walsh_hadamard(c);
    for (std::uint64_t z = 0; z < d; ++z) {
      const Complex e = i_pow(popcount(a & z)) * c[z];
      if (std::abs(e.imag()) > 1e-9) {
        throw NumericalError("spectrum entry has a non-negligible imaginary part");
      }
      values[(a << n) | z] = e.real();
    }
  }, 64);  // threads only pay off from six qubits up
  return {n, std::move(values)};
}

}  // namespace magic
