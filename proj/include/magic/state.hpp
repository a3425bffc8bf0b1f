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

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "magic/core.hpp"
#include "magic/random.hpp"

namespace magic {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Qubit 0 is the most significant bit of a basis index throughout the library:
// on n qubits, qubit q lives at bit (n - 1 - q).
inline std::size_t qubit_bit(int n, int qubit) {
  return std::size_t{1} << (n - 1 - qubit);
}

/// Normalized pure state of n qubits.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  StateVector() = default;

  StateVector(int n, CVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    if (n < 0 || n > 24) throw DimensionError("qubit count out of range");
    if (static_cast<std::size_t>(amps_.size()) != dim_of(n)) {
      throw DimensionError("amplitude count does not match 2^n");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
      throw DimensionError("state is not normalized");
    }
  }

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(int n, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0)) throw DimensionError("zero vector cannot be normalized");
    amplitudes /= norm;
    return StateVector(n, std::move(amplitudes));
  }

  static StateVector basis(int n, std::size_t index) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    if (index >= dim_of(n)) throw DimensionError("basis index out of range");
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n, std::move(v));
  }

  /// |+>^{(x) n}
  static StateVector plus(int n) {
    CVector v = CVector::Constant(static_cast<Eigen::Index>(dim_of(n)),
                                  1.0 / std::sqrt(static_cast<double>(dim_of(n))));
    return StateVector(n, std::move(v));
  }

  /// Haar-random state: normalized vector of i.i.d. complex Gaussians.
  static StateVector haar_random(int n, Rng& rng) {
    CVector v(static_cast<Eigen::Index>(dim_of(n)));
    for (auto& a : v) {
      const double re = rng.normal();
      a = Complex(re, rng.normal());
    }
    return normalized(n, std::move(v));
  }

  int n() const { return n_; }
  std::size_t dim() const { return dim_of(n_); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  /// <this|other>
  Complex inner(const StateVector& other) const {
    if (other.n_ != n_) throw DimensionError("inner product of states of different size");
    return amps_.dot(other.amps_);
  }

  double fidelity(const StateVector& other) const { return std::norm(inner(other)); }

 private:
  int n_ = 0;
  CVector amps_ = CVector::Ones(1);
};

/// |a> (x) |b>, with a on the leading (most significant) qubits.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  CVector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      v[static_cast<Eigen::Index>(i * b.dim() + j)] = a[i] * b[j];
    }
  }
  return StateVector::normalized(a.n() + b.n(), std::move(v));
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Unitary acting on n qubits.
class UnitaryMatrix {
 public:
  static constexpr double kUnitarityTolerance = 1e-9;

  UnitaryMatrix() : UnitaryMatrix(identity(0)) {}

  UnitaryMatrix(int n, CMatrix entries) : n_(n), m_(std::move(entries)) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    if (m_.rows() != d || m_.cols() != d) {
      throw DimensionError("matrix size does not match 2^n");
    }
    const double err = (m_.adjoint() * m_ - CMatrix::Identity(d, d)).norm();
    if (err > kUnitarityTolerance) {
      throw DimensionError("matrix is not unitary (error " + std::to_string(err) + ")");
    }
  }

  static UnitaryMatrix identity(int n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    return UnitaryMatrix(n, CMatrix::Identity(d, d));
  }

  int n() const { return n_; }
  std::size_t dim() const { return dim_of(n_); }
  const CMatrix& matrix() const { return m_; }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(n_, m_.adjoint()); }

  /// this * other (other acts first).
  UnitaryMatrix operator*(const UnitaryMatrix& other) const {
    if (other.n_ != n_) throw DimensionError("composing unitaries of different size");
    return UnitaryMatrix(n_, m_ * other.m_);
  }

  StateVector apply(const StateVector& state) const {
    if (state.n() != n_) throw DimensionError("unitary and state sizes differ");
    return StateVector::normalized(n_, m_ * state.amplitudes());
  }

  /// (U (x) I_{2^m}) |phi> for phi on n + m qubits.
  StateVector apply_with_ancillas(const StateVector& state) const {
    if (state.n() < n_) throw DimensionError("state smaller than unitary");
    return StateVector::normalized(state.n(), apply_with_ancillas(state.amplitudes()));
  }

  /// (U (x) I) v for a raw vector whose size is a multiple of 2^n.
  CVector apply_with_ancillas(const CVector& v) const {
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto d = static_cast<Eigen::Index>(dim());
    if (v.size() % d != 0) throw DimensionError("vector size is not a multiple of 2^n");
    const Eigen::Index anc = v.size() / d;
    // v[i * anc + j] viewed as a d x anc row-major block.
    Eigen::Map<const RowMajor> in(v.data(), d, anc);
    RowMajor out = m_ * in;
    return Eigen::Map<CVector>(out.data(), d * anc);
  }

 private:
  int n_ = 0;
  CMatrix m_;
};

inline UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(a.n() + b.n(), kron(a.matrix(), b.matrix()));
}

}  // namespace magic
