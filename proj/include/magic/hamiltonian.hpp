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

#include <Eigen/Eigenvalues>
#include <cstdint>
#include <vector>

#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/random.hpp"
#include "magic/state.hpp"

namespace magic {

enum class Boundary { kPeriodic, kOpen };

/// Disordered Heisenberg chain
///   H = sum_k (X_k X_{k+1} + Y_k Y_{k+1} + delta Z_k Z_{k+1}) + h_k Z_k,
/// with h_k uniform in [-W, W]. Periodic boundaries close the bond (N, 1).
struct HamiltonianSpec {
  int sites = 4;
  double delta = 0.2;
  double disorder = 0.0;
  std::uint64_t seed = 1;
  Boundary boundary = Boundary::kPeriodic;
};

/// Disorder fields h_k, uniform in [-W, W] and fixed by the chain's seed.
inline std::vector<double> disorder_field(const HamiltonianSpec& spec) {
  Rng rng(spec.seed);
  std::vector<double> h(static_cast<std::size_t>(spec.sites));
  for (auto& v : h) v = rng.uniform(-spec.disorder, spec.disorder);
  return h;
}

/// Adds coeff * P to a dense matrix without forming P as a matrix.
inline void add_pauli_term(CMatrix& m, const PauliString& p, double coeff) {
  const Complex phase = p.hermitian_phase() * coeff;
  for (std::uint64_t b = 0; b < dim_of(p.n); ++b) {
    const double sign = (popcount(p.z_mask & b) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ p.x_mask), static_cast<Eigen::Index>(b)) += phase * sign;
  }
}

inline CMatrix heisenberg_hamiltonian(const HamiltonianSpec& spec) {
  const int n = spec.sites;
  if (n < 2) throw DimensionError("Heisenberg chain needs at least two sites");
  if (n > 12) throw DimensionError("Heisenberg chain too long for dense construction");
  if (spec.disorder < 0.0) throw DimensionError("disorder width must be non-negative");
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  CMatrix h = CMatrix::Zero(d, d);
  const int bonds = spec.boundary == Boundary::kPeriodic ? n : n - 1;
  for (int k = 0; k < bonds; ++k) {
    const int j = (k + 1) % n;
    const std::uint64_t bits = qubit_bit(n, k) | qubit_bit(n, j);
    add_pauli_term(h, PauliString(n, bits, 0), 1.0);
    add_pauli_term(h, PauliString(n, bits, bits), 1.0);
    add_pauli_term(h, PauliString(n, 0, bits), spec.delta);
  }
  const auto field = disorder_field(spec);
  for (int k = 0; k < n; ++k) {
    const double hk = field[static_cast<std::size_t>(k)];
    if (hk != 0.0) add_pauli_term(h, PauliString(n, 0, qubit_bit(n, k)), hk);
  }
  if ((h - h.adjoint()).norm() > 1e-12) throw NumericalError("Hamiltonian is not Hermitian");
  return h;
}

/// Spectral decomposition of a Hermitian matrix, reusable across times.
class HermitianEvolution {
 public:
  static constexpr double kHermiticityTolerance = 1e-9;

  explicit HermitianEvolution(const CMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("Hamiltonian must be square");
    const auto d = static_cast<std::uint64_t>(h.rows());
    if (d == 0 || (d & (d - 1)) != 0) throw DimensionError("Hamiltonian size must be 2^n");
    if ((h - h.adjoint()).norm() > kHermiticityTolerance) {
      throw DimensionError("matrix is not Hermitian");
    }
    n_ = 0;
    while ((std::uint64_t{1} << n_) < d) ++n_;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  /// e^{-i H t}
  UnitaryMatrix at(double t) const {
    CVector phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
      phases[k] = std::polar(1.0, -eigenvalues_[k] * t);
    }
    CMatrix u = eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
    return UnitaryMatrix(n_, std::move(u));
  }

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  int n_ = 0;
  Eigen::VectorXd eigenvalues_;
  CMatrix eigenvectors_;
};

inline UnitaryMatrix evolve(const CMatrix& h, double t) { return HermitianEvolution(h).at(t); }

}  // namespace magic
