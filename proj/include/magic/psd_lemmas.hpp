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
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/random.hpp"

namespace magic {

// Real symmetric operators built from fourfold Pauli tensor powers:
//   B  = sum_{P in {I,X,Y,Z}} P^{(x)4}
//   B- = sum_P (-1)^{[P in {X,Y}]} P^{(x)4}
//   A  = sum_{P in {I,Z}} P^{(x)4}
// and the 4096-dimensional combination 8 A^{(x)3} - B^{(x)3} (after
// regrouping tensor factors), whose positivity bounds the CCZ R2 ratio.

struct PsdCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct PsdReport {
  std::vector<PsdCheck> checks;
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

namespace detail {

// P^{(x)4} for a single-qubit Pauli given by its (x, z) bits.
inline Eigen::MatrixXd fourfold_power(bool x, bool z) {
  const std::uint64_t xm = x ? 0xF : 0;
  const std::uint64_t zm = z ? 0xF : 0;
  return pauli_matrix(PauliString(4, xm, zm)).real();
}

inline Eigen::MatrixXd signed_fourfold_sum(double xy_sign) {
  Eigen::MatrixXd m = fourfold_power(false, false) + fourfold_power(false, true);
  m += xy_sign * (fourfold_power(true, false) + fourfold_power(true, true));
  return m;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace detail

inline Eigen::MatrixXd lemma_b() { return detail::signed_fourfold_sum(1.0); }
inline Eigen::MatrixXd lemma_b_minus() { return detail::signed_fourfold_sum(-1.0); }
inline Eigen::MatrixXd lemma_a() {
  return detail::fourfold_power(false, false) + detail::fourfold_power(false, true);
}

/// Rank-4 form of (1/2) B_{+-} as a sum of outer products of
/// |v> +- |v xor 1111> for v in {0000, 0011, 0101, 0110}.
inline Eigen::MatrixXd lemma_outer_product_form(double sign) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 16);
  for (int v : {0b0000, 0b0011, 0b0101, 0b0110}) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(16);
    w[v] = 1.0;
    w[v ^ 0xF] = sign;
    m += w * w.transpose();
  }
  return m;
}

/// Applies M = 8 sum_{P,Q,R in {I,Z}} (P Q R)^{(x)4} - sum_{P' in P_3} P'^{(x)4}
/// on 12 qubits, term by term from the definition.
inline Eigen::VectorXd lemma_ccz_operator_apply(const Eigen::VectorXd& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  auto replicate = [](std::uint64_t m3) { return m3 | m3 << 3 | m3 << 6 | m3 << 9; };
  for (std::uint64_t x3 = 0; x3 < 8; ++x3) {
    for (std::uint64_t z3 = 0; z3 < 8; ++z3) {
      const double coeff = (x3 == 0 ? 8.0 : 0.0) - 1.0;
      const std::uint64_t xm = replicate(x3);
      const std::uint64_t zm = replicate(z3);
      // Phase i^{4|x&z|} = 1: every fourfold power is a real signed permutation.
      for (std::uint64_t b = 0; b < 4096; ++b) {
        const double sign = (popcount(zm & b) & 1) ? -1.0 : 1.0;
        out[static_cast<Eigen::Index>(b ^ xm)] += coeff * sign * v[static_cast<Eigen::Index>(b)];
      }
    }
  }
  return out;
}

/// Smallest eigenvalue of the 4096 x 4096 CCZ operator by Lanczos with full
/// reorthogonalization. The operator has few distinct eigenvalues, so the
/// Krylov space closes (beta ~ 0) and the Ritz values are exact.
inline double lemma_ccz_direct_min_eigenvalue(std::uint64_t seed = 7, int max_steps = 200) {
  const Eigen::Index dim = 4096;
  Rng rng(seed);
  Eigen::VectorXd q(dim);
  for (auto& x : q) x = rng.normal();
  q.normalize();
  std::vector<Eigen::VectorXd> basis{q};
  std::vector<double> alpha;
  std::vector<double> beta;
  for (int k = 0; k < max_steps; ++k) {
    Eigen::VectorXd w = lemma_ccz_operator_apply(basis.back());
    alpha.push_back(basis.back().dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double bnorm = w.norm();
    if (bnorm < 1e-9) break;
    beta.push_back(bnorm);
    basis.push_back(w / bnorm);
  }
  const auto size = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < size) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
  }
  return detail::min_eigenvalue(t);
}

/// min over joint eigenpairs (a_i, b_i) of commuting A, B of
/// 8 a_i a_j a_k - b_i b_j b_k: the smallest eigenvalue of 8 A^{(x)3} - B^{(x)3}.
inline double lemma_ccz_structural_min_eigenvalue() {
  const Eigen::MatrixXd a = lemma_a();
  const Eigen::MatrixXd b = lemma_b();
  // A is diagonal; a generic combination diagonalizes both at once.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b + 0.377 * a);
  const Eigen::MatrixXd v = solver.eigenvectors();
  const Eigen::VectorXd av = (v.transpose() * a * v).diagonal();
  const Eigen::VectorXd bv = (v.transpose() * b * v).diagonal();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < 16; ++i) {
    for (Eigen::Index j = 0; j < 16; ++j) {
      for (Eigen::Index k = 0; k < 16; ++k) {
        best = std::min(best, 8.0 * av[i] * av[j] * av[k] - bv[i] * bv[j] * bv[k]);
      }
    }
  }
  return best;
}

/// Numerical verification of the positivity lemmas behind the T and CCZ
/// amortized values. `direct` adds the 4096-dimensional Lanczos check.
inline PsdReport verify_psd_lemmas(bool direct = false) {
  constexpr double kEig = -1e-10;
  PsdReport rep;
  auto add = [&](std::string name, double value, double threshold, bool ok) {
    rep.checks.push_back({std::move(name), value, threshold, ok});
  };
  const Eigen::MatrixXd b = lemma_b();
  const Eigen::MatrixXd bm = lemma_b_minus();
  const Eigen::MatrixXd a = lemma_a();

  const double min_b = detail::min_eigenvalue(b);
  add("min_eig(B)", min_b, kEig, min_b >= kEig);
  const double min_bm = detail::min_eigenvalue(bm);
  add("min_eig(B-)", min_bm, kEig, min_bm >= kEig);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b, Eigen::EigenvaluesOnly);
  double worst_nonzero = 0.0;
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 16; ++i) {
    const double ev = eb.eigenvalues()[i];
    if (std::abs(ev) > 1e-9) {
      ++nonzero;
      worst_nonzero = std::max(worst_nonzero, std::abs(ev - 4.0));
    }
  }
  add("nonzero_eigs(B)==4", worst_nonzero, 1e-10, nonzero == 4 && worst_nonzero <= 1e-10);

  const double id_plus = (0.5 * b - lemma_outer_product_form(1.0)).cwiseAbs().maxCoeff();
  add("outer_product_identity(+)", id_plus, 1e-14, id_plus < 1e-14);
  const double id_minus = (0.5 * bm - lemma_outer_product_form(-1.0)).cwiseAbs().maxCoeff();
  add("outer_product_identity(-)", id_minus, 1e-14, id_minus < 1e-14);

  const double comm = (a * b - b * a).norm();
  add("||AB-BA||", comm, 1e-12, comm < 1e-12);
  const double min_2ab = detail::min_eigenvalue(2.0 * a - b);
  add("min_eig(2A-B)", min_2ab, kEig, min_2ab >= kEig);

  if (direct) {
    const double lanczos = lemma_ccz_direct_min_eigenvalue();
    add("min_eig(8A^3-B^3) direct", lanczos, kEig, lanczos >= kEig);
    const double structural = lemma_ccz_structural_min_eigenvalue();
    const double diff = std::abs(lanczos - structural);
    add("direct==structural", diff, 1e-8, diff <= 1e-8);
  }
  return rep;
}

}  // namespace magic
