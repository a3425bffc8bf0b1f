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

#include <cmath>

#include <Eigen/Dense>

#include "magic/core.hpp"
#include "magic/state.hpp"

namespace magic::bp {

struct Options {
  double rho = 1.0;
  double relaxation = 1.6;
  double tolerance = 1e-9;
  long max_iterations = 200'000;
};

struct Result {
  CVector coefficients;  // feasible: A c = b up to rounding
  double l1_norm = 0.0;
  CVector dual;          // y with |A^H y|_inf <= 1 after scaling
  double dual_bound = 0.0;  // Re(y^H b) <= min ||c||_1
  double residual = 0.0;    // max |A c - b|
  long iterations = 0;
  bool converged = false;
};

/// Complex basis pursuit  min ||c||_1  s.t.  A c = b  for full-row-rank A.
class Solver {
 public:
  explicit Solver(CMatrix a, Options opt = {}) : a_(std::move(a)), opt_(opt) {
    const CMatrix gram = a_ * a_.adjoint();
    gram_ = gram.ldlt();
    if (gram_.info() != Eigen::Success) throw NumericalError("basis pursuit: singular Gram matrix");
    pinv_ = a_.adjoint() * gram_.solve(CMatrix::Identity(a_.rows(), a_.rows()));
  }

  const CMatrix& matrix() const { return a_; }

  /// Scaled ADMM on  min ||z||_1 + I{A x = b}  s.t. x = z, with
  /// over-relaxation. Stops when primal ||x - z|| and dual rho ||z - z_prev||
  /// residuals both fall below the tolerance.
  Result solve(const CVector& b) const {
    if (b.size() != a_.rows()) throw DimensionError("basis pursuit: right-hand side size");
    const Eigen::Index n = a_.cols();
    const double rho = opt_.rho;
    const double kappa = 1.0 / rho;
    const CVector x_particular = pinv_ * b;
    CVector z = x_particular;
    CVector u = CVector::Zero(n);
    CVector x(n), z_prev(n), v(n);
    Result res;
    for (long it = 1; it <= opt_.max_iterations; ++it) {
      v = z - u;
      x = v - pinv_ * (a_ * v) + x_particular;
      const CVector xr = opt_.relaxation * x + (1.0 - opt_.relaxation) * z;
      z_prev = z;
      v = xr + u;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double mag = std::abs(v[j]);
        z[j] = mag > kappa ? v[j] * ((mag - kappa) / mag) : Complex(0.0);
      }
      u += xr - z;
      res.iterations = it;
      const double primal = (x - z).norm();
      const double dual = rho * (z - z_prev).norm();
      if (primal < opt_.tolerance && dual < opt_.tolerance) {
        res.converged = true;
        break;
      }
    }
    // Snap the sparse iterate back onto the affine constraint.
    res.coefficients = z - pinv_ * (a_ * z - b);
    res.l1_norm = res.coefficients.cwiseAbs().sum();
    res.residual = (a_ * res.coefficients - b).cwiseAbs().maxCoeff();
    certify(b, rho * u, res);
    return res;
  }

  /// Dual witness from a multiplier estimate lambda in d||c||_1: project onto
  /// range(A^H), rescale to |A^H y|_inf <= 1, and report Re(y^H b).
  void certify(const CVector& b, const CVector& lambda, Result& res) const {
    CVector y = gram_.solve(a_ * lambda);
    const double worst = (a_.adjoint() * y).cwiseAbs().maxCoeff();
    if (worst > 1.0) y /= worst;
    res.dual = y;
    res.dual_bound = y.dot(b).real();
  }

 private:
  CMatrix a_;
  Options opt_;
  Eigen::LDLT<CMatrix> gram_;
  CMatrix pinv_;
};

}  // namespace magic::bp
