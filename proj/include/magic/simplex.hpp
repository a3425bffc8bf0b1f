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
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "magic/core.hpp"

namespace magic::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kIterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  long pivots = 0;
};

struct Options {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  long max_pivots = 1'000'000;
  // Consecutive degenerate pivots after which entering columns are chosen by
  // Bland's smallest-index rule instead of the steepest reduced cost.
  int degenerate_switch = 50;
};

namespace detail {

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Options& opt)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), opt_(opt),
        t_(static_cast<std::size_t>((m_ + 1) * width_), 0.0),
        basis_(static_cast<std::size_t>(m_)) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (Eigen::Index j = 0; j < n_; ++j) at(i, j) = sign * a(i, j);
      at(i, n_ + i) = 1.0;
      at(i, width_ - 1) = sign * b[i];
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  double& at(Eigen::Index r, Eigen::Index c) {
    return t_[static_cast<std::size_t>(r * width_ + c)];
  }
  double at(Eigen::Index r, Eigen::Index c) const {
    return t_[static_cast<std::size_t>(r * width_ + c)];
  }
  Eigen::Index rows() const { return m_; }
  Eigen::Index vars() const { return n_; }
  Eigen::Index rhs() const { return width_ - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  /// Sets the objective row to the reduced costs of `cost` (size n + m).
  void set_objective(const std::vector<double>& cost) {
    for (Eigen::Index j = 0; j < width_; ++j) {
      at(m_, j) = j < width_ - 1 ? cost[static_cast<std::size_t>(j)] : 0.0;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0) continue;
      for (Eigen::Index j = 0; j < width_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const double p = at(row, col);
    for (Eigen::Index j = 0; j < width_; ++j) at(row, j) /= p;
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      double* dst = &at(i, 0);
      const double* src = &at(row, 0);
      for (Eigen::Index j = 0; j < width_; ++j) dst[j] -= f * src[j];
      dst[col] = 0.0;
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /// Runs simplex iterations on columns [0, allowed). Returns kOptimal,
  /// kUnbounded or kIterationLimit.
  Status optimize(Eigen::Index allowed, long& pivots) {
    int degenerate_run = 0;
    const double tol = opt_.pivot_tolerance;
    while (pivots < opt_.max_pivots) {
      const bool bland = degenerate_run >= opt_.degenerate_switch;
      Eigen::Index enter = -1;
      double best = -tol;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        const double r = at(m_, j);
        if (r < best) {
          enter = j;
          if (bland) break;
          best = r;
        }
      }
      if (enter < 0) return Status::kOptimal;
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double v = at(i, enter);
        if (v <= tol) continue;
        const double q = at(i, rhs()) / v;
        if (q < ratio - 1e-12 ||
            (q <= ratio + 1e-12 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          ratio = std::min(ratio, q);
          leave = i;
        }
      }
      if (leave < 0) return Status::kUnbounded;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++pivots;
    }
    return Status::kIterationLimit;
  }

 private:
  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index width_;
  Options opt_;
  std::vector<double> t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// Two-phase dense tableau simplex for  min c.x  s.t.  A x = b, x >= 0.
/// Entering columns follow the steepest reduced cost and fall back to
/// Bland's rule during degenerate stalls, which rules out cycling.
inline Result solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                    const Options& opt = {}) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw DimensionError("LP dimensions are inconsistent");
  }
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  detail::Tableau tab(a, b, opt);
  Result res;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost(static_cast<std::size_t>(n + m), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) cost[static_cast<std::size_t>(n + i)] = 1.0;
  tab.set_objective(cost);
  Status st = tab.optimize(n + m, res.pivots);
  if (st == Status::kIterationLimit) {
    res.status = st;
    return res;
  }
  if (-tab.at(m, tab.rhs()) > opt.feasibility_tolerance) {
    res.status = Status::kInfeasible;
    return res;
  }
  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant and stay inert.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    double best = opt.pivot_tolerance;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.at(i, j)) > best) {
        best = std::abs(tab.at(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
      ++res.pivots;
    }
  }

  // Phase 2 over the original columns only.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) cost[static_cast<std::size_t>(j)] = c[j];
  tab.set_objective(cost);
  st = tab.optimize(n, res.pivots);
  if (st != Status::kOptimal) {
    res.status = st;
    return res;
  }
  res.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bcol = tab.basis()[static_cast<std::size_t>(i)];
    if (bcol < n) res.x[bcol] = std::max(0.0, tab.at(i, tab.rhs()));
  }
  res.objective = c.dot(res.x);
  res.status = Status::kOptimal;
  return res;
}

}  // namespace magic::lp
